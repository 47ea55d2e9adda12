#include "sqbsm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqbsm {

void ClassifierConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::domain_error("uniqueness threshold must be positive");
}

double ClickDistribution::probability(const ClickPattern& pattern) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), pattern,
                             [](const Entry& e, const ClickPattern& p) { return e.pattern < p; });
  if (it != entries.end() && it->pattern == pattern) return it->probability();
  return 0.0;
}

double ClickDistribution::total_probability() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.probability();
  return s;
}

ClickDistribution click_distribution(const FockVector& state, const BellIndex& input) {
  ClickDistribution dist;
  dist.input = input;
  dist.entries.reserve(state.support_size());
  for (const auto& e : state.entries()) dist.entries.push_back({e.occupation, e.amplitude});
  dist.leaked_mass = 1.0 - dist.total_probability();
  return dist;
}

Classification::Classification(int d, ClassifierConfig cfg) : d_(d), cfg_(cfg) { cfg_.validate(); }

std::optional<BellIndex> Classification::unique_to(const ClickPattern& pattern) const {
  auto it = slots_.find(pattern);
  if (it == slots_.end() || it->second.owner == kAmbiguous) return std::nullopt;
  return BellIndex::from_ordinal(d_, it->second.owner);
}

bool Classification::is_ambiguous(const ClickPattern& pattern) const {
  auto it = slots_.find(pattern);
  return it != slots_.end() && it->second.owner == kAmbiguous;
}

double Classification::unique_mass() const {
  // Per-owner partial sums in pattern order, then added in ordinal order:
  // the same association success_probability() uses.
  auto unique = unique_patterns();
  std::stable_sort(unique.begin(), unique.end(),
                   [](const auto& a, const auto& b) { return a.owner.ordinal() < b.owner.ordinal(); });
  double total = 0.0;
  std::size_t i = 0;
  while (i < unique.size()) {
    const int owner = unique[i].owner.ordinal();
    double partial = 0.0;
    for (; i < unique.size() && unique[i].owner.ordinal() == owner; ++i) partial += unique[i].probability;
    total += partial;
  }
  return total;
}

std::vector<Classification::UniquePattern> Classification::unique_patterns() const {
  std::vector<UniquePattern> out;
  for (const auto& [pattern, slot] : slots_) {
    if (slot.owner != kAmbiguous) {
      out.push_back({pattern, BellIndex::from_ordinal(d_, slot.owner), slot.amplitude, slot.probability});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  return out;
}

Classification classify_patterns(std::span<const ClickDistribution> dists, const ClassifierConfig& cfg) {
  if (dists.empty()) throw std::domain_error("no distributions to classify");
  Classification c(dists.front().input.d, cfg);
  for (const auto& dist : dists) {
    for (const auto& e : dist.entries) c.observe(dist.input.ordinal(), e.pattern, e.amplitude);
  }
  return c;
}

double success_probability(std::span<const ClickDistribution> dists, const Classification& classification) {
  const int d = classification.dimension();
  std::vector<const ClickDistribution*> ordered;
  for (const auto& dist : dists) ordered.push_back(&dist);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->input.ordinal() < b->input.ordinal(); });
  double total = 0.0;
  for (const auto* dist : ordered) {
    double partial = 0.0;
    for (const auto& e : dist->entries) {
      auto owner = classification.unique_to(e.pattern);
      if (owner && *owner == dist->input) partial += e.probability();
    }
    total += partial;
  }
  return total / static_cast<double>(d * d);
}

PreparedInputs prepare_squeezed_inputs(int d, int n_max, double prune_threshold) {
  if (d < 2) throw std::domain_error("squeezed scheme needs d >= 2");
  if (n_max < 1) throw std::domain_error("resolution must be >= 1");
  PreparedInputs prepared{d, n_max, {}};
  // Two photons never overflow a cutoff of 2; below that the beam-splitter
  // output is truncated and the loss shows up as leaked mass.
  const int work_cutoff = std::max(n_max, 2);
  for (const auto& bell : bell_basis(d, work_cutoff)) {
    FockVector mixed = prune(apply_pairwise_beam_splitters(bell, d), prune_threshold).state;
    if (work_cutoff != n_max) {
      std::vector<FockVector::Entry> kept;
      for (const auto& e : mixed.entries()) {
        bool fits = true;
        for (std::size_t i = 0; i < mixed.modes(); ++i) fits = fits && e.occupation[i] <= n_max;
        if (fits) kept.push_back(e);
      }
      mixed = FockVector::from_entries(mixed.modes(), n_max, std::move(kept));
    }
    prepared.states.push_back(std::move(mixed));
  }
  return prepared;
}

Evaluation evaluate(const PreparedInputs& inputs, const SqueezeConfig& cfg, const ClassifierConfig& classifier,
                    SqueezeMatrixCache* cache) {
  if (inputs.states.empty()) throw std::domain_error("no prepared inputs");
  const std::size_t modes = inputs.states.front().modes();
  if (cfg.size() != modes) {
    throw std::domain_error("squeeze config length " + std::to_string(cfg.size()) + " does not match mode count " +
                            std::to_string(modes));
  }
  SqueezeMatrixCache local;
  SqueezeMatrixCache& c = cache ? *cache : local;
  std::vector<std::shared_ptr<const SqueezeMatrix>> owned;
  std::vector<const SqueezeMatrix*> matrices;
  for (const auto& p : cfg.modes()) {
    owned.push_back(c.get(p.r, p.phi, inputs.n_max));
    matrices.push_back(owned.back().get());
  }

  Evaluation ev{Classification(inputs.d, classifier), 0.0, {}};
  ev.retained_mass.reserve(inputs.states.size());
  for (std::size_t ord = 0; ord < inputs.states.size(); ++ord) {
    double retained = 0.0;
    visit_squeezed(inputs.states[ord], matrices, [&](const ClickPattern& p, Amplitude a) {
      retained += std::norm(a);
      ev.classification.observe(static_cast<int>(ord), p, a);
    });
    ev.retained_mass.push_back(retained);
  }
  ev.success_probability = ev.classification.unique_mass() / static_cast<double>(inputs.d * inputs.d);
  return ev;
}

BsmResult run_squeezed_bsm(int d, const SqueezeConfig& cfg, int n_max, const ClassifierConfig& classifier,
                           double prune_threshold) {
  if (cfg.size() != static_cast<std::size_t>(2 * d)) {
    throw std::domain_error("squeezed scheme needs " + std::to_string(2 * d) + " squeezers");
  }
  const PreparedInputs prepared = prepare_squeezed_inputs(d, n_max, prune_threshold);
  std::vector<ClickDistribution> dists;
  dists.reserve(prepared.states.size());
  for (std::size_t ord = 0; ord < prepared.states.size(); ++ord) {
    dists.push_back(click_distribution(apply_squeezers(prepared.states[ord], cfg),
                                       BellIndex::from_ordinal(d, static_cast<int>(ord))));
  }
  Classification classification = classify_patterns(dists, classifier);
  const double ps = success_probability(dists, classification);
  return {std::move(dists), std::move(classification), ps};
}

std::vector<RankedPattern> rank_unique_patterns(const Classification& classification, std::size_t limit) {
  if (limit < 1) throw std::domain_error("pattern limit must be >= 1");
  std::vector<RankedPattern> ranked;
  for (const auto& u : classification.unique_patterns()) ranked.push_back({u.amplitude, u.pattern, u.owner});
  auto key = [](const RankedPattern& r) { return std::llround(std::abs(r.amplitude) * 1e12); };
  std::stable_sort(ranked.begin(), ranked.end(), [&](const RankedPattern& a, const RankedPattern& b) {
    const auto ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    return a.pattern < b.pattern;
  });
  if (ranked.size() > limit) ranked.resize(limit);
  return ranked;
}

std::vector<RankedPattern> top_unique_patterns(int d, const SqueezeConfig& cfg, int n_max, std::size_t limit,
                                               const ClassifierConfig& classifier) {
  const Evaluation ev = evaluate(prepare_squeezed_inputs(d, n_max), cfg, classifier);
  return rank_unique_patterns(ev.classification, limit);
}

}  // namespace sqbsm
