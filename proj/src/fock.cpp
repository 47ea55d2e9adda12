#include "sqbsm/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqbsm {

namespace {

void check_modes(std::size_t modes) {
  if (modes > kMaxModes) {
    throw std::domain_error("mode count " + std::to_string(modes) + " exceeds the supported maximum of " +
                            std::to_string(kMaxModes));
  }
}

void check_cutoff(int cutoff) {
  if (cutoff < 0 || cutoff > kMaxOccupation) {
    throw std::domain_error("cutoff " + std::to_string(cutoff) + " outside [0, " + std::to_string(kMaxOccupation) +
                            "]");
  }
}

}  // namespace

OccupationTuple::OccupationTuple(std::size_t modes) {
  check_modes(modes);
  size_ = static_cast<std::uint8_t>(modes);
}

OccupationTuple::OccupationTuple(std::initializer_list<int> counts) : OccupationTuple(counts.size()) {
  std::size_t i = 0;
  for (int c : counts) set(i++, c);
}

OccupationTuple OccupationTuple::from_counts(std::span<const int> counts) {
  OccupationTuple t(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) t.set(i, counts[i]);
  return t;
}

void OccupationTuple::set(std::size_t mode, int count) {
  if (mode >= size_) throw std::out_of_range("mode index out of range");
  if (count < 0 || count > kMaxOccupation) {
    throw std::domain_error("occupation " + std::to_string(count) + " not representable");
  }
  auto& w = words_[mode >> 4];
  w &= ~(std::uint64_t{0xF} << shift(mode));
  w |= static_cast<std::uint64_t>(count) << shift(mode);
}

int OccupationTuple::total() const {
  int n = 0;
  for (std::size_t i = 0; i < size_; ++i) n += (*this)[i];
  return n;
}

std::vector<int> OccupationTuple::counts() const {
  std::vector<int> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

OccupationTuple OccupationTuple::concat(const OccupationTuple& tail) const {
  OccupationTuple out(size_ + tail.size_);
  for (std::size_t i = 0; i < size_; ++i) out.set(i, (*this)[i]);
  for (std::size_t i = 0; i < tail.size_; ++i) out.set(size_ + i, tail[i]);
  return out;
}

OccupationTuple OccupationTuple::head(std::size_t modes) const {
  if (modes > size_) throw std::out_of_range("head longer than tuple");
  OccupationTuple out(modes);
  for (std::size_t i = 0; i < modes; ++i) out.set(i, (*this)[i]);
  return out;
}

std::string OccupationTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) s += ',';
    s += std::to_string((*this)[i]);
  }
  return s + ")";
}

std::size_t OccupationTuple::hash() const {
  // splitmix64 finalizer over both words
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return static_cast<std::size_t>(mix(words_[0] ^ mix(words_[1] + size_)));
}

FockVector::FockVector(std::size_t modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  check_modes(modes);
  check_cutoff(cutoff);
}

FockVector FockVector::from_entries(std::size_t modes, int cutoff, std::vector<Entry> entries) {
  FockVector v(modes, cutoff);
  for (const auto& e : entries) {
    if (e.occupation.size() != modes) throw std::domain_error("occupation tuple length does not match mode count");
    for (std::size_t i = 0; i < modes; ++i) {
      if (e.occupation[i] > cutoff) {
        throw std::domain_error("occupation " + e.occupation.to_string() + " exceeds cutoff " +
                                std::to_string(cutoff));
      }
    }
    if (!std::isfinite(e.amplitude.real()) || !std::isfinite(e.amplitude.imag())) {
      throw std::domain_error("non-finite amplitude");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.occupation < b.occupation; });
  // merge duplicates in place
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (out > 0 && entries[out - 1].occupation == entries[i].occupation) {
      entries[out - 1].amplitude += entries[i].amplitude;
    } else {
      entries[out++] = entries[i];
    }
  }
  entries.resize(out);
  v.entries_ = std::move(entries);
  return v;
}

Amplitude FockVector::amplitude(const OccupationTuple& occupation) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), occupation,
                             [](const Entry& e, const OccupationTuple& o) { return e.occupation < o; });
  if (it != entries_.end() && it->occupation == occupation) return it->amplitude;
  return {};
}

double FockVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e.amplitude);
  return s;
}

FockVector FockAccumulator::finish() && {
  std::vector<FockVector::Entry> entries;
  entries.reserve(terms_.size());
  for (const auto& [occ, amp] : terms_) {
    if (amp != Amplitude{}) entries.push_back({occ, amp});
  }
  terms_.clear();
  return FockVector::from_entries(modes_, cutoff_, std::move(entries));
}

FockVector basis_state(const OccupationTuple& pattern, int cutoff) {
  return FockVector::from_entries(pattern.size(), cutoff, {{pattern, Amplitude{1.0, 0.0}}});
}

Amplitude inner_product(const FockVector& a, const FockVector& b) {
  if (a.modes() != b.modes()) throw std::domain_error("inner product of states with different mode counts");
  if (a.cutoff() != b.cutoff()) throw std::domain_error("inner product of states with different cutoffs");
  // both sides sorted: linear merge
  Amplitude sum{};
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].occupation < eb[j].occupation) {
      ++i;
    } else if (eb[j].occupation < ea[i].occupation) {
      ++j;
    } else {
      sum += std::conj(ea[i].amplitude) * eb[j].amplitude;
      ++i;
      ++j;
    }
  }
  return sum;
}

FockVector tensor_product(const FockVector& a, const FockVector& b) {
  if (a.cutoff() != b.cutoff()) throw std::domain_error("tensor product of states with different cutoffs");
  std::vector<FockVector::Entry> entries;
  entries.reserve(a.support_size() * b.support_size());
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      entries.push_back({x.occupation.concat(y.occupation), x.amplitude * y.amplitude});
    }
  }
  return FockVector::from_entries(a.modes() + b.modes(), a.cutoff(), std::move(entries));
}

PruneResult prune(const FockVector& a, double threshold) {
  if (!(threshold >= 0.0)) throw std::domain_error("prune threshold must be non-negative");
  std::vector<FockVector::Entry> kept;
  kept.reserve(a.support_size());
  double removed = 0.0;
  for (const auto& e : a.entries()) {
    if (std::abs(e.amplitude) < threshold) {
      removed += std::norm(e.amplitude);
    } else {
      kept.push_back(e);
    }
  }
  return {FockVector::from_entries(a.modes(), a.cutoff(), std::move(kept)), removed};
}

}  // namespace sqbsm
