#include "sqbsm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "sqbsm/ancilla.hpp"

namespace sqbsm {

namespace {

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::squeezed: return "squeezed";
    case Scheme::ancilla: return "ancilla";
    case Scheme::combined: return "combined";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "squeezed") return Scheme::squeezed;
  if (name == "ancilla") return Scheme::ancilla;
  if (name == "combined") return Scheme::combined;
  return std::nullopt;
}

const SweepRow& SweepResult::peak() const {
  if (rows.empty()) throw std::logic_error("empty sweep has no peak");
  return *std::max_element(rows.begin(), rows.end(),
                           [](const SweepRow& a, const SweepRow& b) { return a.p_success < b.p_success; });
}

std::vector<double> make_grid(double r_min, double r_max, double r_step) {
  if (!std::isfinite(r_min) || !std::isfinite(r_max) || !std::isfinite(r_step)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (r_min > r_max) throw std::invalid_argument("r_min must not exceed r_max");
  if (!(r_step > 0.0)) throw std::invalid_argument("r_step must be positive");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double r = r_min + static_cast<double>(i) * r_step;
    if (r > r_max + 1e-9 * r_step) break;
    grid.push_back(round12(r));
  }
  return grid;
}

std::vector<double> default_grid() { return make_grid(0.02, 1.0, 0.02); }

unsigned default_thread_count() {
  if (const char* env = std::getenv("SQBSM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult sweep(int d, std::span<const double> grid, Scheme scheme, const SweepOptions& options) {
  if (grid.empty()) throw std::domain_error("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::domain_error("sweep grid must be strictly ascending");
  }
  options.classifier.validate();

  SweepResult result;
  result.metadata = {d, options.n_max, options.phi, options.classifier.epsilon, scheme, grid.size()};
  result.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) result.rows[i] = {grid[i], zeta_db(grid[i]), 0.0};

  if (scheme == Scheme::ancilla) {
    const double ps = run_ancilla_bsm(d, options.n_max, options.classifier, options.prune_threshold).success_probability;
    for (auto& row : result.rows) row.p_success = ps;
    return result;
  }

  const PreparedInputs prepared = scheme == Scheme::squeezed
                                      ? prepare_squeezed_inputs(d, options.n_max, options.prune_threshold)
                                      : prepare_ancilla_inputs(d, options.n_max, options.prune_threshold);
  const std::size_t modes = prepared.states.front().modes();
  SqueezeMatrixCache cache;

  // rows are independent; each worker writes only its own slots
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < grid.size(); i = next++) {
        const auto cfg = SqueezeConfig::uniform(modes, grid[i], options.phi);
        result.rows[i].p_success = evaluate(prepared, cfg, options.classifier, &cache).success_probability;
      }
    } catch (...) {
      next = grid.size();
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  const unsigned threads =
      std::min<unsigned>(options.threads ? options.threads : default_thread_count(), static_cast<unsigned>(grid.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return result;
}

}  // namespace sqbsm
