#include "blendercert/certificate.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace bcert {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Runs fn(k) for k in [0, count) on `jobs` workers; block order in the output
// is fixed by index, so the result does not depend on scheduling.  The first
// exception (by block index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
  }
  jobs = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = count;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        fn(k);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (k < first_error_index) {
          first_error_index = k;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

BlockResult verify_block(const Interval& mu, const Interval& beta,
                         const Interval& xi, const ConstructionData& data) {
  const auto start = std::chrono::steady_clock::now();
  const HenonParams params(mu, beta, xi);

  BlockResult r;
  r.xi = xi;
  r.blender = verify_blender(params, data);
  const std::vector<Chain> chains = propagate_hsets(params, data);
  const LSetFamily family = build_L_sets(params, data, chains);
  r.hyperbolicity = verify_hyperbolicity(params, data, family);
  r.transitivity = record_transitivity(r.hyperbolicity);
  r.containment_checked = static_cast<int>(family.containment.size());
  r.pass = r.blender.pass && r.hyperbolicity.pass;
  r.wall_ms = elapsed_ms(start);
  return r;
}

Certificate sweep_xi(const Interval& mu, const Interval& beta,
                     const ConstructionData& data, const XiSweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Certificate cert;
  cert.mu = mu;
  cert.beta = beta;
  cert.sweep = cfg;
  cert.data = data;

  const std::vector<Interval> blocks = xi_blocks(cfg);
  cert.blocks.resize(blocks.size());
  parallel_for(blocks.size(), cfg.jobs, [&](std::size_t k) {
    cert.blocks[k] = verify_block(mu, beta, blocks[k], data);
  });

  cert.pass = !cert.blocks.empty();
  for (const BlockResult& b : cert.blocks) cert.pass = cert.pass && b.pass;
  cert.wall_ms = elapsed_ms(start);
  return cert;
}

HyperbolicityReport sweep_hyperbolicity(const Interval& mu, const Interval& beta,
                                        const ConstructionData& data,
                                        const XiSweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  HyperbolicityReport report;
  report.mu = mu;
  report.beta = beta;
  report.sweep = cfg;
  report.data = data;

  const std::vector<Interval> blocks = xi_blocks(cfg);
  report.blocks.resize(blocks.size());
  parallel_for(blocks.size(), cfg.jobs, [&](std::size_t k) {
    const auto block_start = std::chrono::steady_clock::now();
    const HenonParams params(mu, beta, blocks[k]);
    HyperbolicityBlockResult r;
    r.xi = blocks[k];
    r.zm = solve_zM(params, data);
    const std::vector<Chain> chains = propagate_hsets(params, data);
    const LSetFamily family = build_L_sets(params, data, chains);
    r.verdicts = verify_hyperbolicity(params, data, family);
    r.transitivity = record_transitivity(r.verdicts);
    r.containment_checked = static_cast<int>(family.containment.size());
    r.pass = r.verdicts.pass;
    r.wall_ms = elapsed_ms(block_start);
    report.blocks[k] = std::move(r);
  });

  report.pass = !report.blocks.empty();
  for (const auto& b : report.blocks) report.pass = report.pass && b.pass;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace bcert
