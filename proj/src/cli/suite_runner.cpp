#include "hforge/cli/suite_runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "hforge/errors.hpp"

namespace hforge::cli {

std::vector<TimedReport> run_suite(const std::vector<PreparedInstance>& instances, unsigned jobs) {
  std::vector<TimedReport> out(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const PreparedInstance& inst = instances[i];
      const auto t0 = std::chrono::steady_clock::now();
      TimedReport tr;
      tr.expect = inst.expect;
      try {
        tr.report = inst.run();
      } catch (const Error& e) {
        tr.report = inadmissible_report(inst.inequality_id, inst.spec.dump(), {std::string("error: ") + e.what()});
      }
      const auto t1 = std::chrono::steady_clock::now();
      tr.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      out[i] = std::move(tr);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, instances.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  return out;
}

}  // namespace hforge::cli
