#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace treeflow {

/// Runs the jobs on up to width threads (0 = hardware concurrency). Results
/// land at the job's own index, so output order is schedule-independent.
template <class T>
std::vector<T> run_jobs(std::vector<std::function<T()>> jobs, unsigned width) {
    if (width == 0) width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<T> results(jobs.size());
    if (width == 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            results[i] = jobs[i]();
        }
    };
    unsigned n = std::min<std::size_t>(width, jobs.size());
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace treeflow
