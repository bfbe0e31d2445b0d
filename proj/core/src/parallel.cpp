#include "rootbias/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rootbias {

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::uint64_t first, std::uint64_t last, unsigned jobs,
                  const std::function<void(std::uint64_t)>& body) {
    if (last < first) return;
    if (jobs == 0) jobs = default_jobs();
    const std::uint64_t count = last - first + 1;
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));

    std::atomic<std::uint64_t> next{first};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i > last || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace rootbias
