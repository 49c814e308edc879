#include "spinchaos/parallel.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace spinchaos {

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (n <= 0) return;
    workers = std::max(1, std::min(workers, n));

    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    int first_error_index = std::numeric_limits<int>::max();

    auto run = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

int default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace spinchaos
