#include "linkexpr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace linkexpr {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t worker_count() {
    if (auto n = g_override.load(); n > 0) return n;
    if (const char* env = std::getenv("LINKEXPR_THREADS")) {
        try {
            auto n = std::stoul(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_worker_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::size_t error_index = count;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= count) break;
                    try {
                        body(i);
                    } catch (...) {
                        // Keep the lowest failing index so the reported error does not depend on scheduling.
                        std::lock_guard lock(error_mutex);
                        if (i < error_index) {
                            error_index = i;
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace linkexpr
