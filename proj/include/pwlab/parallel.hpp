#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace pwlab {

namespace detail {
inline std::atomic<unsigned>& threadSetting() {
    static std::atomic<unsigned> value{[] {
        if (const char* env = std::getenv("PWLAB_THREADS")) {
            try {
                long v = std::stol(env);
                if (v >= 1) return static_cast<unsigned>(v);
            } catch (...) {
            }
        }
        return 1u;
    }()};
    return value;
}
}  // namespace detail

/// Worker count used by parallelFor; defaults to $PWLAB_THREADS or 1.
inline unsigned threadCount() { return detail::threadSetting().load(); }
inline void setThreadCount(unsigned k) { detail::threadSetting().store(std::max(1u, k)); }

/// Runs body(i) for i in [0, n) on contiguous chunks. Each index writes its own
/// slot, so results do not depend on the worker count. The exception of the
/// lowest failing chunk is rethrown.
template <class Body>
void parallelFor(std::size_t n, Body&& body) {
    unsigned workers = std::min<std::size_t>(threadCount(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace pwlab
