#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace pwlab::fft {

enum class Direction { Forward, Backward };

namespace detail {

inline std::mutex& plannerMutex() {
    static std::mutex m;
    return m;
}

// One aligned buffer per plan so every execution sees the planned alignment;
// results are therefore independent of the caller's storage and thread.
struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* buffer = nullptr;
    std::size_t size = 0;

    Plan(std::size_t n0, std::size_t n1, Direction dir) {
        size = n0 * (n1 ? n1 : 1);
        std::lock_guard<std::mutex> lock(plannerMutex());
        buffer = fftw_alloc_complex(size);
        int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        if (n1 == 0)
            plan = fftw_plan_dft_1d(static_cast<int>(n0), buffer, buffer, sign, FFTW_ESTIMATE);
        else
            plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), buffer, buffer, sign, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard<std::mutex> lock(plannerMutex());
        fftw_destroy_plan(plan);
        fftw_free(buffer);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
};

inline Plan& planFor(std::size_t n0, std::size_t n1, Direction dir) {
    thread_local std::map<std::tuple<std::size_t, std::size_t, int>, std::unique_ptr<Plan>> cache;
    auto key = std::make_tuple(n0, n1, static_cast<int>(dir));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Plan>(n0, n1, dir)).first;
    return *it->second;
}

inline void run(std::complex<double>* data, std::size_t n0, std::size_t n1, Direction dir) {
    Plan& p = planFor(n0, n1, dir);
    std::memcpy(p.buffer, data, p.size * sizeof(fftw_complex));
    fftw_execute(p.plan);
    std::memcpy(static_cast<void*>(data), p.buffer, p.size * sizeof(fftw_complex));
}

}  // namespace detail

/// In-place unnormalized DFT: Forward uses e^{-2 pi i jk/n}, Backward e^{+2 pi i jk/n}.
inline void transform1d(std::complex<double>* data, std::size_t n, Direction dir) { detail::run(data, n, 0, dir); }

/// In-place unnormalized 2-D DFT on a row-major n0 x n1 array.
inline void transform2d(std::complex<double>* data, std::size_t n0, std::size_t n1, Direction dir) {
    detail::run(data, n0, n1, dir);
}

}  // namespace pwlab::fft
