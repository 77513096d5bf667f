#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace cxcur {

/// Evaluates fn(0) .. fn(n - 1) on a small thread pool and returns the
/// results in index order. The first exception (by index) is rethrown.
template <typename Fn>
auto run_trials(std::size_t n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t extra = std::min(hw, n) > 0 ? std::min(hw, n) - 1 : 0;
    {
        std::vector<std::jthread> pool;
        pool.reserve(extra);
        for (std::size_t t = 0; t < extra; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace cxcur
