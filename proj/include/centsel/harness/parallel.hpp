#ifndef CENTSEL_HARNESS_PARALLEL_HPP
#define CENTSEL_HARNESS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace centsel::harness {

/**
 * Evaluates fn(0..count-1) on a pool of `workers` threads.
 *
 * Results land at their job index, so the returned vector is independent of
 * scheduling. The first exception (by job index) is rethrown after all
 * workers have joined.
 */
template <class Fn>
auto parallel_map(std::size_t count, std::size_t workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));

    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_PARALLEL_HPP
