#ifndef IPP_SRC_PARALLEL_HPP_
#define IPP_SRC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ipp::detail {

inline unsigned worker_count() { return std::max(2u, std::thread::hardware_concurrency()); }

// Runs fn(i) for i in [0, count) on contiguous chunks. Returns after every call has finished;
// the first exception thrown by any call is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, bool parallel, Fn&& fn) {
    if (!parallel || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    const std::size_t chunk = (count + workers - 1) / workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace ipp::detail

#endif  // IPP_SRC_PARALLEL_HPP_
