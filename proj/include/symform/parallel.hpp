#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "symform/errors.hpp"

namespace symform {

// SYMFORM_THREADS caps the worker pool; defaults to the hardware count.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SYMFORM_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v < 1) throw std::invalid_argument("nonpositive");
            return std::min(v, 256);
        } catch (const std::exception&) {
            throw InvalidInputError("SYMFORM_THREADS must be a positive integer");
        }
    }
    return hw;
}

// Runs fn(trial_index) for every index, possibly across threads. Outcomes
// land in a preallocated slot per trial, so the caller's aggregation order
// (and therefore every report) is independent of the thread count.
template <typename Outcome, typename Fn>
std::vector<Outcome> run_trials(long trials, Fn&& fn) {
    std::vector<Outcome> out(static_cast<std::size_t>(trials));
    const int workers = std::min<long>(thread_budget(), std::max<long>(trials, 1));
    if (workers <= 1 || trials < 32) {
        for (long i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<long> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                const long chunk = 16;
                while (true) {
                    const long lo = next.fetch_add(chunk);
                    if (lo >= trials) break;
                    const long hi = std::min(lo + chunk, trials);
                    for (long i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace symform
