// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace stochwave {

//! Sample mean with standard error sqrt(s^2 / n); the error is 0 for n < 2.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

//! Left-to-right reduction, so the result depends only on the value order.
inline MeanEstimate estimate_mean(std::span<const double> values)
{
    MeanEstimate est;
    est.n = values.size();
    if (values.empty())
        return est;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    est.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - est.mean) * (v - est.mean);
        double var = ss / static_cast<double>(values.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return est;
}

/*!
 * Runs fn(i) for i in [0, count) on up to `workers` threads. Work items are
 * claimed dynamically; callers write results into slot i so the reduction
 * order never depends on scheduling. The first exception is rethrown.
 */
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn)
{
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;)
        {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace stochwave
