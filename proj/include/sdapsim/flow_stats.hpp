/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/types.hpp"

#include <cmath>
#include <cstdint>
#include <span>

namespace sdap
{

struct LatencySummary
{
    std::size_t samples = 0;
    double mean = 0.0; // seconds, 0 when samples == 0
    double stddev = 0.0; // sample std (n - 1), 0 when samples < 2

    bool HasMean() const noexcept
    {
        return samples >= 1;
    }

    bool HasStddev() const noexcept
    {
        return samples >= 2;
    }
};

inline LatencySummary
SummarizeLatencies(std::span<const SimTime> samples)
{
    LatencySummary s;
    s.samples = samples.size();
    if (samples.empty())
    {
        return s;
    }
    long double sum = 0;
    for (auto t : samples)
    {
        sum += static_cast<long double>(t.count());
    }
    const long double mean = sum / static_cast<long double>(samples.size());
    s.mean = static_cast<double>(mean * 1e-9L);
    if (samples.size() >= 2)
    {
        long double ss = 0;
        for (auto t : samples)
        {
            const long double d = static_cast<long double>(t.count()) - mean;
            ss += d * d;
        }
        s.stddev = static_cast<double>(
            std::sqrt(ss / static_cast<long double>(samples.size() - 1)) * 1e-9L);
    }
    return s;
}

struct FlowStats
{
    std::uint32_t flowId = 0;
    Qfi qfi{};
    DrbId drb{};
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::uint64_t lost = 0;
    LatencySummary latency;
    std::uint64_t drbMismatches = 0;
    std::uint64_t integrityFailures = 0;

    bool Empty() const noexcept
    {
        return sent == 0;
    }
};

} // namespace sdap
