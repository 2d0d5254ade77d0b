/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace sdap
{

/// Simulation time. Integer nanoseconds keep event ordering exact.
using SimTime = std::chrono::nanoseconds;

/// QoS Flow Identifier, a 6-bit value.
class Qfi
{
  public:
    static constexpr int kMax = 63;

    constexpr Qfi() = default;

    constexpr explicit Qfi(int value)
        : value_(static_cast<std::uint8_t>(value))
    {
        if (value < 0 || value > kMax)
        {
            throw Error(ErrorCode::QfiOutOfRange,
                        "QFI " + std::to_string(value) + " outside [0, 63]");
        }
    }

    constexpr int value() const noexcept
    {
        return value_;
    }

    friend constexpr auto operator<=>(Qfi, Qfi) = default;

  private:
    std::uint8_t value_ = 0;
};

/// Logical data radio bearer identifier.
class DrbId
{
  public:
    constexpr DrbId() = default;

    constexpr explicit DrbId(std::uint32_t value)
        : value_(value)
    {
    }

    constexpr std::uint32_t value() const noexcept
    {
        return value_;
    }

    friend constexpr auto operator<=>(DrbId, DrbId) = default;

  private:
    std::uint32_t value_ = 0;
};

} // namespace sdap
