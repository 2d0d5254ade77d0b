/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"
#include "sdapsim/types.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdap
{

/// Immutable QFI -> DRB table. Unmapped QFIs resolve to DRB 0.
///
/// Text form is a list of `qfi:drb` pairs separated by `;`, for example
/// "1:0;5:1;9:2;63:3". Whitespace around tokens is ignored, as are empty
/// segments (so a trailing `;` is accepted). Duplicate QFIs are an error.
class QfiDrbTable
{
  public:
    static constexpr DrbId kDefaultDrb{0};

    QfiDrbTable() = default;

    static QfiDrbTable Parse(std::string_view text)
    {
        QfiDrbTable table;
        std::size_t segStart = 0;
        while (segStart <= text.size())
        {
            std::size_t segEnd = text.find(';', segStart);
            if (segEnd == std::string_view::npos)
            {
                segEnd = text.size();
            }
            table.ParsePair(text, segStart, segEnd);
            segStart = segEnd + 1;
        }
        return table;
    }

    DrbId Lookup(Qfi qfi) const noexcept
    {
        return entries_[qfi.value()].value_or(kDefaultDrb);
    }

    DrbId Lookup(int qfi) const
    {
        return Lookup(Qfi(qfi));
    }

    bool Contains(Qfi qfi) const noexcept
    {
        return entries_[qfi.value()].has_value();
    }

    std::size_t size() const noexcept
    {
        std::size_t n = 0;
        for (const auto& e : entries_)
        {
            n += e.has_value();
        }
        return n;
    }

    bool empty() const noexcept
    {
        return size() == 0;
    }

    /// Explicit entries in ascending QFI order.
    std::vector<std::pair<Qfi, DrbId>> Entries() const
    {
        std::vector<std::pair<Qfi, DrbId>> out;
        for (int q = 0; q <= Qfi::kMax; ++q)
        {
            if (entries_[q])
            {
                out.emplace_back(Qfi(q), *entries_[q]);
            }
        }
        return out;
    }

    /// Canonical text form; Parse(Render()) reproduces the table.
    std::string Render() const
    {
        std::string out;
        for (const auto& [qfi, drb] : Entries())
        {
            if (!out.empty())
            {
                out += ';';
            }
            out += std::to_string(qfi.value()) + ':' + std::to_string(drb.value());
        }
        return out;
    }

    friend bool operator==(const QfiDrbTable&, const QfiDrbTable&) = default;

  private:
    static bool IsSpace(char c)
    {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    }

    // Trims [begin, end) in place; returns false when nothing is left.
    static bool Trim(std::string_view text, std::size_t& begin, std::size_t& end)
    {
        while (begin < end && IsSpace(text[begin]))
        {
            ++begin;
        }
        while (end > begin && IsSpace(text[end - 1]))
        {
            --end;
        }
        return begin < end;
    }

    static std::uint64_t ParseNumber(std::string_view text,
                                     std::size_t begin,
                                     std::size_t end,
                                     const char* what)
    {
        if (!Trim(text, begin, end))
        {
            throw MalformedMappingError(begin, std::string("missing ") + what);
        }
        std::string_view tok = text.substr(begin, end - begin);
        if (tok.front() == '-')
        {
            throw MalformedMappingError(begin, std::string("negative ") + what + " '" +
                                                   std::string(tok) + "'");
        }
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec == std::errc::result_out_of_range)
        {
            throw MalformedMappingError(begin, std::string(what) + " '" + std::string(tok) +
                                                   "' is out of range");
        }
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
        {
            throw MalformedMappingError(begin, std::string(what) + " '" + std::string(tok) +
                                                   "' is not an integer");
        }
        return value;
    }

    void ParsePair(std::string_view text, std::size_t begin, std::size_t end)
    {
        std::size_t b = begin;
        std::size_t e = end;
        if (!Trim(text, b, e))
        {
            return;
        }
        std::size_t colon = text.substr(0, e).find(':', b);
        if (colon == std::string_view::npos)
        {
            throw MalformedMappingError(b, "expected 'qfi:drb', got '" +
                                               std::string(text.substr(b, e - b)) + "'");
        }
        std::uint64_t qfi = ParseNumber(text, b, colon, "qfi");
        if (qfi > static_cast<std::uint64_t>(Qfi::kMax))
        {
            throw MalformedMappingError(b, "qfi " + std::to_string(qfi) + " exceeds 63");
        }
        std::uint64_t drb = ParseNumber(text, colon + 1, e, "drb");
        if (drb > UINT32_MAX)
        {
            throw MalformedMappingError(colon + 1, "drb " + std::to_string(drb) + " is too large");
        }
        auto& slot = entries_[qfi];
        if (slot)
        {
            throw MalformedMappingError(b, "duplicate qfi " + std::to_string(qfi));
        }
        slot = DrbId(static_cast<std::uint32_t>(drb));
    }

    std::array<std::optional<DrbId>, Qfi::kMax + 1> entries_{};
};

} // namespace sdap
