/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/qfi_drb_map.hpp"
#include "sdapsim/simulator.hpp"

#include <charconv>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdap
{

enum class CheckStatus
{
    Passed,
    Failed,
    Skipped,
};

constexpr std::string_view
ToString(CheckStatus s)
{
    switch (s)
    {
    case CheckStatus::Passed:
        return "Passed";
    case CheckStatus::Failed:
        return "Failed";
    case CheckStatus::Skipped:
        return "Skipped";
    }
    return "?";
}

struct ChecklistRow
{
    std::string checkpoint;
    std::string module;
    std::string expected;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
};

/// One parsed `t=<s> flow=<id> seq=<n> <text>` event-log line.
struct LogEntry
{
    std::string time;
    std::uint32_t flowId = 0;
    std::uint64_t seq = 0;
    std::string text;
};

inline std::optional<LogEntry>
ParseLogLine(std::string_view line)
{
    std::istringstream in{std::string(line)};
    std::string t, f, s;
    if (!(in >> t >> f >> s) || t.rfind("t=", 0) != 0 || f.rfind("flow=", 0) != 0 ||
        s.rfind("seq=", 0) != 0)
    {
        return std::nullopt;
    }
    LogEntry e;
    e.time = t.substr(2);
    try
    {
        e.flowId = static_cast<std::uint32_t>(std::stoul(f.substr(5)));
        e.seq = std::stoull(s.substr(4));
    }
    catch (const std::exception&)
    {
        return std::nullopt;
    }
    std::getline(in >> std::ws, e.text);
    return e;
}

namespace detail
{

// What the event log says happened to one packet.
struct PacketTrace
{
    std::optional<int> tagQfi;
    bool assumedDefault = false;
    std::optional<int> insertedQfi;
    std::optional<std::pair<int, int>> selected; // (drb, qfi)
    std::optional<int> rxQfi;
    std::optional<int> rxDrb;
};

// Reads the integer that follows `prefix` at the start of `text`.
inline std::optional<int>
After(std::string_view text, std::string_view prefix)
{
    if (text.substr(0, prefix.size()) != prefix)
    {
        return std::nullopt;
    }
    std::string_view rest = text.substr(prefix.size());
    int v = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc{} || ptr == rest.data())
    {
        return std::nullopt;
    }
    return v;
}

inline void
Absorb(PacketTrace& p, std::string_view text)
{
    if (auto q = After(text, "[TX] QFI = "); q && text.ends_with(" extracted from QosTagReq;"))
    {
        p.tagQfi = q;
    }
    else if (text == "[TX] QFI = 0 assumed (no QosTagReq);")
    {
        p.assumedDefault = true;
    }
    else if (auto q = After(text, "[TX] Inserted SDAP header with QFI = "))
    {
        p.insertedQfi = q;
    }
    else if (auto d = After(text, "[TX] Selected DRB = "))
    {
        auto pos = text.find(" for QFI = ");
        if (pos != std::string_view::npos)
        {
            if (auto q = After(text.substr(pos), " for QFI = "))
            {
                p.selected = std::make_pair(*d, *q);
            }
        }
    }
    else if (auto q = After(text, "[RX] Extracted QFI = "))
    {
        p.rxQfi = q;
    }
    else if (auto d = After(text, "[RX] Mapped DRB = "))
    {
        p.rxDrb = d;
    }
}

inline bool
CounterClean(const CheckCounter& c, std::uint64_t expected)
{
    return c.failed == 0 && c.checked == expected;
}

} // namespace detail

/// Evaluates the seven functional checkpoints against a finished run: the
/// event log is replayed per packet and cross-checked with the run's own
/// per-packet counters.
inline std::vector<ChecklistRow>
RunChecklist(const ScenarioReport& report)
{
    auto row = [](std::string checkpoint, std::string module, std::string expected) {
        return ChecklistRow{std::move(checkpoint), std::move(module), std::move(expected),
                            CheckStatus::Skipped, {}};
    };
    std::vector<ChecklistRow> rows = {
        row("QFI extraction from QosTagReq tag", "TxSdapEntity", "QFI parsed from packet tag"),
        row("SDAP header insertion (QFI, D/C, RQI fields)", "TxSdapEntity",
            "Header inserted between transport and IP"),
        row("QFI-to-DRB logical mapping", "TxSdapEntity", "QFI mapped to DRB via config"),
        row("SDAP header removal", "RxSdapEntity", "Header stripped before IP forwarding"),
        row("QFI extraction from SDAP header", "RxSdapEntity", "QFI parsed from SDAP field"),
        row("DRB mapping verification", "RxSdapEntity", "DRB mapping matches TX side"),
        row("End-to-end packet integrity", "Both", "No loss, corruption, or mismatch"),
    };

    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    for (const auto& f : report.flows)
    {
        sent += f.sent;
        received += f.received;
    }
    if (sent == 0)
    {
        for (auto& r : rows)
        {
            r.status = CheckStatus::Skipped;
            r.detail = "no traffic";
        }
        return rows;
    }

    std::map<std::uint32_t, const FlowConfig*> flowById;
    for (const auto& f : report.config.flows)
    {
        flowById[f.flowId] = &f;
    }
    std::map<std::pair<std::uint32_t, std::uint64_t>, detail::PacketTrace> traces;
    for (const auto& line : report.eventLog)
    {
        if (auto e = ParseLogLine(line))
        {
            detail::Absorb(traces[{e->flowId, e->seq}], e->text);
        }
    }

    auto set = [](ChecklistRow& row, bool ok, std::string detail) {
        row.status = ok ? CheckStatus::Passed : CheckStatus::Failed;
        row.detail = std::move(detail);
    };

    // Row 7 does not depend on SDAP being enabled.
    {
        bool ok = detail::CounterClean(report.checks.integrity, received);
        std::uint64_t lost = 0;
        std::uint64_t corrupt = 0;
        for (const auto& f : report.flows)
        {
            ok = ok && f.lost == 0 && f.received == f.sent && f.integrityFailures == 0 &&
                 f.drbMismatches == 0;
            lost += f.lost;
            corrupt += f.integrityFailures;
        }
        set(rows[6], ok,
            std::to_string(received) + "/" + std::to_string(sent) + " delivered, " +
                std::to_string(lost) + " lost, " + std::to_string(corrupt) + " corrupted");
    }

    if (!report.config.sdapEnabled)
    {
        for (std::size_t i = 0; i < 6; ++i)
        {
            rows[i].status = CheckStatus::Skipped;
            rows[i].detail = "SDAP disabled";
        }
        return rows;
    }

    const QfiDrbTable table = QfiDrbTable::Parse(report.config.qfiToDrbMapping);
    std::uint64_t txSeen = 0;
    std::uint64_t rxSeen = 0;
    bool tagOk = true;
    bool insertOk = true;
    bool mapOk = true;
    bool rxQfiOk = true;
    bool rxDrbOk = true;
    for (const auto& [key, p] : traces)
    {
        auto it = flowById.find(key.first);
        if (it == flowById.end())
        {
            tagOk = false;
            continue;
        }
        const FlowConfig& flow = *it->second;
        const int expected = flow.tagged ? flow.qfi.value() : 0;
        const bool hasTx = p.tagQfi || p.assumedDefault;
        if (hasTx)
        {
            ++txSeen;
            tagOk = tagOk && (flow.tagged ? p.tagQfi == expected : p.assumedDefault);
            insertOk = insertOk && p.insertedQfi == expected;
            mapOk = mapOk && p.selected && p.selected->second == expected &&
                    p.selected->first == static_cast<int>(table.Lookup(expected).value());
        }
        if (p.rxQfi || p.rxDrb)
        {
            ++rxSeen;
            rxQfiOk = rxQfiOk && p.rxQfi && p.insertedQfi && *p.rxQfi == *p.insertedQfi;
            rxDrbOk = rxDrbOk && p.rxDrb && p.selected && *p.rxDrb == p.selected->first;
        }
    }
    std::uint64_t mismatches = 0;
    for (const auto& f : report.flows)
    {
        mismatches += f.drbMismatches;
    }
    const auto& c = report.checks;
    const std::string txCount = std::to_string(txSeen) + "/" + std::to_string(sent) + " packets";
    const std::string rxCount =
        std::to_string(rxSeen) + "/" + std::to_string(received) + " packets";

    set(rows[0], tagOk && txSeen == sent && detail::CounterClean(c.tagExtraction, sent), txCount);
    set(rows[1], insertOk && txSeen == sent && detail::CounterClean(c.headerInsertion, sent),
        txCount);
    set(rows[2], mapOk && txSeen == sent && detail::CounterClean(c.txMapping, sent), txCount);
    set(rows[3], rxSeen == received && detail::CounterClean(c.headerRemoval, received), rxCount);
    set(rows[4], rxQfiOk && rxSeen == received && detail::CounterClean(c.rxQfiExtraction, received),
        rxCount);
    set(rows[5],
        rxDrbOk && mismatches == 0 && rxSeen == received &&
            detail::CounterClean(c.drbVerification, received),
        rxCount + ", " + std::to_string(mismatches) + " DRB mismatches");
    return rows;
}

inline bool
AllPassed(const std::vector<ChecklistRow>& rows)
{
    for (const auto& r : rows)
    {
        if (r.status != CheckStatus::Passed)
        {
            return false;
        }
    }
    return !rows.empty();
}

inline void
PrintChecklist(std::ostream& os, const std::vector<ChecklistRow>& rows)
{
    for (const auto& r : rows)
    {
        os << std::left << std::setw(46) << r.checkpoint << std::setw(14) << r.module;
        if (r.status == CheckStatus::Skipped)
        {
            os << "Skipped (" << r.detail << ")\n";
        }
        else
        {
            os << ToString(r.status) << " (" << r.detail << ")\n";
        }
    }
}

} // namespace sdap
