/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/simulator.hpp"

#include <iomanip>
#include <ostream>
#include <string>

namespace sdap
{

inline constexpr const char* kStatsCsvHeader =
    "flow_id,qfi,drb,sent,received,lost,mean_latency_ms,std_latency_ms,drb_mismatches,"
    "integrity_failures";

inline void
WriteStatsCsv(std::ostream& os, const ScenarioReport& report)
{
    os << kStatsCsvHeader << '\n';
    for (const auto& f : report.flows)
    {
        os << f.flowId << ',' << f.qfi.value() << ',' << f.drb.value() << ',' << f.sent << ','
           << f.received << ',' << f.lost << ',' << std::fixed << std::setprecision(6)
           << f.latency.mean * 1e3 << ',' << f.latency.stddev * 1e3 << ',' << f.drbMismatches
           << ',' << f.integrityFailures << '\n';
    }
}

inline void
WriteEventLog(std::ostream& os, const ScenarioReport& report)
{
    for (const auto& line : report.eventLog)
    {
        os << line << '\n';
    }
}

inline std::string_view
ToString(Scheduler s)
{
    switch (s)
    {
    case Scheduler::SharedFifo:
        return "SharedFifo";
    case Scheduler::PerDrbRoundRobin:
        return "PerDrbRoundRobin";
    case Scheduler::PerDrbPartitioned:
        return "PerDrbPartitioned";
    }
    return "?";
}

inline void
WriteSummary(std::ostream& os, const ScenarioReport& report)
{
    const auto& c = report.config;
    os << "duration:        " << FormatTime(c.duration) << " s\n"
       << "seed:            " << c.seed << '\n'
       << "sdap:            " << (c.sdapEnabled ? "enabled" : "disabled") << '\n'
       << "qfiToDrbMapping: " << c.qfiToDrbMapping << '\n';
    if (c.rxQfiToDrbMapping)
    {
        os << "rx mapping:      " << *c.rxQfiToDrbMapping << '\n';
    }
    os << "scheduler:       "
       << (c.sdapEnabled ? ToString(c.link.scheduler) : ToString(Scheduler::SharedFifo)) << '\n'
       << "service rate:    " << c.link.serviceRate << " B/s\n";
    for (const auto& w : report.warnings)
    {
        os << "warning:         " << w << '\n';
    }
    os << '\n';
    for (const auto& f : report.flows)
    {
        os << "flow " << f.flowId << " (QFI " << f.qfi.value() << ", DRB " << f.drb.value()
           << "): sent " << f.sent << ", received " << f.received << ", lost " << f.lost;
        if (f.latency.HasMean())
        {
            os << ", latency " << std::fixed << std::setprecision(3) << f.latency.mean * 1e3
               << " ms";
            if (f.latency.HasStddev())
            {
                os << " +/- " << f.latency.stddev * 1e3 << " ms";
            }
        }
        else
        {
            os << ", no latency samples";
        }
        os << '\n';
        os.unsetf(std::ios::fixed);
    }
}

} // namespace sdap
