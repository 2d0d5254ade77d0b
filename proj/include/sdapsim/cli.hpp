/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/checklist.hpp"
#include "sdapsim/error.hpp"
#include "sdapsim/pdu_codec.hpp"
#include "sdapsim/report.hpp"
#include "sdapsim/scenario.hpp"
#include "sdapsim/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sdap::cli
{

constexpr std::string_view kVersion = "sdapsim 1.0.0";

// Exit codes are a stable contract for scripts.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;

struct Overrides
{
    std::optional<std::uint64_t> seed;
    bool noSdap = false;
};

inline ScenarioConfig
LoadWithOverrides(const std::filesystem::path& path, const Overrides& o)
{
    if (!std::filesystem::exists(path))
    {
        throw Error(ErrorCode::ConfigError, "scenario file not found: '" + path.string() + "'");
    }
    ScenarioConfig cfg = LoadScenario(path);
    if (o.seed)
    {
        cfg.seed = *o.seed;
    }
    if (o.noSdap)
    {
        cfg.sdapEnabled = false;
    }
    return cfg;
}

/// Runs a scenario and writes events.log, flow_stats.csv and summary.txt
/// into `outDir`.
inline int
CmdRun(const std::filesystem::path& scenario,
       const std::filesystem::path& outDir,
       const Overrides& overrides,
       std::ostream& out,
       std::ostream& err)
{
    ScenarioReport report;
    try
    {
        report = RunScenario(LoadWithOverrides(scenario, overrides));
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    if (ec)
    {
        err << "error: cannot create output directory '" << outDir.string()
            << "': " << ec.message() << '\n';
        return kExitUsage;
    }
    auto write = [&](const char* name, auto&& fn) {
        std::ofstream f(outDir / name, std::ios::binary);
        fn(f);
        return static_cast<bool>(f);
    };
    const bool ok = write("events.log", [&](std::ostream& f) { WriteEventLog(f, report); }) &&
                    write("flow_stats.csv", [&](std::ostream& f) { WriteStatsCsv(f, report); }) &&
                    write("summary.txt", [&](std::ostream& f) { WriteSummary(f, report); });
    if (!ok)
    {
        err << "error: failed writing results to '" << outDir.string() << "'\n";
        return kExitUsage;
    }
    for (const auto& w : report.warnings)
    {
        err << "warning: " << w << '\n';
    }
    WriteSummary(out, report);
    return kExitOk;
}

/// Runs a scenario and prints the functional checklist.
inline int
CmdValidate(const std::filesystem::path& scenario,
            const Overrides& overrides,
            std::ostream& out,
            std::ostream& err)
{
    ScenarioReport report;
    try
    {
        report = RunScenario(LoadWithOverrides(scenario, overrides));
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto rows = RunChecklist(report);
    PrintChecklist(out, rows);
    const bool pass = AllPassed(rows);
    out << (pass ? "all checkpoints passed" : "checklist FAILED") << '\n';
    return pass ? kExitOk : kExitValidationFailed;
}

namespace detail
{

inline std::string
Trimmed(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    {
        s.remove_suffix(1);
    }
    return std::string(s);
}

inline std::string
Lowered(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline std::optional<std::uint8_t>
ParseHexByte(std::string_view s)
{
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
    {
        s.remove_prefix(2);
    }
    if (s.empty() || s.size() > 2)
    {
        return std::nullopt;
    }
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size())
    {
        return std::nullopt;
    }
    return static_cast<std::uint8_t>(v);
}

} // namespace detail

/// Parses either a hex byte ("0x85", "85") or a "dc,rqi,qfi" triple
/// ("Data,false,5") and returns the opposite representation.
inline std::string
Codec(std::string_view input)
{
    const std::string in = detail::Trimmed(input);
    if (in.find(',') == std::string::npos)
    {
        auto b = detail::ParseHexByte(in);
        if (!b)
        {
            throw Error(ErrorCode::ParseError, "'" + in + "' is not a hex byte or dc,rqi,qfi triple");
        }
        const SdapHeader h = DecodeSdap(*b);
        return std::string("dc=") + (h.dc == PduType::Data ? "Data" : "Control") +
               " rqi=" + (h.rqi ? "true" : "false") + " qfi=" + std::to_string(h.qfi.value());
    }

    std::vector<std::string> parts;
    std::stringstream ss(in);
    for (std::string item; std::getline(ss, item, ',');)
    {
        parts.push_back(detail::Lowered(detail::Trimmed(item)));
    }
    if (parts.size() != 3)
    {
        throw Error(ErrorCode::ParseError, "expected dc,rqi,qfi, got '" + in + "'");
    }
    SdapHeader h;
    if (parts[0] == "data")
    {
        h.dc = PduType::Data;
    }
    else if (parts[0] == "control")
    {
        h.dc = PduType::Control;
    }
    else
    {
        throw Error(ErrorCode::ParseError, "dc must be Data or Control, got '" + parts[0] + "'");
    }
    if (parts[1] == "true" || parts[1] == "1")
    {
        h.rqi = true;
    }
    else if (parts[1] == "false" || parts[1] == "0")
    {
        h.rqi = false;
    }
    else
    {
        throw Error(ErrorCode::ParseError, "rqi must be true or false, got '" + parts[1] + "'");
    }
    int q = -1;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), q);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size() || q < 0 || q > Qfi::kMax)
    {
        throw Error(ErrorCode::ParseError, "qfi must be an integer in [0, 63], got '" + parts[2] + "'");
    }
    h.qfi = Qfi(q);
    std::ostringstream os;
    os << "0x" << std::uppercase << std::hex << std::setw(2) << std::setfill('0')
       << static_cast<unsigned>(EncodeSdap(h));
    return os.str();
}

inline int
CmdCodec(std::string_view input, std::ostream& out, std::ostream& err)
{
    try
    {
        out << Codec(input) << '\n';
        return kExitOk;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace sdap::cli
