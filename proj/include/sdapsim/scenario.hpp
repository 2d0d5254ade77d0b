/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"
#include "sdapsim/qfi_drb_map.hpp"
#include "sdapsim/types.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sdap
{

enum class Transport
{
    Udp,
    Tcp,
};

enum class Scheduler
{
    /// One FIFO for all traffic.
    SharedFifo,
    /// One FIFO per DRB; a single server takes one packet per turn from the
    /// non-empty queues in DRB order. Work conserving.
    PerDrbRoundRobin,
    /// One FIFO per DRB, each drained by its own server at an equal share
    /// of the link rate. Not work conserving; DRBs never delay each other.
    PerDrbPartitioned,
};

enum class Direction
{
    Uplink,
    Downlink,
};

struct FlowConfig
{
    std::uint32_t flowId = 0;
    Qfi qfi{};
    bool tagged = true;
    double packetRate = 50.0; // packets/s
    std::size_t payloadSize = 160;
    std::uint16_t srcPort = 0;
    std::uint16_t dstPort = 0;
    Transport transport = Transport::Udp;
    SimTime startTime{0};
    SimTime stopTime{0};

    SimTime Period() const
    {
        return SimTime{std::llround(1e9 / packetRate)};
    }
};

struct LinkConfig
{
    double serviceRate = 1e6; // bytes/s
    Scheduler scheduler = Scheduler::PerDrbRoundRobin;
    SimTime propagationDelay{0};
    std::size_t perQueueCapacity = 0; // packets, 0 = unbounded
};

struct ScenarioConfig
{
    SimTime duration{0};
    std::uint64_t seed = 1;
    bool sdapEnabled = true;
    std::string qfiToDrbMapping;
    /// Receive-side table; defaults to qfiToDrbMapping. Only set to inject
    /// a deliberate TX/RX asymmetry.
    std::optional<std::string> rxQfiToDrbMapping;
    /// Upper bound of the uniform per-packet emission jitter.
    SimTime jitter{0};
    Direction direction = Direction::Uplink;
    std::vector<FlowConfig> flows;
    LinkConfig link;
    /// Radio parameters, recorded for provenance only.
    std::map<std::string, std::string> radio;

    const std::string& RxMapping() const
    {
        return rxQfiToDrbMapping ? *rxQfiToDrbMapping : qfiToDrbMapping;
    }

    /// Throws ConfigError naming the first violated constraint.
    void Validate() const
    {
        auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
        if (duration <= SimTime{0})
        {
            fail("general.duration must be > 0");
        }
        if (!(link.serviceRate > 0.0) || !std::isfinite(link.serviceRate))
        {
            fail("link.serviceRate must be > 0");
        }
        if (link.propagationDelay < SimTime{0})
        {
            fail("link.propagationDelay must be >= 0");
        }
        if (jitter < SimTime{0})
        {
            fail("general.jitter must be >= 0");
        }
        for (const auto& [key, text] :
             {std::pair<const char*, const std::string*>{"general.qfiToDrbMapping",
                                                          &qfiToDrbMapping},
              {"general.rxQfiToDrbMapping", &RxMapping()}})
        {
            try
            {
                QfiDrbTable::Parse(*text);
            }
            catch (const MalformedMappingError& e)
            {
                fail(std::string(key) + ": " + e.what());
            }
        }
        std::set<std::uint32_t> ids;
        for (const auto& f : flows)
        {
            const std::string name = "flow " + std::to_string(f.flowId);
            if (!ids.insert(f.flowId).second)
            {
                fail(name + ": duplicate flow id");
            }
            if (!(f.packetRate > 0.0) || !std::isfinite(f.packetRate))
            {
                fail(name + ": packetRate must be > 0");
            }
            if (f.payloadSize == 0)
            {
                fail(name + ": payloadSize must be > 0");
            }
            const std::size_t headerBytes = 20 + (f.transport == Transport::Udp ? 8 : 20) + 1;
            if (f.payloadSize + headerBytes > 65535)
            {
                fail(name + ": payloadSize too large for an IPv4 datagram");
            }
            if (f.stopTime <= f.startTime)
            {
                fail(name + ": stopTime must be > startTime");
            }
            if (f.startTime < SimTime{0})
            {
                fail(name + ": startTime must be >= 0");
            }
            if (jitter >= f.Period())
            {
                fail(name + ": general.jitter must be shorter than the packet period");
            }
        }
    }
};

namespace detail
{

inline std::string
Lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

class KeyReader
{
  public:
    KeyReader(std::string section, const boost::property_tree::ptree& tree)
        : section_(std::move(section)),
          tree_(tree)
    {
    }

    std::optional<std::string> Raw(const std::string& key)
    {
        seen_.insert(key);
        auto child = tree_.get_child_optional(boost::property_tree::ptree::path_type(key, '\0'));
        if (!child)
        {
            return std::nullopt;
        }
        return child->data();
    }

    std::optional<double> Number(const std::string& key)
    {
        auto raw = Raw(key);
        if (!raw)
        {
            return std::nullopt;
        }
        double v = 0;
        auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
        if (ec != std::errc{} || ptr != raw->data() + raw->size() || !std::isfinite(v))
        {
            Fail(key, "'" + *raw + "' is not a number");
        }
        return v;
    }

    template <typename Int>
    std::optional<Int> Integer(const std::string& key)
    {
        auto raw = Raw(key);
        if (!raw)
        {
            return std::nullopt;
        }
        Int v{};
        auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
        if (ec != std::errc{} || ptr != raw->data() + raw->size())
        {
            Fail(key, "'" + *raw + "' is not a valid integer in range");
        }
        return v;
    }

    std::optional<SimTime> Seconds(const std::string& key)
    {
        auto v = Number(key);
        if (!v)
        {
            return std::nullopt;
        }
        return SimTime{std::llround(*v * 1e9)};
    }

    std::optional<bool> Boolean(const std::string& key)
    {
        auto raw = Raw(key);
        if (!raw)
        {
            return std::nullopt;
        }
        std::string v = Lower(*raw);
        if (v == "true" || v == "1" || v == "yes")
        {
            return true;
        }
        if (v == "false" || v == "0" || v == "no")
        {
            return false;
        }
        Fail(key, "'" + *raw + "' is not a boolean");
    }

    std::string Name(const std::string& key) const
    {
        return section_.empty() ? key : section_ + "." + key;
    }

    [[noreturn]] void Fail(const std::string& key, const std::string& what) const
    {
        throw Error(ErrorCode::ConfigError, "key '" + Name(key) + "': " + what);
    }

    /// Rejects keys that were never asked for.
    void CheckUnknown() const
    {
        for (const auto& [key, child] : tree_)
        {
            if (!child.empty())
            {
                continue; // section, handled by the caller
            }
            if (!seen_.count(key))
            {
                throw Error(ErrorCode::ConfigError, "unknown key '" + Name(key) + "'");
            }
        }
    }

  private:
    std::string section_;
    const boost::property_tree::ptree& tree_;
    std::set<std::string> seen_;
};

inline void
ReadGeneral(KeyReader& r, ScenarioConfig& cfg)
{
    if (auto v = r.Seconds("duration"))
    {
        cfg.duration = *v;
    }
    if (auto v = r.Integer<std::uint64_t>("seed"))
    {
        cfg.seed = *v;
    }
    if (auto v = r.Boolean("sdapEnabled"))
    {
        cfg.sdapEnabled = *v;
    }
    if (auto v = r.Raw("qfiToDrbMapping"))
    {
        try
        {
            QfiDrbTable::Parse(*v);
        }
        catch (const MalformedMappingError& e)
        {
            r.Fail("qfiToDrbMapping", e.what());
        }
        cfg.qfiToDrbMapping = *v;
    }
    if (auto v = r.Raw("rxQfiToDrbMapping"))
    {
        try
        {
            QfiDrbTable::Parse(*v);
        }
        catch (const MalformedMappingError& e)
        {
            r.Fail("rxQfiToDrbMapping", e.what());
        }
        cfg.rxQfiToDrbMapping = *v;
    }
    if (auto v = r.Seconds("jitter"))
    {
        cfg.jitter = *v;
    }
    if (auto v = r.Raw("direction"))
    {
        std::string d = Lower(*v);
        if (d == "uplink")
        {
            cfg.direction = Direction::Uplink;
        }
        else if (d == "downlink")
        {
            cfg.direction = Direction::Downlink;
        }
        else
        {
            r.Fail("direction", "expected uplink or downlink, got '" + *v + "'");
        }
    }
}

inline void
ReadLink(KeyReader& r, LinkConfig& link)
{
    if (auto v = r.Number("serviceRate"))
    {
        link.serviceRate = *v;
    }
    if (auto v = r.Raw("scheduler"))
    {
        std::string s = Lower(*v);
        if (s == "sharedfifo")
        {
            link.scheduler = Scheduler::SharedFifo;
        }
        else if (s == "perdrbroundrobin")
        {
            link.scheduler = Scheduler::PerDrbRoundRobin;
        }
        else if (s == "perdrbpartitioned")
        {
            link.scheduler = Scheduler::PerDrbPartitioned;
        }
        else
        {
            r.Fail("scheduler",
                   "expected SharedFifo, PerDrbRoundRobin or PerDrbPartitioned, got '" + *v + "'");
        }
    }
    if (auto v = r.Seconds("propagationDelay"))
    {
        link.propagationDelay = *v;
    }
    if (auto v = r.Integer<std::size_t>("perQueueCapacity"))
    {
        link.perQueueCapacity = *v;
    }
}

inline FlowConfig
ReadFlow(KeyReader& r, std::uint32_t defaultId)
{
    FlowConfig f;
    f.flowId = r.Integer<std::uint32_t>("id").value_or(defaultId);
    if (auto v = r.Integer<int>("qfi"))
    {
        if (*v < 0 || *v > Qfi::kMax)
        {
            r.Fail("qfi", std::to_string(*v) + " outside [0, 63]");
        }
        f.qfi = Qfi(*v);
    }
    if (auto v = r.Boolean("tagged"))
    {
        f.tagged = *v;
    }
    if (auto v = r.Number("packetRate"))
    {
        f.packetRate = *v;
    }
    if (auto v = r.Integer<std::size_t>("payloadSize"))
    {
        f.payloadSize = *v;
    }
    f.srcPort = r.Integer<std::uint16_t>("srcPort").value_or(
        static_cast<std::uint16_t>(1000 + defaultId));
    f.dstPort = r.Integer<std::uint16_t>("dstPort").value_or(
        static_cast<std::uint16_t>(2000 + defaultId));
    if (auto v = r.Raw("transport"))
    {
        std::string t = Lower(*v);
        if (t == "udp")
        {
            f.transport = Transport::Udp;
        }
        else if (t == "tcp")
        {
            f.transport = Transport::Tcp;
        }
        else
        {
            r.Fail("transport", "expected udp or tcp, got '" + *v + "'");
        }
    }
    if (auto v = r.Seconds("startTime"))
    {
        f.startTime = *v;
    }
    if (auto v = r.Seconds("stopTime"))
    {
        f.stopTime = *v;
    }
    return f;
}

} // namespace detail

/// Parses an INI scenario.
///
///   [general]   duration, seed, sdapEnabled, qfiToDrbMapping,
///               rxQfiToDrbMapping, jitter, direction
///   [link]      serviceRate, scheduler, propagationDelay, perQueueCapacity
///   [radio]     free-form, recorded only
///   [flow <n>]  id, qfi, tagged, packetRate, payloadSize, srcPort, dstPort,
///               transport, startTime, stopTime
///
/// Keys before the first section belong to [general]. Times are seconds,
/// rates are packets/s (flows) and bytes/s (link). A flow without stopTime
/// runs until the scenario duration.
inline ScenarioConfig
ParseScenario(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try
    {
        pt::ini_parser::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e)
    {
        throw Error(ErrorCode::ConfigError,
                    "line " + std::to_string(e.line()) + ": " + e.message());
    }

    ScenarioConfig cfg;
    cfg.link.propagationDelay = SimTime{0};

    detail::KeyReader top("", tree);
    detail::ReadGeneral(top, cfg);
    top.CheckUnknown();

    std::uint32_t flowIndex = 0;
    std::vector<bool> flowHasStop;
    for (const auto& [name, section] : tree)
    {
        if (section.empty())
        {
            continue;
        }
        const std::string lname = detail::Lower(name);
        detail::KeyReader r(name, section);
        if (lname == "general")
        {
            detail::ReadGeneral(r, cfg);
            r.CheckUnknown();
        }
        else if (lname == "link")
        {
            detail::ReadLink(r, cfg.link);
            r.CheckUnknown();
        }
        else if (lname == "radio")
        {
            for (const auto& [key, value] : section)
            {
                cfg.radio[key] = value.data();
            }
        }
        else if (lname.rfind("flow", 0) == 0)
        {
            cfg.flows.push_back(detail::ReadFlow(r, flowIndex++));
            flowHasStop.push_back(section.count("stopTime") > 0);
            r.CheckUnknown();
        }
        else
        {
            throw Error(ErrorCode::ConfigError, "unknown section '" + name + "'");
        }
    }
    for (std::size_t i = 0; i < cfg.flows.size(); ++i)
    {
        if (!flowHasStop[i])
        {
            cfg.flows[i].stopTime = cfg.duration;
        }
    }
    cfg.Validate();
    return cfg;
}

inline ScenarioConfig
ParseScenario(const std::string& text)
{
    std::istringstream in(text);
    return ParseScenario(in);
}

inline ScenarioConfig
LoadScenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw Error(ErrorCode::ConfigError, "cannot open scenario file '" + path.string() + "'");
    }
    return ParseScenario(in);
}

} // namespace sdap
