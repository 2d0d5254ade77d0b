/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "sdapsim/checklist.hpp"
#include "sdapsim/cli.hpp"
#include "sdapsim/pdu_codec.hpp"
#include "sdapsim/qfi_drb_map.hpp"
#include "sdapsim/scenario.hpp"
#include "sdapsim/sdap_rx.hpp"
#include "sdapsim/sdap_tx.hpp"
#include "sdapsim/simulator.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sdap;

namespace
{

const fs::path kScenarios = SDAPSIM_SOURCE_DIR "/scenarios";
const fs::path kGolden = SDAPSIM_GOLDEN_DIR;
constexpr int kRandomPackets = 10000;

struct Verdict
{
    bool pass = false;
    std::string detail;
};

double
SecondsSince(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string
Slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int
RunCli(const std::string& args, const fs::path& capture)
{
    const std::string cmd = std::string("\"") + SDAPSIM_CLI + "\" " + args + " >\"" +
                            capture.string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path
Scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("sdapsim_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string
Quote(const fs::path& p)
{
    return "\"" + p.string() + "\"";
}

Verdict
ChecklistReproduction()
{
    const auto dir = Scratch("ac1");
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = RunCli("validate --scenario " + Quote(kScenarios / "table1_scenario.ini"),
                          dir / "stdout.txt");
    const double secs = SecondsSince(t0);
    const std::string out = Slurp(dir / "stdout.txt");
    int passed = 0;
    for (std::size_t pos = 0; (pos = out.find("Passed (", pos)) != std::string::npos; ++pos)
    {
        ++passed;
    }
    std::ostringstream d;
    d << "exit " << rc << ", " << passed << "/7 Passed, " << secs << " s";
    return {rc == 0 && passed == 7 && secs < 5.0, d.str()};
}

Verdict
TrafficAccounting()
{
    const auto report = RunScenario(LoadScenario(kScenarios / "table1_scenario.ini"));
    bool ok = report.flows.size() == 4;
    std::ostringstream d;
    for (const auto& f : report.flows)
    {
        ok = ok && f.sent == 1000 && f.received == 1000 && f.lost == 0 && f.drbMismatches == 0 &&
             f.integrityFailures == 0;
        d << "flow " << f.flowId << " sent=" << f.sent << " lost=" << f.lost
          << " mism=" << f.drbMismatches << " integ=" << f.integrityFailures << "; ";
    }
    return {ok, d.str()};
}

Verdict
CodecRoundtrip()
{
    int fieldsOk = 0;
    for (int dc = 0; dc < 2; ++dc)
    {
        for (int rqi = 0; rqi < 2; ++rqi)
        {
            for (int q = 0; q <= Qfi::kMax; ++q)
            {
                const SdapHeader h{static_cast<PduType>(dc), rqi == 1, Qfi(q)};
                fieldsOk += DecodeSdap(EncodeSdap(h)) == h;
            }
        }
    }
    int bytesOk = 0;
    for (int b = 0; b < 256; ++b)
    {
        bytesOk += EncodeSdap(DecodeSdap(static_cast<std::uint8_t>(b))) == b;
    }
    return {fieldsOk == 256 && bytesOk == 256,
            std::to_string(fieldsOk) + "/256 headers, " + std::to_string(bytesOk) + "/256 bytes"};
}

std::uint16_t
UdpLength(const Packet& p)
{
    for (const auto& c : p.chunks())
    {
        if (auto* u = std::get_if<UdpHeader>(&c))
        {
            return u->length;
        }
    }
    return 0;
}

std::uint16_t
IpLength(const Packet& p)
{
    return std::get<Ipv4Header>(p.chunks().front()).totalLength;
}

// Criteria 4 and 5 share one corpus.
struct CorpusResult
{
    int inverseFailures = 0;
    int lengthFailures = 0;
    int udpPackets = 0;
};

CorpusResult
RunCorpus()
{
    std::mt19937_64 rng(20260101);
    CorpusResult r;
    for (int i = 0; i < kRandomPackets; ++i)
    {
        const auto table = QfiDrbTable::Parse(gen::RandomMappingText(rng));
        const TxSdapEntity tx(table);
        RxSdapEntity rx(table);
        Packet in = gen::RandomPacket(rng);
        const Bytes inBytes = in.Serialize();
        const bool udp = UdpLength(in) != 0;
        r.udpPackets += udp;
        try
        {
            auto t = tx.Process(in);
            const Bytes wire = t.packet.Serialize();
            auto back = rx.Process(Deserialize(wire, StackLayout::IpTransportSdap));
            const Bytes outBytes = back.packet.Serialize();

            const bool inverse = outBytes == inBytes && back.record.qfi == t.record.qfi &&
                                 back.record.drb == t.record.drb &&
                                 rx.drbMismatches() == 0;
            r.inverseFailures += !inverse;

            bool lengths = wire.size() == inBytes.size() + 1 &&
                           outBytes.size() == wire.size() - 1 &&
                           IpLength(t.packet) == IpLength(in) + 1 &&
                           IpLength(back.packet) == IpLength(t.packet) - 1;
            if (udp)
            {
                lengths = lengths && UdpLength(t.packet) == UdpLength(in) + 1 &&
                          UdpLength(back.packet) == UdpLength(t.packet) - 1;
            }
            r.lengthFailures += !lengths;
        }
        catch (const Error&)
        {
            ++r.inverseFailures;
            ++r.lengthFailures;
        }
    }
    return r;
}

Verdict
DefaultPaths()
{
    const auto table = QfiDrbTable::Parse("1:0;5:1;9:2;63:3");
    const TxSdapEntity tx(table);
    std::mt19937_64 rng(7);

    Packet untagged = gen::RandomPacket(rng);
    untagged.RemoveTag<QosFlowTag>();
    const auto u = tx.Process(untagged);
    const auto* sdap = std::get_if<SdapHeader>(&u.packet.chunks()[2]);
    const bool untaggedOk = !u.record.hadTag && u.record.qfi == Qfi(0) && sdap &&
                            sdap->qfi == Qfi(0) && sdap->dc == PduType::Data;

    Packet seven = gen::RandomPacket(rng);
    seven.SetTag(QosFlowTag{Qfi(7)});
    const auto s = tx.Process(seven);
    const bool unmappedOk = s.record.qfi == Qfi(7) && s.record.drb == DrbId{0} &&
                            table.Lookup(Qfi(7)) == DrbId{0};

    return {untaggedOk && unmappedOk,
            "untagged -> qfi " + std::to_string(u.record.qfi.value()) + ", qfi 7 -> DRB " +
                std::to_string(s.record.drb.value())};
}

struct StdComparison
{
    int seedsPassed = 0;
    int seeds = 0;
    std::string firstFailure;
};

StdComparison
CompareAgainstFifo(const fs::path& scenario)
{
    StdComparison c;
    const ScenarioConfig base = LoadScenario(scenario);
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        ScenarioConfig with = base;
        with.seed = seed;
        ScenarioConfig without = with;
        without.sdapEnabled = false;
        const auto a = RunScenario(with);
        const auto b = RunScenario(without);
        bool allLe = a.flows.size() == b.flows.size() && !a.flows.empty();
        bool anyLt = false;
        std::ostringstream why;
        why << "seed " << seed << ":";
        for (std::size_t i = 0; i < a.flows.size() && i < b.flows.size(); ++i)
        {
            const double sa = a.flows[i].latency.stddev;
            const double sb = b.flows[i].latency.stddev;
            allLe = allLe && sa <= sb;
            anyLt = anyLt || sa < sb;
            why << " flow " << a.flows[i].flowId << " " << sa * 1e3 << " vs " << sb * 1e3 << " ms;";
        }
        ++c.seeds;
        if (allLe && anyLt)
        {
            ++c.seedsPassed;
        }
        else if (c.firstFailure.empty())
        {
            c.firstFailure = why.str();
        }
    }
    return c;
}

Verdict
Differentiation()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = CompareAgainstFifo(kScenarios / "table2_compare.ini");
    const double secs = SecondsSince(t0);
    std::ostringstream d;
    d << c.seedsPassed << "/" << c.seeds << " seeds, " << secs << " s";
    if (!c.firstFailure.empty())
    {
        d << "; first failing " << c.firstFailure;
    }
    return {c.seedsPassed == c.seeds && secs < 30.0, d.str()};
}

Verdict
GoldenLog()
{
    const auto dir = Scratch("ac8");
    const int rc = RunCli("run --scenario " + Quote(kGolden / "single_packet.ini") + " --out " +
                              Quote(dir),
                          dir / "stdout.txt");
    const std::string got = Slurp(dir / "events.log");
    const std::string want = Slurp(kGolden / "single_packet_events.log");
    return {rc == 0 && !want.empty() && got == want,
            "exit " + std::to_string(rc) + ", " + std::to_string(got.size()) + " vs " +
                std::to_string(want.size()) + " bytes"};
}

Verdict
Determinism()
{
    const auto a = Scratch("ac9_a");
    const auto b = Scratch("ac9_b");
    const std::string args =
        "run --seed 42 --scenario " + Quote(kScenarios / "table2_compare.ini") + " --out ";
    const int ra = RunCli(args + Quote(a), a / "stdout.txt");
    const int rb = RunCli(args + Quote(b), b / "stdout.txt");
    const bool logs = Slurp(a / "events.log") == Slurp(b / "events.log") &&
                      !Slurp(a / "events.log").empty();
    const bool csvs = Slurp(a / "flow_stats.csv") == Slurp(b / "flow_stats.csv");
    return {ra == 0 && rb == 0 && logs && csvs,
            std::string("logs ") + (logs ? "identical" : "differ") + ", CSVs " +
                (csvs ? "identical" : "differ")};
}

} // namespace

int
main()
{
    int failures = 0;
    auto report = [&](int n, const char* name, const Verdict& v) {
        std::cout << (v.pass ? "PASS" : "FAIL") << "  AC" << n << " " << name << ": " << v.detail
                  << std::endl;
        failures += !v.pass;
    };
    auto guarded = [](const std::function<Verdict()>& fn) {
        try
        {
            return fn();
        }
        catch (const std::exception& e)
        {
            return Verdict{false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "checklist reproduction", guarded(ChecklistReproduction));
    report(2, "exact traffic accounting", guarded(TrafficAccounting));
    report(3, "codec exhaustive roundtrip", guarded(CodecRoundtrip));

    const auto corpus = RunCorpus();
    const std::string size = std::to_string(kRandomPackets) + " packets (" +
                             std::to_string(corpus.udpPackets) + " UDP)";
    report(4, "TX/RX inverse property",
           {corpus.inverseFailures == 0,
            size + ", " + std::to_string(corpus.inverseFailures) + " failures"});
    report(5, "length bookkeeping",
           {corpus.lengthFailures == 0,
            size + ", " + std::to_string(corpus.lengthFailures) + " failures"});

    report(6, "default-path behavior", guarded(DefaultPaths));
    report(7, "differentiation (per-DRB round-robin vs shared FIFO)", guarded(Differentiation));

    // Informational only: the same comparison with per-DRB capacity
    // partitioning instead of a work-conserving round-robin server.
    try
    {
        const auto p = CompareAgainstFifo(kScenarios / "table2_partitioned.ini");
        std::cout << "INFO  AC7 supplement, partitioned per-DRB service: " << p.seedsPassed << "/"
                  << p.seeds << " seeds" << std::endl;
    }
    catch (const std::exception& e)
    {
        std::cout << "INFO  AC7 supplement failed to run: " << e.what() << std::endl;
    }

    report(8, "log-format golden test", guarded(GoldenLog));
    report(9, "determinism", guarded(Determinism));

    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
