/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/event_scheduler.hpp"
#include "sdapsim/flow_stats.hpp"
#include "sdapsim/packet.hpp"
#include "sdapsim/pdu_codec.hpp"
#include "sdapsim/qfi_drb_map.hpp"
#include "sdapsim/scenario.hpp"
#include "sdapsim/sdap_rx.hpp"
#include "sdapsim/sdap_tx.hpp"
#include "sdapsim/types.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sdap
{

struct CheckCounter
{
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;

    void Record(bool ok) noexcept
    {
        ++checked;
        failed += ok ? 0 : 1;
    }
};

/// Per-packet observations backing the functional checklist.
struct ValidationCounters
{
    CheckCounter tagExtraction;   // TX QFI equals the flow's tag (or 0)
    CheckCounter headerInsertion; // SDAP byte and length fields on the wire
    CheckCounter txMapping;       // TX DRB equals table lookup and the queue used
    CheckCounter headerRemoval;   // RX output bytes equal the original packet
    CheckCounter rxQfiExtraction; // RX QFI equals the TX QFI
    CheckCounter drbVerification; // RX DRB equals the DRB the packet travelled on
    CheckCounter integrity;       // payload and headers intact end to end
};

struct ScenarioReport
{
    ScenarioConfig config;
    std::vector<FlowStats> flows;
    std::vector<std::string> eventLog;
    std::vector<std::string> warnings;
    ValidationCounters checks;
};

constexpr std::uint32_t kUeAddress = 0x0A000001;     // 10.0.0.1
constexpr std::uint32_t kRemoteAddress = 0x0A000002; // 10.0.0.2

/// Seconds with nanosecond precision, e.g. "1.000189000".
inline std::string
FormatTime(SimTime t)
{
    const auto ns = t.count();
    std::ostringstream os;
    os << (ns / 1'000'000'000) << '.' << std::setw(9) << std::setfill('0')
       << (ns % 1'000'000'000);
    return os.str();
}

/// The packet a CBR source emits for (flow, seq), before any SDAP
/// processing. Deterministic, so the receiver can rebuild it for comparison.
inline Packet
BuildFlowPacket(const FlowConfig& flow, Direction direction, std::uint64_t seq, SimTime createdAt)
{
    Packet p(MakeFlowPayload(flow.flowId, seq, flow.payloadSize));
    std::size_t transportSize = 0;
    std::uint8_t protocol = 0;
    if (flow.transport == Transport::Udp)
    {
        UdpHeader udp;
        udp.srcPort = flow.srcPort;
        udp.dstPort = flow.dstPort;
        udp.length = static_cast<std::uint16_t>(UdpHeader::kSize + flow.payloadSize);
        p.PushFront(udp);
        transportSize = UdpHeader::kSize;
        protocol = kProtocolUdp;
    }
    else
    {
        TcpHeader tcp;
        tcp.srcPort = flow.srcPort;
        tcp.dstPort = flow.dstPort;
        const auto seqNo = static_cast<std::uint32_t>(seq * flow.payloadSize);
        for (int i = 0; i < 4; ++i)
        {
            tcp.fixedFields[i] = static_cast<std::uint8_t>(seqNo >> (24 - 8 * i));
        }
        tcp.fixedFields[8] = 0x50;  // data offset 5
        tcp.fixedFields[9] = 0x18;  // PSH | ACK
        tcp.fixedFields[10] = 0xff; // window
        tcp.fixedFields[11] = 0xff;
        p.PushFront(tcp);
        transportSize = TcpHeader::kSize;
        protocol = kProtocolTcp;
    }
    Ipv4Header ip;
    ip.protocol = protocol;
    ip.totalLength =
        static_cast<std::uint16_t>(Ipv4Header::kSize + transportSize + flow.payloadSize);
    ip.identification = static_cast<std::uint16_t>(seq & 0xffff);
    const bool up = direction == Direction::Uplink;
    ip.src = up ? kUeAddress : kRemoteAddress;
    ip.dst = up ? kRemoteAddress : kUeAddress;
    p.PushFront(ip);
    if (flow.tagged)
    {
        p.SetTag(QosFlowTag{flow.qfi});
    }
    p.flowId = flow.flowId;
    p.sequence = seq;
    p.createdAt = createdAt;
    return p;
}

/// Time to clock `bytes` onto a link draining `rate` bytes/s, rounded to
/// the nearest nanosecond.
inline SimTime
TransmissionTime(std::size_t bytes, double rate)
{
    return SimTime{std::llround(static_cast<double>(bytes) * 1e9 / rate)};
}

/// End-to-end user plane: CBR sources -> SDAP TX -> per-DRB queues on a
/// bottleneck link -> SDAP RX -> per-flow statistics.
///
/// PDCP and everything below it collapse into the queues and the link.
/// With SDAP disabled, packets bypass both entities and share one FIFO.
class UserPlaneSimulator
{
  public:
    explicit UserPlaneSimulator(ScenarioConfig config)
        : cfg_(std::move(config)),
          tx_(QfiDrbTable::Parse(cfg_.qfiToDrbMapping)),
          rx_(QfiDrbTable::Parse(cfg_.RxMapping()))
    {
        cfg_.Validate();
    }

    ScenarioReport Run()
    {
        report_ = ScenarioReport{};
        report_.config = cfg_;
        SetUpQueues();
        SetUpFlows();
        CheckOfferedLoad();
        for (std::size_t k = 0; k < sources_.size(); ++k)
        {
            ScheduleEmission(k);
        }
        sched_.Run();
        Finalize();
        return std::move(report_);
    }

  private:
    struct QueuedPdu
    {
        Bytes wire;
        std::size_t flowIndex;
        std::uint64_t seq;
        SimTime createdAt;
        DrbId drb;
    };

    struct DrbQueue
    {
        DrbId drb;
        std::deque<QueuedPdu> fifo;
        bool busy = false; // partitioned scheduler only
    };

    struct Source
    {
        FlowConfig flow;
        SimTime offset{0};
        std::uint64_t nextSeq = 0;
        std::mt19937_64 rng;
        std::vector<SimTime> latencies;
        FlowStats stats;
    };

    bool PerDrbQueues() const
    {
        return cfg_.sdapEnabled && cfg_.link.scheduler != Scheduler::SharedFifo;
    }

    Qfi EffectiveQfi(const FlowConfig& f) const
    {
        return f.tagged ? f.qfi : Qfi(0);
    }

    void SetUpQueues()
    {
        queues_.clear();
        queueIndex_.clear();
        if (!PerDrbQueues())
        {
            queues_.push_back(DrbQueue{DrbId{0}, {}, false});
            return;
        }
        std::set<DrbId> drbs;
        for (const auto& f : cfg_.flows)
        {
            drbs.insert(tx_.table().Lookup(EffectiveQfi(f)));
        }
        for (DrbId d : drbs)
        {
            queueIndex_[d] = queues_.size();
            queues_.push_back(DrbQueue{d, {}, false});
        }
        if (queues_.empty())
        {
            queues_.push_back(DrbQueue{DrbId{0}, {}, false});
        }
    }

    void SetUpFlows()
    {
        sources_.clear();
        const auto n = static_cast<std::int64_t>(cfg_.flows.size());
        for (std::int64_t k = 0; k < n; ++k)
        {
            Source s;
            s.flow = cfg_.flows[k];
            s.offset = SimTime{s.flow.Period().count() * k / n};
            std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed),
                              static_cast<std::uint32_t>(cfg_.seed >> 32),
                              s.flow.flowId};
            s.rng.seed(seq);
            s.stats.flowId = s.flow.flowId;
            s.stats.qfi = EffectiveQfi(s.flow);
            s.stats.drb = cfg_.sdapEnabled ? tx_.table().Lookup(s.stats.qfi) : DrbId{0};
            sources_.push_back(std::move(s));
        }
    }

    std::size_t WireSize(const FlowConfig& f) const
    {
        return Ipv4Header::kSize +
               (f.transport == Transport::Udp ? UdpHeader::kSize : TcpHeader::kSize) +
               f.payloadSize + (cfg_.sdapEnabled ? SdapHeader::kSize : 0);
    }

    void CheckOfferedLoad()
    {
        double offered = 0;
        for (const auto& f : cfg_.flows)
        {
            offered += f.packetRate * static_cast<double>(WireSize(f));
        }
        if (offered > cfg_.link.serviceRate)
        {
            std::ostringstream os;
            os << "OverloadWarning: offered load " << offered
               << " B/s exceeds service rate " << cfg_.link.serviceRate << " B/s";
            report_.warnings.push_back(os.str());
            report_.eventLog.push_back("t=" + FormatTime(SimTime{0}) + " " + os.str());
        }
    }

    SimTime Nominal(const Source& s, std::uint64_t seq) const
    {
        return s.flow.startTime + s.offset +
               SimTime{s.flow.Period().count() * static_cast<std::int64_t>(seq)};
    }

    void ScheduleEmission(std::size_t k)
    {
        Source& s = sources_[k];
        const SimTime nominal = Nominal(s, s.nextSeq);
        if (nominal >= s.flow.stopTime || nominal >= cfg_.duration)
        {
            return;
        }
        SimTime jitter{0};
        if (cfg_.jitter > SimTime{0})
        {
            jitter = SimTime{static_cast<std::int64_t>(
                s.rng() % static_cast<std::uint64_t>(cfg_.jitter.count() + 1))};
        }
        const std::uint64_t seq = s.nextSeq++;
        sched_.Schedule(nominal + jitter, [this, k, seq] { Emit(k, seq); });
    }

    void Log(const Source& s, std::uint64_t seq, const std::string& text)
    {
        report_.eventLog.push_back("t=" + FormatTime(sched_.Now()) + " flow=" +
                                   std::to_string(s.flow.flowId) + " seq=" +
                                   std::to_string(seq) + " " + text);
    }

    void Emit(std::size_t k, std::uint64_t seq)
    {
        Source& s = sources_[k];
        const SimTime now = sched_.Now();
        Packet packet = BuildFlowPacket(s.flow, cfg_.direction, seq, now);
        ++s.stats.sent;

        QueuedPdu pdu{{}, k, seq, now, DrbId{0}};
        if (cfg_.sdapEnabled)
        {
            const Bytes before = packet.Serialize();
            auto [out, record] = tx_.Process(std::move(packet), now);
            for (const auto& line : TxLogLines(record))
            {
                Log(s, seq, line);
            }
            pdu.wire = out.Serialize();
            pdu.drb = record.drb;

            report_.checks.tagExtraction.Record(record.hadTag == s.flow.tagged &&
                                                record.qfi == EffectiveQfi(s.flow));
            report_.checks.headerInsertion.Record(
                CheckInsertedHeader(before, pdu.wire, s.flow, record.qfi));
            const bool queueOk = !PerDrbQueues() || queueIndex_.count(record.drb) > 0;
            report_.checks.txMapping.Record(record.drb == tx_.table().Lookup(record.qfi) &&
                                            queueOk);
        }
        else
        {
            pdu.wire = packet.Serialize();
        }

        DrbQueue& q = queues_[QueueFor(pdu.drb)];
        if (cfg_.link.perQueueCapacity > 0 && q.fifo.size() >= cfg_.link.perQueueCapacity)
        {
            ++s.stats.lost;
            Log(s, seq, "DROP queue full on DRB " + std::to_string(q.drb.value()));
        }
        else
        {
            q.fifo.push_back(std::move(pdu));
            Kick();
        }
        ScheduleEmission(k);
    }

    static bool CheckInsertedHeader(const Bytes& before,
                                    const Bytes& after,
                                    const FlowConfig& flow,
                                    Qfi qfi)
    {
        const std::size_t transport =
            flow.transport == Transport::Udp ? UdpHeader::kSize : TcpHeader::kSize;
        const std::size_t at = Ipv4Header::kSize + transport;
        if (after.size() != before.size() + 1 || after.size() <= at)
        {
            return false;
        }
        const SdapHeader h = DecodeSdap(after[at]);
        if (h.dc != PduType::Data || h.rqi || h.qfi != qfi)
        {
            return false;
        }
        const auto ipBefore = DecodeIpv4(before);
        const auto ipAfter = DecodeIpv4(after);
        if (ipAfter.totalLength != ipBefore.totalLength + 1)
        {
            return false;
        }
        if (flow.transport == Transport::Udp)
        {
            const auto udpBefore = DecodeUdp(ByteView(before).subspan(Ipv4Header::kSize));
            const auto udpAfter = DecodeUdp(ByteView(after).subspan(Ipv4Header::kSize));
            if (udpAfter.length != udpBefore.length + 1)
            {
                return false;
            }
        }
        // Payload follows the SDAP byte unchanged.
        return std::equal(before.begin() + static_cast<std::ptrdiff_t>(at), before.end(),
                          after.begin() + static_cast<std::ptrdiff_t>(at + 1));
    }

    std::size_t QueueFor(DrbId drb) const
    {
        if (!PerDrbQueues())
        {
            return 0;
        }
        return queueIndex_.at(drb);
    }

    // Starts service on any idle server that has work.
    void Kick()
    {
        if (cfg_.sdapEnabled && cfg_.link.scheduler == Scheduler::PerDrbPartitioned)
        {
            const double share = cfg_.link.serviceRate / static_cast<double>(queues_.size());
            for (std::size_t i = 0; i < queues_.size(); ++i)
            {
                DrbQueue& q = queues_[i];
                if (q.busy || q.fifo.empty())
                {
                    continue;
                }
                q.busy = true;
                QueuedPdu pdu = std::move(q.fifo.front());
                q.fifo.pop_front();
                const SimTime st = TransmissionTime(pdu.wire.size(), share);
                sched_.ScheduleIn(st, [this, i, pdu = std::move(pdu)]() mutable {
                    queues_[i].busy = false;
                    Transmitted(std::move(pdu));
                    Kick();
                });
            }
            return;
        }

        if (serverBusy_)
        {
            return;
        }
        std::size_t pick = queues_.size();
        for (std::size_t d = 0; d < queues_.size(); ++d)
        {
            const std::size_t i = (rrNext_ + d) % queues_.size();
            if (!queues_[i].fifo.empty())
            {
                pick = i;
                break;
            }
        }
        if (pick == queues_.size())
        {
            return;
        }
        rrNext_ = (pick + 1) % queues_.size();
        serverBusy_ = true;
        QueuedPdu pdu = std::move(queues_[pick].fifo.front());
        queues_[pick].fifo.pop_front();
        const SimTime st = TransmissionTime(pdu.wire.size(), cfg_.link.serviceRate);
        sched_.ScheduleIn(st, [this, pdu = std::move(pdu)]() mutable {
            serverBusy_ = false;
            Transmitted(std::move(pdu));
            Kick();
        });
    }

    void Transmitted(QueuedPdu pdu)
    {
        sched_.ScheduleIn(cfg_.link.propagationDelay,
                          [this, pdu = std::move(pdu)]() mutable { Deliver(std::move(pdu)); });
    }

    void Deliver(QueuedPdu pdu)
    {
        Source& s = sources_[pdu.flowIndex];
        const SimTime now = sched_.Now();
        const Bytes original =
            BuildFlowPacket(s.flow, cfg_.direction, pdu.seq, pdu.createdAt).Serialize();

        Bytes restored;
        bool intact = true;
        if (cfg_.sdapEnabled)
        {
            try
            {
                Packet wire = Deserialize(pdu.wire, StackLayout::IpTransportSdap);
                auto [out, record] = rx_.Process(std::move(wire), now, pdu.drb);
                for (const auto& line : RxLogLines(record))
                {
                    Log(s, pdu.seq, line);
                }
                if (record.drbMismatch)
                {
                    ++s.stats.drbMismatches;
                    Log(s, pdu.seq,
                        "DRB mismatch: travelled on DRB " + std::to_string(pdu.drb.value()) +
                            ", RX table maps QFI " + std::to_string(record.qfi.value()) +
                            " to DRB " + std::to_string(record.drb.value()));
                }
                report_.checks.rxQfiExtraction.Record(record.qfi == EffectiveQfi(s.flow));
                report_.checks.drbVerification.Record(!record.drbMismatch);
                const auto* tag = out.FindTag<QosFlowTag>();
                const bool noSdapLeft = out.chunks().size() == 2;
                restored = out.Serialize();
                report_.checks.headerRemoval.Record(noSdapLeft && restored == original &&
                                                    tag && tag->qfi == record.qfi);
            }
            catch (const Error& e)
            {
                intact = false;
                Log(s, pdu.seq, std::string("RX error: ") + e.what());
            }
        }
        else
        {
            restored = std::move(pdu.wire);
        }

        intact = intact && restored == original;
        report_.checks.integrity.Record(intact);
        if (!intact)
        {
            ++s.stats.integrityFailures;
        }
        ++s.stats.received;
        s.latencies.push_back(now - pdu.createdAt);
    }

    void Finalize()
    {
        for (auto& s : sources_)
        {
            s.stats.latency = SummarizeLatencies(s.latencies);
            report_.flows.push_back(s.stats);
        }
    }

    ScenarioConfig cfg_;
    TxSdapEntity tx_;
    RxSdapEntity rx_;
    EventScheduler sched_;
    std::vector<DrbQueue> queues_;
    std::map<DrbId, std::size_t> queueIndex_;
    std::vector<Source> sources_;
    bool serverBusy_ = false;
    std::size_t rrNext_ = 0;
    ScenarioReport report_;
};

inline ScenarioReport
RunScenario(const ScenarioConfig& config)
{
    return UserPlaneSimulator(config).Run();
}

} // namespace sdap
