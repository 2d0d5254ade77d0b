/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"
#include "sdapsim/packet.hpp"
#include "sdapsim/pdu_codec.hpp"
#include "sdapsim/qfi_drb_map.hpp"
#include "sdapsim/types.hpp"

#include <array>
#include <limits>
#include <string>
#include <utility>
#include <variant>

namespace sdap
{

struct TxRecord
{
    Qfi qfi{};
    DrbId drb{};
    bool hadTag = false;
    SimTime timestamp{0};

    friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

namespace detail
{

/// Pops the outer IPv4 and transport headers, checking that they form a
/// UDP or TCP stack.
inline std::pair<Ipv4Header, TransportHeader>
PopIpAndTransport(Packet& packet)
{
    if (packet.chunks().empty() || !std::holds_alternative<Ipv4Header>(packet.chunks().front()))
    {
        throw Error(ErrorCode::MalformedStack, "outermost chunk is not an IPv4 header");
    }
    const auto& ipFront = std::get<Ipv4Header>(packet.chunks().front());
    if (ipFront.protocol != kProtocolUdp && ipFront.protocol != kProtocolTcp)
    {
        throw Error(ErrorCode::UnsupportedProtocol,
                    "IP protocol " + std::to_string(ipFront.protocol) + " is not UDP or TCP");
    }
    Ipv4Header ip = packet.PopFrontAs<Ipv4Header>();
    const bool udp = ip.protocol == kProtocolUdp;
    if (packet.chunks().empty() ||
        !(udp ? std::holds_alternative<UdpHeader>(packet.chunks().front())
              : std::holds_alternative<TcpHeader>(packet.chunks().front())))
    {
        throw Error(ErrorCode::MalformedStack, "transport chunk does not match IP protocol " +
                                                   std::to_string(ip.protocol));
    }
    if (udp)
    {
        return {ip, packet.PopFrontAs<UdpHeader>()};
    }
    return {ip, packet.PopFrontAs<TcpHeader>()};
}

inline std::uint16_t
GrowLength(std::uint16_t value, const char* field)
{
    if (value == std::numeric_limits<std::uint16_t>::max())
    {
        throw Error(ErrorCode::MalformedHeader, std::string(field) + " would exceed 65535");
    }
    return static_cast<std::uint16_t>(value + 1);
}

} // namespace detail

/// Transmit-side SDAP entity.
///
/// Takes an [IP | UDP/TCP | payload] packet and returns
/// [IP | UDP/TCP | SDAP | payload]: the QFI comes from the packet's
/// QosFlowTag (0 when untagged), the SDAP header is a data PDU with RQI
/// cleared, and the UDP length and IP total length grow by the one
/// header byte. The logical DRB is looked up but the packet is not routed;
/// that is left to the caller.
class TxSdapEntity
{
  public:
    struct Result
    {
        Packet packet;
        TxRecord record;
    };

    explicit TxSdapEntity(QfiDrbTable table)
        : table_(std::move(table))
    {
    }

    Result Process(Packet packet, SimTime now = SimTime{0}) const
    {
        TxRecord record;
        record.timestamp = now;
        if (const auto* tag = packet.FindTag<QosFlowTag>())
        {
            record.qfi = tag->qfi;
            record.hadTag = true;
        }

        auto [ip, transport] = detail::PopIpAndTransport(packet);

        SdapHeader sdap;
        sdap.dc = PduType::Data;
        sdap.rqi = false;
        sdap.qfi = record.qfi;
        packet.PushFront(sdap);

        if (auto* udp = std::get_if<UdpHeader>(&transport))
        {
            udp->length = detail::GrowLength(udp->length, "UDP length");
        }
        ip.totalLength = detail::GrowLength(ip.totalLength, "IP total length");
        packet.PushFront(ToChunk(transport));
        packet.PushFront(ip);

        record.drb = table_.Lookup(record.qfi);
        return {std::move(packet), record};
    }

    const QfiDrbTable& table() const noexcept
    {
        return table_;
    }

  private:
    QfiDrbTable table_;
};

inline std::array<std::string, 3>
TxLogLines(const TxRecord& r)
{
    const std::string q = std::to_string(r.qfi.value());
    return {
        r.hadTag ? "[TX] QFI = " + q + " extracted from QosTagReq;"
                 : std::string("[TX] QFI = 0 assumed (no QosTagReq);"),
        "[TX] Inserted SDAP header with QFI = " + q + ";",
        "[TX] Selected DRB = " + std::to_string(r.drb.value()) + " for QFI = " + q + ".",
    };
}

} // namespace sdap
