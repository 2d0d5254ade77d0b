/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"
#include "sdapsim/types.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sdap
{

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

constexpr std::uint8_t kProtocolTcp = 6;
constexpr std::uint8_t kProtocolUdp = 17;

namespace detail
{

inline void
Require(ByteView in, std::size_t n, const char* what)
{
    if (in.size() < n)
    {
        throw Error(ErrorCode::InsufficientBytes,
                    std::string(what) + " needs " + std::to_string(n) + " bytes, got " +
                        std::to_string(in.size()));
    }
}

inline void
PutU16(Bytes& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void
PutU32(Bytes& out, std::uint32_t v)
{
    PutU16(out, static_cast<std::uint16_t>(v >> 16));
    PutU16(out, static_cast<std::uint16_t>(v & 0xffff));
}

inline std::uint16_t
GetU16(ByteView in, std::size_t at)
{
    return static_cast<std::uint16_t>((in[at] << 8) | in[at + 1]);
}

inline std::uint32_t
GetU32(ByteView in, std::size_t at)
{
    return (std::uint32_t{GetU16(in, at)} << 16) | GetU16(in, at + 2);
}

} // namespace detail

/*
 * SDAP header
 *
 *   7     6     5 4 3 2 1 0
 * +-----+-----+-------------+
 * | D/C | RQI |     QFI     |
 * +-----+-----+-------------+
 *
 * D/C = 1 marks a data PDU.
 */

enum class PduType : std::uint8_t
{
    Control = 0,
    Data = 1,
};

struct SdapHeader
{
    static constexpr std::size_t kSize = 1;

    PduType dc = PduType::Data;
    bool rqi = false;
    Qfi qfi{};

    friend constexpr bool operator==(const SdapHeader&, const SdapHeader&) = default;
};

constexpr std::uint8_t
EncodeSdap(const SdapHeader& h) noexcept
{
    return static_cast<std::uint8_t>((h.dc == PduType::Data ? 0x80 : 0x00) |
                                     (h.rqi ? 0x40 : 0x00) | (h.qfi.value() & 0x3f));
}

/// Every byte value is a valid SDAP header.
constexpr SdapHeader
DecodeSdap(std::uint8_t b) noexcept
{
    SdapHeader h;
    h.dc = (b & 0x80) ? PduType::Data : PduType::Control;
    h.rqi = (b & 0x40) != 0;
    h.qfi = Qfi(b & 0x3f);
    return h;
}

inline SdapHeader
DecodeSdap(ByteView in)
{
    detail::Require(in, SdapHeader::kSize, "SDAP header");
    return DecodeSdap(in[0]);
}

inline void
Encode(const SdapHeader& h, Bytes& out)
{
    out.push_back(EncodeSdap(h));
}

/// IPv4 header without options (IHL = 5). The checksum is carried verbatim.
struct Ipv4Header
{
    static constexpr std::size_t kSize = 20;

    std::uint8_t tos = 0;
    std::uint16_t totalLength = kSize;
    std::uint16_t identification = 0;
    std::uint16_t flagsFragment = 0;
    std::uint8_t ttl = 64;
    std::uint8_t protocol = kProtocolUdp;
    std::uint16_t checksum = 0;
    std::uint32_t src = 0;
    std::uint32_t dst = 0;

    friend constexpr bool operator==(const Ipv4Header&, const Ipv4Header&) = default;
};

inline void
Encode(const Ipv4Header& h, Bytes& out)
{
    out.push_back(0x45);
    out.push_back(h.tos);
    detail::PutU16(out, h.totalLength);
    detail::PutU16(out, h.identification);
    detail::PutU16(out, h.flagsFragment);
    out.push_back(h.ttl);
    out.push_back(h.protocol);
    detail::PutU16(out, h.checksum);
    detail::PutU32(out, h.src);
    detail::PutU32(out, h.dst);
}

inline Ipv4Header
DecodeIpv4(ByteView in)
{
    detail::Require(in, Ipv4Header::kSize, "IPv4 header");
    if (in[0] != 0x45)
    {
        throw Error(ErrorCode::MalformedHeader,
                    "IPv4 version/IHL byte " + std::to_string(in[0]) + " is not 0x45");
    }
    Ipv4Header h;
    h.tos = in[1];
    h.totalLength = detail::GetU16(in, 2);
    h.identification = detail::GetU16(in, 4);
    h.flagsFragment = detail::GetU16(in, 6);
    h.ttl = in[8];
    h.protocol = in[9];
    h.checksum = detail::GetU16(in, 10);
    h.src = detail::GetU32(in, 12);
    h.dst = detail::GetU32(in, 16);
    return h;
}

struct UdpHeader
{
    static constexpr std::size_t kSize = 8;

    std::uint16_t srcPort = 0;
    std::uint16_t dstPort = 0;
    std::uint16_t length = kSize; // header + payload
    std::uint16_t checksum = 0;

    friend constexpr bool operator==(const UdpHeader&, const UdpHeader&) = default;
};

/// TCP header without options. Sequence/ack/offset-flags/window travel as
/// twelve uninterpreted bytes.
struct TcpHeader
{
    static constexpr std::size_t kSize = 20;

    std::uint16_t srcPort = 0;
    std::uint16_t dstPort = 0;
    std::array<std::uint8_t, 12> fixedFields{};
    std::uint16_t checksum = 0;
    std::uint16_t urgentPointer = 0;

    friend constexpr bool operator==(const TcpHeader&, const TcpHeader&) = default;
};

using TransportHeader = std::variant<UdpHeader, TcpHeader>;

inline void
Encode(const UdpHeader& h, Bytes& out)
{
    detail::PutU16(out, h.srcPort);
    detail::PutU16(out, h.dstPort);
    detail::PutU16(out, h.length);
    detail::PutU16(out, h.checksum);
}

inline void
Encode(const TcpHeader& h, Bytes& out)
{
    detail::PutU16(out, h.srcPort);
    detail::PutU16(out, h.dstPort);
    out.insert(out.end(), h.fixedFields.begin(), h.fixedFields.end());
    detail::PutU16(out, h.checksum);
    detail::PutU16(out, h.urgentPointer);
}

inline void
Encode(const TransportHeader& h, Bytes& out)
{
    std::visit([&out](const auto& t) { Encode(t, out); }, h);
}

inline UdpHeader
DecodeUdp(ByteView in)
{
    detail::Require(in, UdpHeader::kSize, "UDP header");
    UdpHeader h;
    h.srcPort = detail::GetU16(in, 0);
    h.dstPort = detail::GetU16(in, 2);
    h.length = detail::GetU16(in, 4);
    h.checksum = detail::GetU16(in, 6);
    return h;
}

inline TcpHeader
DecodeTcp(ByteView in)
{
    detail::Require(in, TcpHeader::kSize, "TCP header");
    TcpHeader h;
    h.srcPort = detail::GetU16(in, 0);
    h.dstPort = detail::GetU16(in, 2);
    for (std::size_t i = 0; i < h.fixedFields.size(); ++i)
    {
        h.fixedFields[i] = in[4 + i];
    }
    h.checksum = detail::GetU16(in, 16);
    h.urgentPointer = detail::GetU16(in, 18);
    return h;
}

/// Decodes the transport header selected by the IPv4 protocol number.
inline TransportHeader
DecodeTransport(std::uint8_t protocol, ByteView in)
{
    switch (protocol)
    {
    case kProtocolUdp:
        return DecodeUdp(in);
    case kProtocolTcp:
        return DecodeTcp(in);
    default:
        throw Error(ErrorCode::UnsupportedProtocol,
                    "IP protocol " + std::to_string(protocol) + " is not UDP or TCP");
    }
}

inline std::size_t
EncodedSize(const TransportHeader& h) noexcept
{
    return std::holds_alternative<UdpHeader>(h) ? UdpHeader::kSize : TcpHeader::kSize;
}

inline std::uint8_t
ProtocolOf(const TransportHeader& h) noexcept
{
    return std::holds_alternative<UdpHeader>(h) ? kProtocolUdp : kProtocolTcp;
}

} // namespace sdap
