/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/packet.hpp"
#include "sdapsim/qfi_drb_map.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace sdap::gen
{

/// Random pipeline-legal [IP | UDP/TCP | payload] packet, optionally tagged.
inline Packet
RandomPacket(std::mt19937_64& rng, std::size_t minPayload = 1, std::size_t maxPayload = 1400)
{
    auto u16 = [&] { return static_cast<std::uint16_t>(rng()); };
    std::uniform_int_distribution<std::size_t> size(minPayload, maxPayload);
    Bytes payload(size(rng));
    for (auto& b : payload)
    {
        b = static_cast<std::uint8_t>(rng());
    }
    Packet p(std::move(payload));
    const bool udp = rng() & 1;
    std::size_t transportSize = 0;
    if (udp)
    {
        UdpHeader h{u16(), u16(), static_cast<std::uint16_t>(UdpHeader::kSize + p.payload().size()),
                    u16()};
        p.PushFront(h);
        transportSize = UdpHeader::kSize;
    }
    else
    {
        TcpHeader h;
        h.srcPort = u16();
        h.dstPort = u16();
        for (auto& b : h.fixedFields)
        {
            b = static_cast<std::uint8_t>(rng());
        }
        h.checksum = u16();
        h.urgentPointer = u16();
        p.PushFront(h);
        transportSize = TcpHeader::kSize;
    }
    Ipv4Header ip;
    ip.tos = static_cast<std::uint8_t>(rng());
    ip.totalLength =
        static_cast<std::uint16_t>(Ipv4Header::kSize + transportSize + p.payload().size());
    ip.identification = u16();
    ip.flagsFragment = u16();
    ip.ttl = static_cast<std::uint8_t>(rng());
    ip.protocol = udp ? kProtocolUdp : kProtocolTcp;
    ip.checksum = u16();
    ip.src = static_cast<std::uint32_t>(rng());
    ip.dst = static_cast<std::uint32_t>(rng());
    p.PushFront(ip);
    if (rng() % 8 != 0)
    {
        p.SetTag(QosFlowTag{Qfi(static_cast<int>(rng() % 64))});
    }
    return p;
}

/// Random mapping string: up to 64 distinct QFIs mapped to DRBs 0..7.
inline std::string
RandomMappingText(std::mt19937_64& rng)
{
    std::string text;
    const int entries = static_cast<int>(rng() % 65);
    std::vector<int> qfis(64);
    for (int i = 0; i < 64; ++i)
    {
        qfis[i] = i;
    }
    std::shuffle(qfis.begin(), qfis.end(), rng);
    for (int i = 0; i < entries; ++i)
    {
        if (!text.empty())
        {
            text += ';';
        }
        text += std::to_string(qfis[i]) + ':' + std::to_string(rng() % 8);
    }
    return text;
}

} // namespace sdap::gen
