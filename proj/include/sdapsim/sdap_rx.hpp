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
#include "sdapsim/sdap_tx.hpp"
#include "sdapsim/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace sdap
{

struct RxRecord
{
    Qfi qfi{};
    DrbId drb{};
    SimTime timestamp{0};
    bool drbMismatch = false;

    friend bool operator==(const RxRecord&, const RxRecord&) = default;
};

/// Receive-side SDAP entity; the inverse of TxSdapEntity.
///
/// When the caller knows which DRB the packet actually travelled on, pass it
/// as `carriedOn`. A disagreement with the local table is counted, logged
/// by the caller, and the packet is still delivered.
class RxSdapEntity
{
  public:
    struct Result
    {
        Packet packet;
        RxRecord record;
    };

    explicit RxSdapEntity(QfiDrbTable table)
        : table_(std::move(table))
    {
    }

    Result Process(Packet packet,
                   SimTime now = SimTime{0},
                   std::optional<DrbId> carriedOn = std::nullopt)
    {
        auto [ip, transport] = detail::PopIpAndTransport(packet);
        if (packet.chunks().empty() || !std::holds_alternative<SdapHeader>(packet.chunks().front()))
        {
            throw Error(ErrorCode::MalformedStack, "no SDAP header after transport header");
        }
        const SdapHeader sdap = packet.PopFrontAs<SdapHeader>();

        if (auto* udp = std::get_if<UdpHeader>(&transport))
        {
            if (udp->length < UdpHeader::kSize + SdapHeader::kSize)
            {
                throw Error(ErrorCode::LengthUnderflow,
                            "UDP length " + std::to_string(udp->length) +
                                " cannot lose the SDAP byte");
            }
            --udp->length;
        }
        const std::size_t ipMin = Ipv4Header::kSize + EncodedSize(transport);
        if (ip.totalLength < ipMin + SdapHeader::kSize)
        {
            throw Error(ErrorCode::LengthUnderflow,
                        "IP total length " + std::to_string(ip.totalLength) +
                            " cannot lose the SDAP byte");
        }
        --ip.totalLength;
        packet.PushFront(ToChunk(transport));
        packet.PushFront(ip);

        RxRecord record;
        record.qfi = sdap.qfi;
        record.drb = table_.Lookup(sdap.qfi);
        record.timestamp = now;
        if (carriedOn && *carriedOn != record.drb)
        {
            record.drbMismatch = true;
            ++drbMismatches_;
        }
        packet.SetTag(QosFlowTag{sdap.qfi});
        return {std::move(packet), record};
    }

    std::uint64_t drbMismatches() const noexcept
    {
        return drbMismatches_;
    }

    const QfiDrbTable& table() const noexcept
    {
        return table_;
    }

  private:
    QfiDrbTable table_;
    std::uint64_t drbMismatches_ = 0;
};

inline std::array<std::string, 2>
RxLogLines(const RxRecord& r)
{
    return {
        "[RX] Extracted QFI = " + std::to_string(r.qfi.value()),
        "[RX] Mapped DRB = " + std::to_string(r.drb.value()),
    };
}

} // namespace sdap
