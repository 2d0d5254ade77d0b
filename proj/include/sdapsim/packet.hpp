/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/error.hpp"
#include "sdapsim/pdu_codec.hpp"
#include "sdapsim/types.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>

namespace sdap
{

/// Requested QoS flow of a packet. Travels out of band and is never
/// serialized.
struct QosFlowTag
{
    Qfi qfi{};

    friend constexpr bool operator==(const QosFlowTag&, const QosFlowTag&) = default;
};

/// At most one tag per kind. Kinds are fixed at compile time.
template <typename... Tags>
class TagSet
{
  public:
    template <typename T>
    void Set(T tag)
    {
        std::get<std::optional<T>>(tags_) = std::move(tag);
    }

    template <typename T>
    const T* Find() const
    {
        const auto& slot = std::get<std::optional<T>>(tags_);
        return slot ? &*slot : nullptr;
    }

    template <typename T>
    bool Remove()
    {
        auto& slot = std::get<std::optional<T>>(tags_);
        bool had = slot.has_value();
        slot.reset();
        return had;
    }

    friend bool operator==(const TagSet&, const TagSet&) = default;

  private:
    std::tuple<std::optional<Tags>...> tags_;
};

using Chunk = std::variant<Ipv4Header, UdpHeader, TcpHeader, SdapHeader>;

inline std::size_t
EncodedSize(const Chunk& c) noexcept
{
    return std::visit([](const auto& h) { return std::decay_t<decltype(h)>::kSize; }, c);
}

inline void
Encode(const Chunk& c, Bytes& out)
{
    std::visit([&out](const auto& h) { Encode(h, out); }, c);
}

inline Chunk
ToChunk(const TransportHeader& t)
{
    return std::visit([](const auto& h) -> Chunk { return h; }, t);
}

/// A header stack over a payload. Front of the stack is the outermost header.
class Packet
{
  public:
    using Tags = TagSet<QosFlowTag>;

    Packet() = default;

    explicit Packet(Bytes payload)
        : payload_(std::move(payload))
    {
    }

    void PushFront(Chunk chunk)
    {
        chunks_.push_front(std::move(chunk));
    }

    Chunk PopFront()
    {
        if (chunks_.empty())
        {
            throw Error(ErrorCode::EmptyPacket, "no header chunk to pop");
        }
        Chunk c = std::move(chunks_.front());
        chunks_.pop_front();
        return c;
    }

    /// Pops the front chunk, requiring it to hold a T.
    template <typename T>
    T PopFrontAs()
    {
        if (chunks_.empty() || !std::holds_alternative<T>(chunks_.front()))
        {
            throw Error(ErrorCode::MalformedStack, "unexpected chunk at packet front");
        }
        return std::get<T>(PopFront());
    }

    const std::deque<Chunk>& chunks() const noexcept
    {
        return chunks_;
    }

    const Bytes& payload() const noexcept
    {
        return payload_;
    }

    template <typename T>
    void SetTag(T tag)
    {
        tags_.Set(std::move(tag));
    }

    template <typename T>
    const T* FindTag() const
    {
        return tags_.template Find<T>();
    }

    template <typename T>
    bool RemoveTag()
    {
        return tags_.template Remove<T>();
    }

    std::size_t SerializedSize() const noexcept
    {
        std::size_t n = payload_.size();
        for (const auto& c : chunks_)
        {
            n += EncodedSize(c);
        }
        return n;
    }

    Bytes Serialize() const
    {
        Bytes out;
        out.reserve(SerializedSize());
        for (const auto& c : chunks_)
        {
            Encode(c, out);
        }
        out.insert(out.end(), payload_.begin(), payload_.end());
        return out;
    }

    // Simulator metadata. Not part of the byte stream.
    SimTime createdAt{0};
    std::uint32_t flowId = 0;
    std::uint64_t sequence = 0;

  private:
    std::deque<Chunk> chunks_;
    Bytes payload_;
    Tags tags_;
};

/// Header layouts the pipeline can produce.
enum class StackLayout
{
    IpTransport,     // IP | UDP/TCP | payload
    IpTransportSdap, // IP | UDP/TCP | SDAP | payload
};

/// Rebuilds a packet from its byte stream. Tags and metadata are not
/// recoverable from bytes and start empty.
inline Packet
Deserialize(ByteView bytes, StackLayout layout)
{
    Ipv4Header ip = DecodeIpv4(bytes);
    std::size_t offset = Ipv4Header::kSize;
    TransportHeader transport = DecodeTransport(ip.protocol, bytes.subspan(offset));
    offset += EncodedSize(transport);
    std::optional<SdapHeader> sdap;
    if (layout == StackLayout::IpTransportSdap)
    {
        sdap = DecodeSdap(bytes.subspan(offset));
        offset += SdapHeader::kSize;
    }
    Packet p(Bytes(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end()));
    if (sdap)
    {
        p.PushFront(*sdap);
    }
    p.PushFront(ToChunk(transport));
    p.PushFront(ip);
    return p;
}

/// Deterministic payload content for (flow, sequence), used to detect
/// corruption end to end.
inline Bytes
MakeFlowPayload(std::uint32_t flowId, std::uint64_t sequence, std::size_t size)
{
    // splitmix64
    std::uint64_t state = (std::uint64_t{flowId} << 40) ^ sequence ^ 0x5DA95DA95DA95DA9ULL;
    Bytes out(size);
    std::size_t i = 0;
    while (i < size)
    {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        for (int b = 0; b < 8 && i < size; ++b, ++i)
        {
            out[i] = static_cast<std::uint8_t>(z >> (8 * b));
        }
    }
    return out;
}

} // namespace sdap
