/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#include "sdapsim/packet.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sdap;

namespace
{

Packet
UdpPacket()
{
    Packet p(Bytes{1, 2, 3, 4});
    p.PushFront(UdpHeader{1000, 2000, 12, 0});
    return p;
}

} // namespace

TEST(Packet, PushFrontMakesOutermost)
{
    Packet p = UdpPacket();
    p.PushFront(SdapHeader{PduType::Data, false, Qfi(5)});
    ASSERT_EQ(p.chunks().size(), 2u);
    EXPECT_TRUE(std::holds_alternative<SdapHeader>(p.chunks()[0]));
    EXPECT_TRUE(std::holds_alternative<UdpHeader>(p.chunks()[1]));
    EXPECT_EQ(p.payload(), (Bytes{1, 2, 3, 4}));
}

TEST(Packet, PushOrderSerializesOutermostFirst)
{
    Packet p(Bytes{0xAA});
    p.PushFront(SdapHeader{PduType::Data, false, Qfi(1)}); // A
    p.PushFront(SdapHeader{PduType::Control, false, Qfi(2)}); // B
    EXPECT_EQ(p.Serialize(), (Bytes{0x02, 0x81, 0xAA}));
}

TEST(Packet, PopReturnsWhatWasPushed)
{
    Packet p = UdpPacket();
    const Bytes before = p.Serialize();
    const Chunk c = SdapHeader{PduType::Data, true, Qfi(7)};
    p.PushFront(c);
    EXPECT_EQ(p.PopFront(), c);
    EXPECT_EQ(p.Serialize(), before);
}

TEST(Packet, PopFrontOfIpStack)
{
    Packet p = UdpPacket();
    p.PushFront(Ipv4Header{});
    Chunk outer = p.PopFront();
    EXPECT_TRUE(std::holds_alternative<Ipv4Header>(outer));
    EXPECT_TRUE(std::holds_alternative<UdpHeader>(p.chunks().front()));
}

TEST(Packet, PopEmptyThrows)
{
    Packet p(Bytes{1});
    try
    {
        p.PopFront();
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::EmptyPacket);
    }
}

TEST(Packet, TagsAreOutOfBand)
{
    Packet p = UdpPacket();
    EXPECT_EQ(p.FindTag<QosFlowTag>(), nullptr);
    const Bytes before = p.Serialize();

    p.SetTag(QosFlowTag{Qfi(5)});
    ASSERT_NE(p.FindTag<QosFlowTag>(), nullptr);
    EXPECT_EQ(p.FindTag<QosFlowTag>()->qfi, Qfi(5));
    EXPECT_EQ(p.Serialize(), before);

    p.SetTag(QosFlowTag{Qfi(1)});
    p.SetTag(QosFlowTag{Qfi(9)});
    EXPECT_EQ(p.FindTag<QosFlowTag>()->qfi, Qfi(9));

    EXPECT_TRUE(p.RemoveTag<QosFlowTag>());
    EXPECT_EQ(p.FindTag<QosFlowTag>(), nullptr);
    EXPECT_EQ(p.Serialize(), before);
}

TEST(Packet, TagSurvivesChunkOperations)
{
    Packet p = UdpPacket();
    p.SetTag(QosFlowTag{Qfi(63)});
    p.PushFront(Ipv4Header{});
    p.PopFront();
    p.PopFront();
    EXPECT_EQ(p.FindTag<QosFlowTag>()->qfi, Qfi(63));
}

TEST(Packet, SerializedSizeIsSumOfParts)
{
    Packet p = UdpPacket();
    p.PushFront(Ipv4Header{});
    EXPECT_EQ(p.SerializedSize(), 20u + 8u + 4u);
    EXPECT_EQ(p.Serialize().size(), p.SerializedSize());
}

TEST(PacketProperty, StackLawsOverRandomPackets)
{
    std::mt19937_64 rng(0x51ACC);
    for (int i = 0; i < 500; ++i)
    {
        Packet p = gen::RandomPacket(rng);
        const Bytes original = p.Serialize();
        ASSERT_EQ(original.size(), p.SerializedSize());

        // Peel every chunk off, then put them back.
        std::vector<Chunk> popped;
        while (!p.chunks().empty())
        {
            popped.push_back(p.PopFront());
        }
        for (auto it = popped.rbegin(); it != popped.rend(); ++it)
        {
            p.PushFront(*it);
        }
        EXPECT_EQ(p.Serialize(), original);
    }
}

TEST(PacketProperty, DeserializeRoundtripInBothLayouts)
{
    std::mt19937_64 rng(0xD35E);
    for (int i = 0; i < 500; ++i)
    {
        Packet p = gen::RandomPacket(rng);
        const Bytes plain = p.Serialize();
        Packet back = Deserialize(plain, StackLayout::IpTransport);
        EXPECT_EQ(back.Serialize(), plain);
        EXPECT_EQ(back.chunks(), p.chunks());
        EXPECT_EQ(back.FindTag<QosFlowTag>(), nullptr);

        // Same stack with an SDAP byte between transport and payload.
        Chunk ip = p.PopFront();
        Chunk transport = p.PopFront();
        p.PushFront(SdapHeader{PduType::Data, false, Qfi(static_cast<int>(rng() % 64))});
        p.PushFront(transport);
        p.PushFront(ip);
        const Bytes withSdap = p.Serialize();
        Packet back2 = Deserialize(withSdap, StackLayout::IpTransportSdap);
        EXPECT_EQ(back2.Serialize(), withSdap);
        EXPECT_EQ(back2.chunks(), p.chunks());
    }
}

TEST(Packet, FlowPayloadIsDeterministicAndDistinct)
{
    EXPECT_EQ(MakeFlowPayload(1, 7, 160), MakeFlowPayload(1, 7, 160));
    EXPECT_NE(MakeFlowPayload(1, 7, 160), MakeFlowPayload(1, 8, 160));
    EXPECT_NE(MakeFlowPayload(1, 7, 160), MakeFlowPayload(2, 7, 160));
    EXPECT_EQ(MakeFlowPayload(3, 3, 13).size(), 13u);
}
