/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include "sdapsim/types.hpp"

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sdap
{

/// Single-threaded discrete-event loop. Events at equal times run in
/// insertion order.
class EventScheduler
{
  public:
    using Action = std::function<void()>;

    void Schedule(SimTime at, Action action)
    {
        if (at < now_)
        {
            throw std::logic_error("event scheduled in the past");
        }
        queue_.push(Event{at, nextSeq_++, std::move(action)});
    }

    void ScheduleIn(SimTime delay, Action action)
    {
        Schedule(now_ + delay, std::move(action));
    }

    /// Runs until no events remain.
    void Run()
    {
        while (!queue_.empty())
        {
            Event ev = queue_.top();
            queue_.pop();
            now_ = ev.at;
            ev.action();
        }
    }

    SimTime Now() const noexcept
    {
        return now_;
    }

    bool Empty() const noexcept
    {
        return queue_.empty();
    }

  private:
    struct Event
    {
        SimTime at;
        std::uint64_t seq;
        Action action;
    };

    struct Later
    {
        bool operator()(const Event& a, const Event& b) const noexcept
        {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    SimTime now_{0};
    std::uint64_t nextSeq_ = 0;
};

} // namespace sdap
