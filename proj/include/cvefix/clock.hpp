// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <mutex>
#include <vector>

#include "cvefix/time.hpp"

namespace cvefix {

/// Wall-clock abstraction so rate limiting and cache staleness can be driven by a fake clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Timestamp now() = 0;
    virtual void sleep_until(Timestamp when) = 0;
};

class SystemClock final : public Clock {
public:
    Timestamp now() override;
    void sleep_until(Timestamp when) override;
};

/// Deterministic clock: sleeping advances time instantly and is recorded.
class ManualClock final : public Clock {
public:
    explicit ManualClock(Timestamp start) : now_(start) {}

    Timestamp now() override {
        std::lock_guard lock(mutex_);
        return now_;
    }

    void sleep_until(Timestamp when) override {
        std::lock_guard lock(mutex_);
        sleeps_.push_back(when);
        if (when > now_) {
            now_ = when;
        }
    }

    void advance(std::chrono::seconds by) {
        std::lock_guard lock(mutex_);
        now_ += by;
    }

    std::vector<Timestamp> sleeps() const {
        std::lock_guard lock(mutex_);
        return sleeps_;
    }

private:
    mutable std::mutex mutex_;
    Timestamp now_;
    std::vector<Timestamp> sleeps_;
};

}  // namespace cvefix
