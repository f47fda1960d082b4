// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/time.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace cvefix {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    void skip() { ++pos_; }

    bool expect(char c) {
        if (peek() != c) {
            return false;
        }
        ++pos_;
        return true;
    }

    std::optional<int> digits(std::size_t count) {
        if (pos_ + count > text_.size()) {
            return std::nullopt;
        }
        int value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const char c = text_[pos_ + i];
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return std::nullopt;
            }
            value = value * 10 + (c - '0');
        }
        pos_ += count;
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    Cursor in(text);
    const auto y = in.digits(4);
    if (!y || !in.expect('-')) {
        return std::nullopt;
    }
    const auto mo = in.digits(2);
    if (!mo || !in.expect('-')) {
        return std::nullopt;
    }
    const auto d = in.digits(2);
    if (!d) {
        return std::nullopt;
    }
    const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                             day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    int hh = 0;
    int mm = 0;
    int ss = 0;
    if (!in.done()) {
        if (!in.expect('T') && !in.expect(' ')) {
            return std::nullopt;
        }
        const auto h = in.digits(2);
        if (!h || !in.expect(':')) {
            return std::nullopt;
        }
        const auto m = in.digits(2);
        if (!m) {
            return std::nullopt;
        }
        hh = *h;
        mm = *m;
        if (in.expect(':')) {
            const auto s = in.digits(2);
            if (!s) {
                return std::nullopt;
            }
            ss = *s;
            if (in.expect('.')) {
                while (std::isdigit(static_cast<unsigned char>(in.peek()))) {
                    in.skip();
                }
            }
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) {
        return std::nullopt;
    }
    int offset_minutes = 0;
    if (!in.done()) {
        const char sign = in.peek();
        if (sign == 'Z' || sign == 'z') {
            in.skip();
        } else if (sign == '+' || sign == '-') {
            in.skip();
            const auto oh = in.digits(2);
            if (!oh) {
                return std::nullopt;
            }
            in.expect(':');
            const auto om = in.digits(2);
            if (!om) {
                return std::nullopt;
            }
            offset_minutes = (*oh * 60 + *om) * (sign == '-' ? -1 : 1);
        } else {
            return std::nullopt;
        }
    }
    if (!in.done()) {
        return std::nullopt;
    }
    const auto local = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
    return time_point_cast<seconds>(local - minutes{offset_minutes});
}

std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto day_point = floor<days>(ts);
    const year_month_day ymd{day_point};
    const hh_mm_ss hms{ts - day_point};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

long long days_between(Timestamp from, Timestamp to) {
    // Integer division truncates toward zero.
    return (to - from).count() / 86400;
}

}  // namespace cvefix

#include <thread>

#include "cvefix/clock.hpp"

namespace cvefix {

Timestamp SystemClock::now() {
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

void SystemClock::sleep_until(Timestamp when) { std::this_thread::sleep_until(when); }

}  // namespace cvefix
