#include "delib/iso8601.hpp"

#include <array>
#include <cstdio>

#include "delib/errors.hpp"

namespace delib {
namespace {

// Civil-date conversions after Howard Hinnant's public-domain algorithms;
// exact over the full int64 range we care about, no timezone machinery.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool is_leap(int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int64_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

class Cursor {
public:
    explicit Cursor(const std::string& s) : s_(s) {}

    int64_t digits(int n, const char* what) {
        if (pos_ + n > s_.size()) malformed(what);
        int64_t v = 0;
        for (int i = 0; i < n; ++i) {
            char c = s_[pos_++];
            if (c < '0' || c > '9') malformed(what);
            v = v * 10 + (c - '0');
        }
        return v;
    }

    void expect(char c, const char* what) {
        if (pos_ >= s_.size() || s_[pos_] != c) malformed(what);
        ++pos_;
    }

    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    bool peek_digit() const { return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9'; }
    bool done() const { return pos_ == s_.size(); }
    char take() { return s_[pos_++]; }

    [[noreturn]] void malformed(const char* what) {
        fail(ErrorCode::SchemaError, "bad timestamp '" + s_ + "' (" + what + ")");
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

Timestamp parse_iso8601(const std::string& text) {
    Cursor c(text);
    int64_t year = c.digits(4, "year");
    c.expect('-', "date separator");
    int64_t month = c.digits(2, "month");
    c.expect('-', "date separator");
    int64_t day = c.digits(2, "day");
    c.expect('T', "date/time separator");
    int64_t hour = c.digits(2, "hour");
    c.expect(':', "time separator");
    int64_t minute = c.digits(2, "minute");
    c.expect(':', "time separator");
    int64_t second = c.digits(2, "second");

    if (month < 1 || month > 12) c.malformed("month out of range");
    if (day < 1 || day > days_in_month(year, static_cast<unsigned>(month)))
        c.malformed("day out of range");
    if (hour > 23 || minute > 59 || second > 59) c.malformed("time out of range");

    if (c.peek('.')) {
        c.take();
        int n = 0;
        while (c.peek_digit()) {
            c.take();
            ++n;
        }
        if (n == 0) c.malformed("fraction");
    }

    int64_t offset = 0;
    if (c.done()) c.malformed("missing zone designator");
    char zone = c.take();
    if (zone == 'Z') {
        // UTC
    } else if (zone == '+' || zone == '-') {
        int64_t oh = c.digits(2, "offset hours");
        c.expect(':', "offset separator");
        int64_t om = c.digits(2, "offset minutes");
        if (oh > 23 || om > 59) c.malformed("offset out of range");
        offset = (oh * 60 + om) * 60;
        if (zone == '-') offset = -offset;
    } else {
        c.malformed("zone designator");
    }
    if (!c.done()) c.malformed("trailing characters");

    int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(Timestamp t) {
    int64_t days = t / 86400;
    int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

} // namespace delib
