#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace ammgreeks::csv {

/// 17 significant digits: enough for a lossless binary64 round-trip.
inline std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Comma-separated row terminated by a bare LF.
class RowWriter {
public:
    explicit RowWriter(std::ostream& os) : os_(os) {}

    void header(std::initializer_list<std::string_view> names) {
        bool first = true;
        for (auto n : names) {
            if (!first) os_ << ',';
            os_ << n;
            first = false;
        }
        os_ << '\n';
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((emit(cells, first)), ...);
        os_ << '\n';
    }

private:
    void emit(double v, bool& first) { sep(first), os_ << number(v); }
    void emit(bool v, bool& first) { sep(first), os_ << (v ? "true" : "false"); }
    void emit(std::string_view v, bool& first) { sep(first), os_ << v; }
    void emit(const std::string& v, bool& first) { sep(first), os_ << v; }
    void emit(const char* v, bool& first) { sep(first), os_ << v; }
    void sep(bool& first) {
        if (!first) os_ << ',';
        first = false;
    }

    std::ostream& os_;
};

}  // namespace ammgreeks::csv
