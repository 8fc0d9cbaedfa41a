#include "csv.hpp"

#include <cstdio>

namespace mpqkd::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::separator() {
    if (row_started_) {
        out_ << ',';
    }
    row_started_ = true;
}

CsvWriter& CsvWriter::field(std::string_view v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(std::uint64_t v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(std::int64_t v) {
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(bool v) {
    separator();
    out_ << (v ? 1 : 0);
    return *this;
}

CsvWriter& CsvWriter::empty_field() {
    separator();
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

void CsvWriter::header(const std::vector<std::string_view>& names) {
    for (std::string_view n : names) {
        field(n);
    }
    end_row();
}

}  // namespace mpqkd::cli
