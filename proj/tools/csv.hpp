// Tiny CSV emitter: comma separator, newline-terminated rows, no quoting
// (fields are numeric, boolean or plain identifiers).  Doubles use %.17g so
// every value round-trips bit-exactly through the file.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mpqkd::cli {

std::string format_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& field(std::string_view v);
    CsvWriter& field(double v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(std::int64_t v);
    CsvWriter& field(bool v);
    // An empty cell (used when a value is not applicable).
    CsvWriter& empty_field();
    void end_row();

    void header(const std::vector<std::string_view>& names);

  private:
    void separator();

    std::ostream& out_;
    bool row_started_ = false;
};

}  // namespace mpqkd::cli
