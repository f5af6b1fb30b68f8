#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsclf::csv {

/// One parsed record. `error` is set when the record is malformed; the
/// fields are then whatever was recovered and should not be trusted.
struct Record {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
    std::optional<std::string> error;
};

/// RFC 4180 reader over an in-memory buffer. Accepts LF or CRLF line
/// endings and skips a leading UTF-8 byte order mark. Quoted fields may
/// hold commas, doubled quotes and line breaks.
class Reader {
public:
    explicit Reader(std::string_view text);

    /// Next record, or nullopt at end of input. Blank lines are skipped.
    std::optional<Record> next();

private:
    void skip_to_line_end();

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

std::vector<Record> parse_all(std::string_view text);

}  // namespace newsclf::csv
