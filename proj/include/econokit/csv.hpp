#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace econokit {

// RFC-4180 record reader: comma separated, optional double-quote quoting
// with doubled quotes for embedded quotes; accepts LF and CRLF line ends.
// Quoted fields may span lines; the reported line number is where the
// record started (1-based).
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Returns false at end of input. Throws MalformedRow on an unterminated
    // quoted field or junk after a closing quote.
    bool next(std::vector<std::string>& fields, std::size_t& line);

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

// Quotes a field if it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest representation with 17 significant digits; round-trips any
// IEEE double and is byte-stable across platforms.
std::string format_double(double v);

}  // namespace econokit
