#include "econokit/csv.hpp"

#include <cstdio>

#include "econokit/errors.hpp"

namespace econokit {

bool CsvReader::next(std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    int c = in_.get();
    // swallow line terminators left by the previous record
    while (c == '\n' || c == '\r') {
        if (c == '\n') {
            ++line_;
        }
        c = in_.get();
    }
    if (c == EOF) {
        return false;
    }
    line = line_ + 1;
    std::string field;
    bool quoted = false;
    bool closed_quote = false;  // field ended with a closing quote
    bool done = false;
    while (!done) {
        if (quoted) {
            if (c == EOF) {
                throw MalformedRow("unterminated quoted field", line);
            }
            if (c == '"') {
                const int peek = in_.peek();
                if (peek == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    quoted = false;
                    closed_quote = true;
                }
            } else {
                if (c == '\n') {
                    ++line_;
                }
                field.push_back(static_cast<char>(c));
            }
        } else {
            switch (c) {
                case EOF:
                case '\n':
                    if (c == '\n') {
                        ++line_;
                    }
                    fields.push_back(std::move(field));
                    done = true;
                    break;
                case '\r':
                    break;  // part of CRLF; LF handled next
                case ',':
                    fields.push_back(std::move(field));
                    field.clear();
                    closed_quote = false;
                    break;
                case '"':
                    if (!field.empty() || closed_quote) {
                        throw MalformedRow("quote inside unquoted field", line);
                    }
                    quoted = true;
                    break;
                default:
                    if (closed_quote) {
                        throw MalformedRow("content after closing quote", line);
                    }
                    field.push_back(static_cast<char>(c));
                    break;
            }
        }
        if (!done) {
            c = in_.get();
        }
    }
    return true;
}

std::string csv_escape(std::string_view field) {
    const bool needs_quoting = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quoting) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out.put(',');
        }
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace econokit
