#include "bathtag/csv.hpp"

#include <cmath>
#include <cstdio>

namespace bathtag {

namespace {

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

void CsvWriter::header(const std::vector<std::string_view>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ << ',';
        out_ << names[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        const Cell& c = cells[i];
        if (const auto* d = std::get_if<double>(&c)) out_ << format_number(*d, precision_);
        else if (const auto* l = std::get_if<long>(&c)) out_ << *l;
        else out_ << quoted(std::get<std::string>(c));
    }
    out_ << '\n';
}

void CsvWriter::comment(std::string_view text) {
    out_ << "# " << text << '\n';
}

}  // namespace bathtag
