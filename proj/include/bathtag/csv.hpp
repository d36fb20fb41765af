// csv.hpp: Deterministic CSV emission (comma delimiter, '.' decimals, '\n' rows)

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bathtag {

// printf-style %.<precision>g, locale independent; "inf", "-inf" and "nan" spelled out.
std::string format_number(double value, int precision);

class CsvWriter {
public:
    using Cell = std::variant<double, long, std::string>;

    CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

    void header(const std::vector<std::string_view>& names);
    void row(const std::vector<Cell>& cells);
    // Lines starting with '#', for summaries that are not part of the table.
    void comment(std::string_view text);

    int precision() const noexcept { return precision_; }

private:
    std::ostream& out_;
    int precision_;
};

}  // namespace bathtag
