#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mriprep {

/// Shortest text that parses back to exactly `v`; infinities print as `inf` / `-inf`.
std::string format_real(double v);
/// Parses what format_real emits. Throws SchemaViolation on junk.
double parse_real(std::string_view text);

/// Fixed-point with `decimals` digits, e.g. format_fixed(0.12345, 2) == "0.12".
std::string format_fixed(double v, int decimals);
/// Fraction rendered as a percentage, e.g. 0.9954 -> "99.54".
std::string format_percent(double fraction, int decimals = 2);

std::string csv_escape(std::string_view field);
/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> csv_split(std::string_view line);

/// A small rectangular document rendered as CSV, aligned text or markdown.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    std::string to_text() const;
    std::string to_markdown() const;
};

}  // namespace mriprep
