#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace robin::cli {

/// An empty cell prints as nothing (used for undefined ratios).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Output file could not be created or written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Header row, then one line per row; '\n' endings, reals with 17 significant digits.
std::string format_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);

struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    Series series;
};

/// Multiples of a 1-2-5 step from the last one at or below lower to the first
/// one at or above upper.
std::vector<double> nice_ticks(double lower, double upper, int target = 5);

/// A single polyline with axes, ticks and labels. The y axis starts at 0 when
/// all values are nonnegative and always reaches 1.05 * max(y).
std::string format_svg(const Plot& plot);
void write_svg(const Plot& plot, const std::string& path);

void write_text(const std::string& text, const std::string& path);

} // namespace robin::cli
