#include "robin/cli/output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace robin::cli {

namespace {

std::string format_cell(const Cell& cell)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return fmt::format("{:.17g}", v); }
        std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

std::string escape_xml(const std::string& text)
{
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

double nice_step(double span, int target)
{
    const double raw = span / std::max(target, 1);
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double fraction = raw / magnitude;
    double nice = 10.0;
    if (fraction <= 1.0)
        nice = 1.0;
    else if (fraction <= 2.0)
        nice = 2.0;
    else if (fraction <= 5.0)
        nice = 5.0;
    return nice * magnitude;
}

std::string tick_label(double v)
{
    if (std::abs(v) < 1e-300)
        v = 0.0;
    return fmt::format("{:.6g}", v);
}

constexpr double width = 640.0;
constexpr double height = 420.0;
constexpr double margin_left = 84.0;
constexpr double margin_right = 24.0;
constexpr double margin_top = 40.0;
constexpr double margin_bottom = 64.0;

} // namespace

std::string format_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out += (i ? "," : "") + table.header[i];
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw OutputError("CSV row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::string& text, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw OutputError(fmt::format("cannot open '{}' for writing", path));
    out << text;
    out.flush();
    if (!out)
        throw OutputError(fmt::format("failed writing '{}'", path));
}

void write_csv(const Table& table, const std::string& path)
{
    write_text(format_csv(table), path);
}

std::vector<double> nice_ticks(double lower, double upper, int target)
{
    if (!(upper > lower))
        upper = lower + 1.0;
    const double step = nice_step(upper - lower, target);
    const auto first = static_cast<long long>(std::floor(lower / step));
    const auto last = static_cast<long long>(std::ceil(upper / step));
    std::vector<double> ticks;
    for (long long k = first; k <= last; ++k)
        ticks.push_back(static_cast<double>(k) * step);
    return ticks;
}

std::string format_svg(const Plot& plot)
{
    const auto& xs = plot.series.x;
    const auto& ys = plot.series.y;
    if (xs.empty() || xs.size() != ys.size())
        throw OutputError("plot series must be nonempty with matching lengths");

    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    const double y_top = *ymax_it > 0.0 ? 1.05 * *ymax_it : 0.0;
    const double y_bottom = std::min(0.0, *ymin_it);
    const auto xt = nice_ticks(*xmin_it, *xmax_it);
    const auto yt = nice_ticks(y_bottom, y_top);
    const double x0 = xt.front(), x1 = xt.back();
    const double y0 = yt.front(), y1 = yt.back();

    const double pw = width - margin_left - margin_right;
    const double ph = height - margin_top - margin_bottom;
    auto px = [&](double x) { return margin_left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return margin_top + ph - (y - y0) / (y1 - y0) * ph; };

    std::string out;
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                       "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
                       width, height, width, height);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);
    out += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       width / 2, escape_xml(plot.title));

    // axes
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                       margin_left, margin_top + ph, margin_left + pw, margin_top + ph);
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                       margin_left, margin_top, margin_left, margin_top + ph);
    for (double t : xt) {
        const double x = px(t);
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                           x, margin_top + ph, x, margin_top + ph + 5);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x,
                           margin_top + ph + 19, tick_label(t));
    }
    for (double t : yt) {
        const double y = py(t);
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                           margin_left - 5, y, margin_left, y);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", margin_left - 8,
                           y + 4, tick_label(t));
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       margin_left + pw / 2, height - 16, escape_xml(plot.x_label));
    out += fmt::format("<text x=\"18\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2f})\">{}</text>\n",
                       margin_top + ph / 2, margin_top + ph / 2, escape_xml(plot.y_label));

    out += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(xs[i]), py(ys[i]));
    out += "\"/>\n</svg>\n";
    return out;
}

void write_svg(const Plot& plot, const std::string& path)
{
    write_text(format_svg(plot), path);
}

} // namespace robin::cli
