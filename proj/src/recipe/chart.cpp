#include <algorithm>
#include <cstdio>
#include <sstream>

#include "starcalc/recipe.hpp"

namespace starcalc {

std::string chart_csv(const std::vector<ChartPoint>& points) {
    std::ostringstream out;
    out << "name,chi_h,c1sq,position\n";
    for (const auto& p : points) {
        out << p.name << "," << p.verdict.chi_h << "," << p.verdict.c1sq << "," << to_string(p.verdict.position)
            << "\n";
    }
    return out.str();
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

}  // namespace

std::string chart_svg(const std::vector<ChartPoint>& points) {
    long max_chi = 6;
    long max_c1 = 10;
    long min_c1 = -4;
    for (const auto& p : points) {
        max_chi = std::max(max_chi, p.verdict.chi_h + 1);
        max_c1 = std::max(max_c1, p.verdict.c1sq + 1);
        min_c1 = std::min(min_c1, p.verdict.c1sq - 1);
    }
    const double width = 640;
    const double height = 480;
    const double margin = 48;
    auto x = [&](double chi) { return margin + chi / static_cast<double>(max_chi) * (width - 2 * margin); };
    auto y = [&](double c1) {
        return height - margin - (c1 - static_cast<double>(min_c1)) / static_cast<double>(max_c1 - min_c1) *
                                     (height - 2 * margin);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(y(0)) << "\" x2=\"" << fmt(x(max_chi)) << "\" y2=\""
        << fmt(y(0)) << "\" stroke=\"#999\"/>\n";
    out << "<line x1=\"" << fmt(x(0)) << "\" y1=\"" << fmt(y(min_c1)) << "\" x2=\"" << fmt(x(0)) << "\" y2=\""
        << fmt(y(max_c1)) << "\" stroke=\"#999\"/>\n";

    auto clipped_line = [&](double slope, double offset, const char* colour, const char* label) {
        // c1 = slope * chi + offset, clipped to the plotted c1 range
        double lo = 0;
        double hi = static_cast<double>(max_chi);
        lo = std::max(lo, (static_cast<double>(min_c1) - offset) / slope);
        hi = std::min(hi, (static_cast<double>(max_c1) - offset) / slope);
        out << "<line x1=\"" << fmt(x(lo)) << "\" y1=\"" << fmt(y(slope * lo + offset)) << "\" x2=\"" << fmt(x(hi))
            << "\" y2=\"" << fmt(y(slope * hi + offset)) << "\" stroke=\"" << colour << "\"/>\n";
        out << "<text x=\"" << fmt(x(hi) - 4) << "\" y=\"" << fmt(y(slope * hi + offset) - 4)
            << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << label << "</text>\n";
    };
    clipped_line(2, -6, "#1f5fa8", "c1^2 = 2chi_h - 6");
    clipped_line(1, -3, "#a8501f", "c1^2 = chi_h - 3");

    for (const auto& p : points) {
        const double px = x(static_cast<double>(p.verdict.chi_h));
        const double py = y(static_cast<double>(p.verdict.c1sq));
        out << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"3\" fill=\"black\"><title>" << p.name
            << " (" << p.verdict.chi_h << ", " << p.verdict.c1sq << ")</title></circle>\n";
    }
    out << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height - 12) << "\" text-anchor=\"middle\">chi_h</text>\n";
    out << "<text x=\"12\" y=\"" << fmt(height / 2) << "\">c1^2</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace starcalc
