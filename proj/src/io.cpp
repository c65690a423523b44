#include "fsscomp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fsscomp/config.hpp"

namespace fsscomp {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    auto write_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    write_line(header);
    for (const auto& row : rows) {
        write_line(row);
    }
    if (!out) {
        throw io_error("write failed for '" + path + "'");
    }
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                continue;
            }
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (xmax <= xmin) {
        xmax = xmin + 1.0;
    }
    if (ymax <= ymin) {
        ymax = ymin + 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double width = 800, height = 520;
    const double left = 80, right = 780, top = 50, bottom = 470;
    auto map_x = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto map_y = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + k * (xmax - xmin) / 4.0;
        const double px = map_x(fx);
        out << "<line x1=\"" << fmt_coord(px) << "\" y1=\"" << bottom << "\" x2=\""
            << fmt_coord(px) << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt_coord(px) << "\" y=\"" << bottom + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_label(fx) << "</text>\n";
        const double fy = ymin + k * (ymax - ymin) / 4.0;
        const double py = map_y(fy);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt_coord(py) << "\" x2=\"" << left
            << "\" y2=\"" << fmt_coord(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << fmt_coord(py + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_label(fy) << "</text>\n";
    }
    out << "<text x=\"430\" y=\"505\" text-anchor=\"middle\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"20\" y=\"260\" text-anchor=\"middle\" font-size=\"13\" "
           "transform=\"rotate(-90 20 260)\">"
        << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                continue;
            }
            out << fmt_coord(map_x(s.x[i])) << ',' << fmt_coord(map_y(s.y[i])) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << right - 150 << "\" y=\"" << top + 18 + 16 * si
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) {
        throw io_error("write failed for '" + path + "'");
    }
}

}  // namespace fsscomp
