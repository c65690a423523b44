#pragma once

#include <string>
#include <vector>

namespace fsscomp {

// Fixed 12-significant-digit formatting so repeated runs emit byte-identical
// files.
std::string format_number(double v);

// Comma-separated, LF line endings, '.' decimal separator.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal deterministic SVG line chart; CSVs stay the authoritative output.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

}  // namespace fsscomp
