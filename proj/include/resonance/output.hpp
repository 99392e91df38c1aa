#ifndef RESONANCE_OUTPUT_HPP
#define RESONANCE_OUTPUT_HPP

#include <string>
#include <utility>
#include <vector>

namespace resonance::output {

/// Write a CSV table: header row, LF line endings, numbers as %.15g.
/// Identical inputs produce byte-identical files.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

std::string format_csv(const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

/// Single-polyline SVG plot, 800x600 viewport, with axes and tick labels.
void write_svg_polyline(const std::string& path,
                        const std::vector<std::pair<double, double>>& points,
                        const std::string& x_label, const std::string& y_label);

}  // namespace resonance::output

#endif
