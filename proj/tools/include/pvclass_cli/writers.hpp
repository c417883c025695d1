#pragma once

#include <string>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/evaluation.hpp"
#include "pvclass/simulation.hpp"

namespace pvclass::cli {

/// Shortest round-trip decimal form.
std::string num(double v);

/// Region as member names joined by "+" in label order; "-" when empty.
std::string region_names(LabelSet s, const std::vector<std::string>& names);

std::string csv_field(const std::string& s);

void write_text(const std::string& path, const std::string& content);

/// Side of one cell in the rectangle charts, in SVG user units.
inline constexpr double kCellSize = 24.0;

struct ChartRow {
  std::string label;
  std::vector<double> pvalues;
};

/// One row of squares per observation; square (row, theta) is centred in its
/// cell and has area p * kCellSize^2.
std::string pvalue_chart_svg(const std::vector<ChartRow>& rows, const std::vector<std::string>& names,
                             const std::string& title);

/// Same grid; a full cell is filled iff theta lies in the region at `alpha`.
std::string region_chart_svg(const std::vector<ChartRow>& rows, const std::vector<std::string>& names, double alpha,
                             const std::string& title);

/// L x L panels; panel (b, theta) plots alpha -> 1 - I_alpha(b, theta).
std::string roc_svg(const std::vector<std::vector<RocCurve>>& curves, const std::vector<std::string>& names,
                    const std::string& title);

/// Coloured lattice with a legend of every subset of the labels.
std::string region_map_svg(const RegionMap& map, const std::vector<std::string>& names, const std::string& title);

}  // namespace pvclass::cli
