#pragma once

#include <string>
#include <vector>

#include "vlpmono/scenario_io.hpp"

namespace vlpmono {

/// Plot-ready series extracted from a run: paired truth/calculated point
/// lists for the scatter kinds, (error, probability) steps for cdf.
struct PlotSeries {
    enum class Kind { scatter3d, scatter2d_xy, scatter2d_yz, cdf };

    Kind kind = Kind::scatter3d;
    std::vector<WorldPoint> truth;       // scatter kinds; lengths match
    std::vector<WorldPoint> calculated;
    std::vector<std::pair<std::string, CdfSeries>> cdf;  // cdf kind
};

PlotSeries make_scatter_series(PlotSeries::Kind kind, std::span<const ResultRow> rows);

/// Reads results.csv + cdf.csv from results_dir and writes the four plot
/// data files (plot_scatter3d.csv, plot_scatter_xy.csv, plot_scatter_yz.csv,
/// plot_cdf.csv) plus an SVG rendering of each into out_dir. Returns the
/// paths written. Throws IoError on missing or corrupt inputs.
std::vector<std::string> export_plots(const std::string& results_dir,
                                      const std::string& out_dir);

}  // namespace vlpmono
