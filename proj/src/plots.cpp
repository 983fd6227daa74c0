#include "vlpmono/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vlpmono/errors.hpp"

namespace vlpmono {

namespace {

namespace fs = std::filesystem;

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        const double margin = std::max(0.05 * (hi - lo), 1e-6);
        lo -= margin;
        hi += margin;
    }
};

// Minimal static SVG scatter/step plots; enough to eyeball a run offline.
class SvgCanvas {
public:
    SvgCanvas(Range x, Range y) : x_(x), y_(y) {
        x_.pad();
        y_.pad();
        svg_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
             << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
             << "\">\n";
        svg_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        svg_ << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
             << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
             << "\" fill=\"none\" stroke=\"black\"/>\n";
    }

    void title(const std::string& text) {
        svg_ << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
             << "font-family=\"sans-serif\" font-size=\"14\">" << text << "</text>\n";
    }

    void circle(double x, double y, const std::string& color, double radius) {
        svg_ << "<circle cx=\"" << format_g9(px(x)) << "\" cy=\"" << format_g9(py(y))
             << "\" r=\"" << radius << "\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        svg_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            svg_ << format_g9(px(x)) << ',' << format_g9(py(y)) << ' ';
        }
        svg_ << "\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kMargin + 14.0;
        for (const auto& [label, color] : entries) {
            svg_ << "<circle cx=\"" << kMargin + 10 << "\" cy=\"" << y - 4
                 << "\" r=\"4\" fill=\"" << color << "\"/>\n";
            svg_ << "<text x=\"" << kMargin + 20 << "\" y=\"" << y
                 << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
            y += 16.0;
        }
    }

    std::string finish() {
        svg_ << "</svg>\n";
        return svg_.str();
    }

private:
    static constexpr double kWidth = 640.0;
    static constexpr double kHeight = 480.0;
    static constexpr double kMargin = 40.0;

    double px(double x) const {
        return kMargin + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - 2 * kMargin);
    }

    Range x_;
    Range y_;
    std::ostringstream svg_;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

// Oblique cabinet projection for the 3D scatter.
std::pair<double, double> oblique(const WorldPoint& p) {
    return {p.x + 0.35 * p.y, p.z + 0.35 * p.y};
}

std::string scatter_csv(const PlotSeries& s) {
    std::ostringstream out;
    switch (s.kind) {
        case PlotSeries::Kind::scatter3d:
            out << "truth_x,truth_y,truth_z,calc_x,calc_y,calc_z\n";
            break;
        case PlotSeries::Kind::scatter2d_xy:
            out << "truth_x,truth_y,calc_x,calc_y\n";
            break;
        case PlotSeries::Kind::scatter2d_yz:
            out << "truth_y,truth_z,calc_y,calc_z\n";
            break;
        case PlotSeries::Kind::cdf:
            break;
    }
    for (std::size_t i = 0; i < s.truth.size(); ++i) {
        const auto& t = s.truth[i];
        const auto& c = s.calculated[i];
        switch (s.kind) {
            case PlotSeries::Kind::scatter3d:
                out << format_g9(t.x) << ',' << format_g9(t.y) << ',' << format_g9(t.z) << ','
                    << format_g9(c.x) << ',' << format_g9(c.y) << ',' << format_g9(c.z) << '\n';
                break;
            case PlotSeries::Kind::scatter2d_xy:
                out << format_g9(t.x) << ',' << format_g9(t.y) << ',' << format_g9(c.x) << ','
                    << format_g9(c.y) << '\n';
                break;
            case PlotSeries::Kind::scatter2d_yz:
                out << format_g9(t.y) << ',' << format_g9(t.z) << ',' << format_g9(c.y) << ','
                    << format_g9(c.z) << '\n';
                break;
            case PlotSeries::Kind::cdf:
                break;
        }
    }
    return out.str();
}

std::string scatter_svg(const PlotSeries& s, const std::string& title) {
    Range rx, ry;
    bool seeded = false;
    auto planar = [&](const WorldPoint& p) -> std::pair<double, double> {
        switch (s.kind) {
            case PlotSeries::Kind::scatter3d: return oblique(p);
            case PlotSeries::Kind::scatter2d_xy: return {p.x, p.y};
            default: return {p.y, p.z};
        }
    };
    for (const auto* series : {&s.truth, &s.calculated}) {
        for (const auto& p : *series) {
            const auto [x, y] = planar(p);
            if (!seeded) {
                rx = {x, x};
                ry = {y, y};
                seeded = true;
            } else {
                rx.include(x);
                ry.include(y);
            }
        }
    }

    SvgCanvas canvas(rx, ry);
    canvas.title(title);
    for (const auto& p : s.calculated) {
        const auto [x, y] = planar(p);
        canvas.circle(x, y, "#d62728", 2.0);
    }
    for (const auto& p : s.truth) {
        const auto [x, y] = planar(p);
        canvas.circle(x, y, "#1f77b4", 3.0);
    }
    canvas.legend({{"known", "#1f77b4"}, {"calculated", "#d62728"}});
    return canvas.finish();
}

std::string cdf_svg(const std::vector<std::pair<std::string, CdfSeries>>& series) {
    Range rx{0.0, 1e-6}, ry{0.0, 1.0};
    for (const auto& [name, cdf] : series) {
        for (const auto& step : cdf.steps) {
            rx.include(step.error_m);
        }
    }

    SvgCanvas canvas(rx, ry);
    canvas.title("error CDF");
    const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& color = colors[i % colors.size()];
        std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
        double prev = 0.0;
        for (const auto& step : series[i].second.steps) {
            pts.emplace_back(step.error_m, prev);  // step function
            pts.emplace_back(step.error_m, step.cum_prob);
            prev = step.cum_prob;
        }
        canvas.polyline(pts, color);
        legend.emplace_back(series[i].first, color);
    }
    canvas.legend(legend);
    return canvas.finish();
}

}  // namespace

PlotSeries make_scatter_series(PlotSeries::Kind kind, std::span<const ResultRow> rows) {
    PlotSeries s;
    s.kind = kind;
    for (const auto& row : rows) {
        if (!row.ok) {
            continue;
        }
        s.truth.push_back(row.truth);
        s.calculated.push_back(row.estimate);
    }
    return s;
}

std::vector<std::string> export_plots(const std::string& results_dir,
                                      const std::string& out_dir) {
    const fs::path results_path = fs::path(results_dir) / "results.csv";
    const fs::path cdf_path = fs::path(results_dir) / "cdf.csv";
    if (!fs::exists(results_path) || !fs::exists(cdf_path)) {
        throw IoError("results directory is missing results.csv or cdf.csv: " + results_dir);
    }
    const auto rows = read_results_csv(results_path.string());
    const auto cdfs = read_cdf_csv(cdf_path.string());

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out_dir);
    }

    std::vector<std::string> written;
    const auto emit = [&](const std::string& stem, const std::string& csv,
                          const std::string& svg) {
        const fs::path csv_path = fs::path(out_dir) / (stem + ".csv");
        const fs::path svg_path = fs::path(out_dir) / (stem + ".svg");
        write_file(csv_path, csv);
        write_file(svg_path, svg);
        written.push_back(csv_path.string());
        written.push_back(svg_path.string());
    };

    const auto s3d = make_scatter_series(PlotSeries::Kind::scatter3d, rows);
    const auto sxy = make_scatter_series(PlotSeries::Kind::scatter2d_xy, rows);
    const auto syz = make_scatter_series(PlotSeries::Kind::scatter2d_yz, rows);

    emit("plot_scatter3d", scatter_csv(s3d), scatter_svg(s3d, "room view"));
    emit("plot_scatter_xy", scatter_csv(sxy), scatter_svg(sxy, "XoY plane"));
    emit("plot_scatter_yz", scatter_csv(syz), scatter_svg(syz, "YoZ plane"));

    std::ostringstream cdf_csv_text;
    write_cdf_csv(cdf_csv_text, cdfs);
    emit("plot_cdf", cdf_csv_text.str(), cdf_svg(cdfs));

    return written;
}

}  // namespace vlpmono
