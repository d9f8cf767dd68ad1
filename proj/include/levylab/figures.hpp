#pragma once

// Data behind the figure panels, and CSV output (17 significant digits, LF).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "levylab/error.hpp"
#include "levylab/functionals.hpp"
#include "levylab/parallel.hpp"

namespace levylab {

struct FigurePanel {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6"};
  return names;
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// s = k / 64, k = 0..64.
inline std::vector<double> figure_s_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 64; ++k) g.push_back(k / 64.0);
  return g;
}

namespace detail {

inline FigurePanel s_curve(std::string file, const SpectralDensity& d, double T) {
  FigurePanel p{std::move(file), {"s", "value"}, {}};
  auto grid = figure_s_grid();
  std::vector<double> v(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { v[i] = eval_efficiency(EfficiencyQuery{d, grid[i], T, false}).value; });
  for (std::size_t i = 0; i < grid.size(); ++i) p.rows.push_back({grid[i], v[i]});
  return p;
}

}  // namespace detail

/// Half-widths of the centred bands of fig2.
inline const std::vector<double> fig2_widths{0.08, 0.3, 2.0};
/// Band centres of fig3 (half-width 1/(3 pi)).
inline const std::vector<double> fig3_centers{0.0, 0.16, 3.0};
/// Interval half-lengths of fig4.
inline const std::vector<double> fig4_lengths{0.035, 0.1, 0.5};
/// Time spans of fig5; the band is (-1e4, 1e4).
inline const std::vector<double> fig5_times{1.0, 1e8};
inline constexpr double fig5_half_width = 1e4;

inline std::vector<FigurePanel> figure_data(const std::string& name) {
  std::vector<FigurePanel> out;
  if (name == "fig2") {
    for (double a : fig2_widths) out.push_back(detail::s_curve("fig2_a" + short_number(a) + ".csv", band_density(0.0, a), 1.0));
  } else if (name == "fig3") {
    for (double r : fig3_centers)
      out.push_back(detail::s_curve("fig3_r" + short_number(r) + ".csv", band_density(r, l_surface_half_width), 1.0));
  } else if (name == "fig4") {
    for (double a : fig4_lengths) {
      FigurePanel p{"fig4_a" + short_number(a) + ".csv", {"xi", "value"}, {}};
      for (int i = 0; i <= 1200; ++i) {
        double xi = -30.0 + 60.0 * i / 1200.0;
        double c = chi_hat_interval(a, xi) / a;  // sin(2 pi a xi) / (pi a xi)
        p.rows.push_back({xi, c * c});
      }
      out.push_back(std::move(p));
    }
  } else if (name == "fig5") {
    const char* labels[] = {"T1", "T1e8"};
    for (std::size_t i = 0; i < fig5_times.size(); ++i)
      out.push_back(detail::s_curve(std::string("fig5_") + labels[i] + ".csv", band_density(0.0, fig5_half_width),
                                    fig5_times[i]));
  } else if (name == "fig6") {
    FigurePanel p{"fig6.csv", {"s", "r", "value"}, {}};
    std::vector<double> ss, rs;
    for (int i = 1; i <= 64; ++i) ss.push_back(i / 65.0);
    for (int j = 0; j <= 64; ++j) rs.push_back(5.0 * j / 64.0);
    std::vector<double> v(ss.size() * rs.size());
    parallel_for(v.size(), [&](std::size_t k) {
      v[k] = eval_L_surface(ss[k % ss.size()], rs[k / ss.size()]).value;
    });
    for (std::size_t k = 0; k < v.size(); ++k) p.rows.push_back({ss[k % ss.size()], rs[k / ss.size()], v[k]});
    out.push_back(std::move(p));
  } else {
    throw std::invalid_argument("unknown figure '" + name + "' (expected fig2..fig6)");
  }
  return out;
}

inline std::string csv_text(const FigurePanel& p) {
  std::string s;
  for (std::size_t i = 0; i < p.header.size(); ++i) s += (i ? "," : "") + p.header[i];
  s += '\n';
  for (const auto& row : p.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += '\n';
  }
  return s;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw WriteError("failed writing " + path.string());
}

/// Writes every panel of a figure into dir; returns the paths written.
inline std::vector<std::filesystem::path> write_figure(const std::string& name, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw WriteError("cannot create output directory " + dir.string());
  std::vector<std::filesystem::path> written;
  for (const auto& p : figure_data(name)) {
    auto path = dir / p.file;
    write_text(path, csv_text(p));
    written.push_back(path);
  }
  return written;
}

}  // namespace levylab
