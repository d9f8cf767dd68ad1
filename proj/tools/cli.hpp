#pragma once

// levy-lab command line. run() is the whole program; main() only forwards.
//
// exit codes: 0 ok, 2 invalid arguments or config, 3 numerical or domain
// failure, 4 output could not be written.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "levylab/levylab.hpp"

namespace levycli {

using nlohmann::json;
using namespace levylab;

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;
inline constexpr int exit_write = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  std::string functional = "J";
  std::string shape = "interval:-1,1";
  std::string band;
  std::string omega1, omega2;
  std::string figure = "all";
  std::string out;
  std::string oracle_name;
  double s = 0.5, T = 1.0, r = 1.0, R = 1.0, sigma = 0.25;
  double s_lo = 0.0, s_hi = 1.0, tol = 1e-6;
  double rel_tol = 1e-12, abs_tol = 1e-15;
  int points = 65;
  bool minimize = false, maximize = false, all = false;
  std::vector<double> drift;
};

inline std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("malformed number '" + item + "' in " + what);
    }
  }
  return v;
}

/// interval:a,b or ball:n,R
inline DomainShape parse_shape(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("shape must look like interval:a,b or ball:n,R, got '" + text + "'");
  std::string kind = text.substr(0, colon);
  auto nums = parse_numbers(text.substr(colon + 1), "shape '" + text + "'");
  try {
    if (kind == "interval" && nums.size() == 2) return DomainShape::interval(nums[0], nums[1]);
    if (kind == "ball" && nums.size() == 2 && nums[0] == std::floor(nums[0]))
      return DomainShape::ball(static_cast<int>(nums[0]), nums[1]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid shape '") + text + "': " + e.what());
  }
  throw UsageError("shape must look like interval:a,b or ball:n,R, got '" + text + "'");
}

inline QuadratureConfig quad_config(const Params& p) {
  QuadratureConfig c = functional_defaults();
  c.rel_tol = p.rel_tol;
  c.abs_tol = p.abs_tol;
  return c;
}

// Spectral density: --band c,b if given, otherwise uniform prey on the dilated shape.
inline SpectralDensity density_of(const Params& p) {
  if (!p.band.empty()) {
    auto v = parse_numbers(p.band, "--band");
    if (v.size() != 2) throw UsageError("--band expects c,b");
    return band_density(v[0], v[1]);
  }
  return uniform_prey(parse_shape(p.shape).with_dilation(p.r));
}

inline json params_json(const Params& p) {
  json j;
  j["functional"] = p.functional;
  j["shape"] = p.shape;
  if (!p.band.empty()) j["band"] = p.band;
  j["s"] = p.s;
  j["T"] = p.T;
  j["r"] = p.r;
  j["R"] = p.R;
  j["rel_tol"] = p.rel_tol;
  j["abs_tol"] = p.abs_tol;
  return j;
}

inline json eval_record(const Params& p) {
  auto cfg = quad_config(p);
  json rec;
  rec["functional"] = p.functional;
  rec["params"] = params_json(p);
  const std::string& f = p.functional;
  auto put = [&](const IntegralResult& r) {
    rec["value"] = r.value;
    rec["error_estimate"] = r.error_estimate;
  };
  if (f == "J" || f == "Junnorm") {
    put(eval_efficiency(EfficiencyQuery{density_of(p), p.s, p.T, f == "J", cfg}));
  } else if (f == "scaled") {
    put(eval_scaled(parse_shape(p.shape), p.r, p.s, p.T, cfg));
  } else if (f == "Jinf") {
    put(eval_J_infty(p.R, p.r, p.s, cfg));
  } else if (f == "overlap") {
    if (p.omega1.empty() || p.omega2.empty()) throw UsageError("overlap needs --omega1 and --omega2");
    rec["params"]["omega1"] = p.omega1;
    rec["params"]["omega2"] = p.omega2;
    rec["value"] = stationary_overlap(parse_shape(p.omega1), parse_shape(p.omega2));
    rec["error_estimate"] = 0.0;
  } else if (f == "L") {
    put(eval_L_surface(p.s, p.r, cfg));
  } else if (f == "g" || f == "gprime" || f == "gsecond") {
    int m = f == "g" ? 0 : (f == "gprime" ? 1 : 2);
    double factor = m == 0 ? 1.0 : (m == 1 ? -2.0 : 4.0);
    IntegralResult r = spectral_moment(1.0, p.s, m, cfg);
    r.value *= factor;
    r.error_estimate *= std::abs(factor);
    put(r);
  } else if (f == "f") {
    rec["value"] = f_ratio(p.s, cfg);
    rec["error_estimate"] = nullptr;
  } else if (f == "dJ") {
    put(deriv_s_unnormalized(density_of(p), p.s, p.T, cfg));
  } else if (f == "dg") {
    auto d = deriv_s_g(parse_shape(p.shape), p.r, p.s, p.T, cfg);
    rec["value"] = d.total;
    rec["error_estimate"] = d.error_estimate;
    rec["head"] = d.head;
    rec["tail"] = d.tail;
  } else if (f == "dJinf") {
    rec["value"] = deriv_s_J_infty(p.R, p.r, p.s, cfg);
    rec["error_estimate"] = nullptr;
  } else if (f == "classify") {
    rec["value"] = to_string(classify_support(density_of(p)));
    rec["error_estimate"] = nullptr;
  } else {
    throw UsageError("unknown functional '" + f + "'");
  }
  return rec;
}

inline CurveFunctional curve_of(const Params& p) {
  auto cfg = quad_config(p);
  const std::string& f = p.functional;
  CurveFunctional c;
  if (f == "J" || f == "Junnorm") {
    SpectralDensity d = density_of(p);
    bool norm = f == "J";
    double T = p.T;
    c.value = [=](double s) { return eval_efficiency(EfficiencyQuery{d, s, T, norm, cfg}).value; };
    c.derivative = [=](double s) {
      double v = deriv_s_unnormalized(d, s, T, cfg).value;
      return norm ? v / T : v;
    };
  } else if (f == "scaled") {
    c = scaled_curve(parse_shape(p.shape), p.r, p.T, cfg);
  } else if (f == "L") {
    double r = p.r;
    c.value = [=](double s) { return eval_L_surface(s, r, cfg).value; };
  } else if (f == "Jinf") {
    double R = p.R, r = p.r;
    c.value = [=](double s) { return eval_J_infty(R, r, s, cfg).value; };
    c.derivative = [=](double s) { return deriv_s_J_infty(R, r, s, cfg); };
  } else if (f == "g") {
    c.value = [=](double s) { return g_of_s(s, cfg); };
    c.derivative = [=](double s) { return g_prime(s, cfg); };
  } else if (f == "f") {
    c.value = [=](double s) { return f_ratio(s, cfg); };
  } else {
    throw UsageError("functional '" + f + "' cannot be swept (use J, Junnorm, scaled, L, Jinf, g or f)");
  }
  c.provenance = params_json(p).dump();
  return c;
}

inline json report_json(const ExtremumReport& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["location"] = r.location;
  j["value"] = r.value;
  j["bracket"] = {r.bracket_lo, r.bracket_hi};
  j["classification"] = to_string(r.classification);
  j["trend"] = to_string(r.trend);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

// Flat key = value config. Keys are long option names of the chosen command.
struct ConfigEntry {
  std::string key, value;
  int line = 0;
};

inline std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<ConfigEntry> entries;
  std::string line;
  int no = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(no) + ": expected 'key = value'");
    ConfigEntry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), no};
    if (e.key.empty()) throw UsageError(path + ":" + std::to_string(no) + ": empty key");
    std::replace(e.key.begin(), e.key.end(), '_', '-');
    if (!seen.insert(e.key).second)
      throw UsageError(path + ":" + std::to_string(no) + ": duplicate key '" + e.key + "'");
    entries.push_back(e);
  }
  return entries;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"Levy foraging efficiency functionals: evaluate, differentiate, sweep, optimize, verify"};
  app.require_subcommand(1);
  auto tol_opts = [&](CLI::App* c) {
    c->add_option("--rel-tol", p.rel_tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    c->add_option("--abs-tol", p.abs_tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
  };

  auto* eval = app.add_subcommand("eval", "evaluate one functional and print a JSON record");
  eval->add_option("--functional", p.functional,
                   "J | Junnorm | scaled | Jinf | overlap | L | g | gprime | gsecond | f | dJ | dg | dJinf | classify");
  eval->add_option("--shape", p.shape, "interval:a,b or ball:n,R");
  eval->add_option("--band", p.band, "centred band c,b used as the spectral density");
  eval->add_option("--omega1", p.omega1, "first shape for overlap");
  eval->add_option("--omega2", p.omega2, "second shape for overlap");
  eval->add_option("--s", p.s, "Levy exponent");
  eval->add_option("--T", p.T, "time span");
  eval->add_option("--r", p.r, "dilation (or band shift for L)");
  eval->add_option("--R", p.R, "interval half-length for the long-time functional");
  tol_opts(eval);

  auto* figure = app.add_subcommand("figure", "write figure CSV data");
  figure->add_option("name", p.figure, "fig2 | fig3 | fig4 | fig5 | fig6 | all");
  figure->add_option("--out", p.out, "output directory")->default_val(".");

  auto* sweep = app.add_subcommand("sweep", "sample a functional over a grid of s");
  sweep->add_option("--functional", p.functional, "J | Junnorm | scaled | L | Jinf | g | f");
  sweep->add_option("--shape", p.shape, "interval:a,b or ball:n,R");
  sweep->add_option("--band", p.band, "centred band c,b");
  sweep->add_option("--T", p.T, "time span");
  sweep->add_option("--r", p.r, "dilation");
  sweep->add_option("--R", p.R, "interval half-length");
  sweep->add_option("--s-lo", p.s_lo, "grid start");
  sweep->add_option("--s-hi", p.s_hi, "grid end");
  sweep->add_option("--points", p.points, "grid size");
  sweep->add_option("--out", p.out, "CSV path; a .json provenance record is written next to it");
  tol_opts(sweep);

  auto* optimize = app.add_subcommand("optimize", "locate the best or worst Levy exponent");
  optimize->add_flag("--min", p.minimize, "search for a minimum (default)");
  optimize->add_flag("--max", p.maximize, "search for a maximum");
  optimize->add_option("--functional", p.functional, "scaled | J | Junnorm | L | Jinf");
  optimize->add_option("--shape", p.shape, "interval:a,b or ball:n,R");
  optimize->add_option("--band", p.band, "centred band c,b");
  optimize->add_option("--T", p.T, "time span");
  optimize->add_option("--r", p.r, "dilation");
  optimize->add_option("--R", p.R, "interval half-length");
  optimize->add_option("--s-lo", p.s_lo, "search start");
  optimize->add_option("--s-hi", p.s_hi, "search end");
  optimize->add_option("--tol", p.tol, "bracket width")->check(CLI::PositiveNumber);
  optimize->add_option("--drift", p.drift, "increasing T values; reports the minimizer for each")->delimiter(',');
  tol_opts(optimize);

  auto* thresh = app.add_subcommand("thresholds", "long-time monotonicity thresholds for (-R, R)");
  thresh->add_option("--R", p.R, "interval half-length");
  thresh->add_option("--sigma", p.sigma, "upper end of the decreasing window");
  tol_opts(thresh);

  auto* oracle = app.add_subcommand("oracle", "run independent cross-checks");
  oracle->add_flag("--all", p.all, "run every registered comparison (default)");
  oracle->add_option("--name", p.oracle_name, "run a single comparison");

  // --config path: splice key = value pairs in as long options
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        err << "error: --config needs a path\n";
        return exit_usage;
      }
      config_path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  try {
    if (!config_path.empty()) {
      auto entries = read_config(config_path);
      std::string command;
      for (const auto& a : args)
        if (!a.empty() && a[0] != '-') {
          command = a;
          break;
        }
      for (const auto& e : entries)
        if (e.key == "command") {
          if (command.empty()) {
            command = e.value;
            args.insert(args.begin(), command);
          } else if (command != e.value) {
            throw UsageError(config_path + ":" + std::to_string(e.line) + ": command '" + e.value +
                             "' conflicts with '" + command + "' on the command line");
          }
        }
      if (command.empty()) throw UsageError(config_path + ": no command given (set 'command = ...')");
      CLI::App* sub = nullptr;
      try {
        sub = app.get_subcommand(command);
      } catch (const CLI::OptionNotFound&) {
        throw UsageError("unknown command '" + command + "'");
      }
      std::map<std::string, CLI::Option*> known;
      for (auto* o : sub->get_options())
        for (const auto& n : o->get_lnames()) known[n] = o;
      for (const auto& e : entries) {
        if (e.key == "command") continue;
        auto it = known.find(e.key);
        if (it == known.end() || e.key == "help")
          throw UsageError(config_path + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "' for command '" +
                           command + "'");
        std::string flag = "--" + e.key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        if (it->second->get_type_size() == 0) {
          if (e.value == "true" || e.value == "1" || e.value == "yes")
            args.push_back(flag);
          else if (!(e.value == "false" || e.value == "0" || e.value == "no"))
            throw UsageError(config_path + ":" + std::to_string(e.line) + ": flag '" + e.key + "' needs true or false");
        } else {
          args.push_back(flag);
          args.push_back(e.value);
        }
      }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
    }

    if (*eval) {
      out << eval_record(p).dump(2) << "\n";
    } else if (*figure) {
      std::vector<std::string> names;
      if (p.figure == "all")
        names = figure_names();
      else if (std::find(figure_names().begin(), figure_names().end(), p.figure) != figure_names().end())
        names = {p.figure};
      else
        throw UsageError("unknown figure '" + p.figure + "'");
      json files = json::array();
      for (const auto& n : names)
        for (const auto& path : write_figure(n, p.out)) files.push_back(path.string());
      out << json{{"figures", names}, {"files", files}}.dump(2) << "\n";
    } else if (*sweep) {
      auto c = curve_of(p);
      auto curve = scan(c, p.s_lo, p.s_hi, p.points);
      FigurePanel panel{"", {"s", "value"}, {}};
      if (!curve.derivatives.empty()) panel.header.push_back("derivative");
      for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        std::vector<double> row{curve.grid[i], curve.values[i]};
        if (!curve.derivatives.empty()) row.push_back(curve.derivatives[i]);
        panel.rows.push_back(row);
      }
      json prov;
      prov["command"] = "sweep";
      prov["params"] = params_json(p);
      prov["s_lo"] = p.s_lo;
      prov["s_hi"] = p.s_hi;
      prov["points"] = p.points;
      json fails = json::array();
      for (const auto& [i, msg] : curve.failures) fails.push_back({{"index", i}, {"s", curve.grid[i]}, {"error", msg}});
      prov["failures"] = fails;
      if (p.out.empty()) {
        out << csv_text(panel);
      } else {
        write_text(p.out, csv_text(panel));
        prov["csv"] = p.out;
        write_text(p.out + ".json", prov.dump(2) + "\n");
        out << prov.dump(2) << "\n";
      }
    } else if (*optimize) {
      if (p.minimize && p.maximize) throw UsageError("choose one of --min and --max");
      auto kind = p.maximize ? ExtremumKind::max : ExtremumKind::min;
      bool default_functional = optimize->count("--functional") == 0;
      if (default_functional) p.functional = "scaled";
      json rec;
      rec["command"] = "optimize";
      rec["params"] = params_json(p);
      if (!p.drift.empty()) {
        if (p.functional != "scaled") throw UsageError("--drift works with the scaled functional only");
        json arr = json::array();
        for (const auto& d : minimizer_drift(parse_shape(p.shape), p.r, p.drift, p.tol))
          arr.push_back({{"T", d.T}, {"location", d.location}, {"report", report_json(d.report)}});
        rec["drift"] = arr;
      } else {
        rec["report"] = report_json(find_extremum(curve_of(p), kind, p.s_lo, p.s_hi, p.tol));
      }
      out << rec.dump(2) << "\n";
    } else if (*thresh) {
      auto rep = thresholds(p.R, p.sigma, quad_config(p));
      json rec{{"R", rep.R},
               {"sigma", rep.sigma},
               {"M", rep.M},
               {"M_location", rep.M_location},
               {"m_sigma", rep.m_sigma},
               {"m_sigma_location", rep.m_sigma_location},
               {"r_Omega", rep.r_Omega},
               {"r_sigma_Omega", rep.r_sigma_Omega},
               {"truncated", rep.truncated}};
      out << rec.dump(2) << "\n";
    } else if (*oracle) {
      auto cases = oracle_suite();
      if (!p.oracle_name.empty()) {
        auto it = std::find_if(cases.begin(), cases.end(), [&](const OracleCase& c) { return c.name == p.oracle_name; });
        if (it == cases.end()) throw UsageError("unknown oracle comparison '" + p.oracle_name + "'");
        cases = {*it};
      }
      auto results = run_oracle_suite(cases);
      json arr = json::array();
      bool ok = true;
      for (const auto& c : results) {
        ok = ok && c.passed;
        arr.push_back({{"name", c.name},
                       {"primary", c.primary_value},
                       {"oracle", c.oracle_value},
                       {"rel_gap", c.rel_gap},
                       {"tolerance", c.tolerance},
                       {"passed", c.passed},
                       {"seconds", c.seconds}});
      }
      out << json{{"comparisons", arr}, {"all_passed", ok}}.dump(2) << "\n";
      return ok ? exit_ok : exit_numeric;
    }
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    out << json{{"error", e.what()}, {"kind", "domain"}, {"params", params_json(p)}}.dump(2) << "\n";
    return exit_numeric;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    out << json{{"error", e.what()},
                {"kind", "quadrature"},
                {"best_value", e.best_value()},
                {"best_error", e.best_error()},
                {"params", params_json(p)}}
               .dump(2)
        << "\n";
    return exit_numeric;
  } catch (const WriteError& e) {
    err << "error: " << e.what() << "\n";
    return exit_write;
  }
}

}  // namespace levycli
