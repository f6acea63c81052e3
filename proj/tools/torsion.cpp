// torsion: command-line front end for the boundary-gradient analysis library.
//
// Subcommands: predict, solve, failpoints, rectangle, sweep, reproduce.
// Exit codes: 0 success, 1 verdict failure, 2 configuration error,
// 3 numerical failure. Output file paths are echoed to stdout as JSON;
// human-readable summaries go to stderr (where --degrees applies).

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torsion/fail_point.hpp"
#include "torsion/geometry.hpp"
#include "torsion/io.hpp"
#include "torsion/perturbation.hpp"
#include "torsion/rectangle.hpp"
#include "torsion/torsion_solver.hpp"

namespace fs = std::filesystem;
namespace io = torsion::io;
using nlohmann::json;
using torsion::Arc;
using torsion::StarDomain;
using torsion::TrigPolynomial;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Collects every validation problem so the user sees one aggregated message.
struct Validator {
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void finish() const {
    if (problems.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
};

struct CommonOptions {
  std::string out_flag;
  std::string prefix;
  std::string config_path;
  bool force = false;
  bool degrees = false;

  fs::path out_dir() const {
    if (!out_flag.empty()) return out_flag;
    if (const char* env = std::getenv("TORSION_OUT"); env != nullptr && *env != '\0') {
      return env;
    }
    return "./out";
  }
};

void add_common(CLI::App* cmd, CommonOptions& common, const std::string& default_prefix) {
  common.prefix = default_prefix;
  cmd->add_option("--out", common.out_flag,
                  "output directory (default: $TORSION_OUT or ./out)");
  cmd->add_option("--prefix", common.prefix, "output file name prefix");
  cmd->add_option("--config", common.config_path,
                  "JSON file supplying any option not set on the command line");
  cmd->add_flag("--force", common.force, "overwrite existing output files");
  cmd->add_flag("--degrees", common.degrees,
                "show angles in degrees in the human-readable summary "
                "(files always use radians)");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw ConfigError("config file " + path + " is not valid JSON: " + err.what());
  }
}

// Fills an option from the config object when the command line left it unset.
template <class T>
void merge(const CLI::App* cmd, const std::string& flag, const json& cfg,
           const std::string& key, T& value) {
  if (cmd->count(flag) > 0) return;
  if (!cfg.contains(key)) return;
  try {
    value = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::optional<TrigPolynomial> parse_zeta(const std::string& text, Validator& v) {
  if (text.empty()) return std::nullopt;
  try {
    return io::trig_polynomial_from_json(text);
  } catch (const std::exception& err) {
    v.require(false, std::string("--zeta is not a valid profile: ") + err.what());
    return std::nullopt;
  }
}

std::string display_angle(double radians, bool degrees) {
  if (!degrees) return io::format_number(radians) + " rad";
  return io::format_number(radians * 180.0 / std::numbers::pi) + " deg";
}

void echo_outputs(const std::string& command,
                  const std::vector<std::pair<std::string, fs::path>>& outputs,
                  const std::string& case_name = "", std::optional<bool> passed = {}) {
  std::string out = "{\"command\":\"" + command + "\"";
  if (!case_name.empty()) out += ",\"case\":\"" + case_name + "\"";
  if (passed.has_value()) out += std::string(",\"passed\":") + (*passed ? "true" : "false");
  out += ",\"outputs\":{";
  for (size_t i = 0; i < outputs.size(); ++i) {
    if (i) out += ",";
    out += "\"" + outputs[i].first + "\":" + json(outputs[i].second.string()).dump();
  }
  out += "}}";
  std::cout << out << "\n";
}

std::string json_or_null(const std::optional<std::string>& value) {
  return value ? *value : "null";
}

// ---------------------------------------------------------------------------
// predict

struct PredictConfig {
  std::string zeta_text;
  double t = 0.005;  // used only to place contact points
  double arc_lo = 0.0;
  double arc_hi = torsion::two_pi;
  CommonOptions common;
};

int run_predict(const PredictConfig& cfg) {
  Validator v;
  v.require(!cfg.zeta_text.empty(), "--zeta is required");
  auto zeta = parse_zeta(cfg.zeta_text, v);
  v.require(cfg.arc_hi > cfg.arc_lo, "--arc-hi must exceed --arc-lo");
  v.finish();

  const Arc arc{cfg.arc_lo, cfg.arc_hi};
  const auto functional = torsion::fail_point_functional(*zeta);
  const auto linear = torsion::curvature_linear_term(*zeta);
  const auto fail = torsion::trig_profile_argmax(functional, arc);
  const auto curv_min = torsion::trig_profile_argmax(linear, arc);

  std::optional<std::string> contacts_json;
  std::optional<torsion::ContactPoints> contacts;
  if (zeta->even_modes_only() && cfg.t != 0.0) {
    auto all = torsion::contact_points(StarDomain(*zeta, cfg.t));
    if (!arc.full_circle()) {
      std::erase_if(all.angles, [&arc](double a) { return !arc.contains(a); });
    }
    contacts = all;
    contacts_json = io::contact_points_to_json(all);
  }

  std::string report = "{\"zeta\":" + io::trig_polynomial_to_json(*zeta);
  report += ",\"t\":" + io::format_number(cfg.t);
  report += ",\"arc\":[" + io::format_number(arc.lo) + "," + io::format_number(arc.hi) + "]";
  report += ",\"functional\":" + io::trig_polynomial_to_json(functional);
  report += ",\"curvature_linear_term\":" + io::trig_polynomial_to_json(linear);
  report += ",\"fail_point\":" + io::prediction_to_json(fail);
  report += ",\"curvature_min\":" + io::prediction_to_json(curv_min);
  report += ",\"contact_points\":" + json_or_null(contacts_json) + "}";

  const fs::path path = cfg.common.out_dir() / (cfg.common.prefix + "_prediction.json");
  io::write_file(path, report, cfg.common.force);

  std::ostringstream human;
  if (fail.degenerate) {
    human << "fail-point functional is constant: degenerate profile\n";
  } else {
    human << "predicted fail angle:     "
          << display_angle(fail.predicted_angle, cfg.common.degrees) << "\n";
  }
  if (curv_min.degenerate) {
    human << "curvature linear term is constant: degenerate profile\n";
  } else {
    human << "predicted curvature min:  "
          << display_angle(curv_min.predicted_angle, cfg.common.degrees) << "\n";
  }
  if (contacts) {
    human << "contact angles:          ";
    if (contacts->whole_boundary) {
      human << " whole boundary (circle)";
    } else {
      for (double a : contacts->angles) human << " " << display_angle(a, cfg.common.degrees);
    }
    human << "\n";
  }
  std::cerr << human.str();

  echo_outputs("predict", {{"prediction_json", path}});
  return 0;
}

// ---------------------------------------------------------------------------
// solve / failpoints

struct SolveConfig {
  std::string zeta_text;
  double t = 0.0;
  bool t_set = false;
  int degree = 32;
  int collocation = 256;
  int samples = 4096;
  double arc_lo = 0.0;
  double arc_hi = torsion::two_pi;
  CommonOptions common;
};

torsion::TorsionSolution checked_solve(const SolveConfig& cfg, Validator& v) {
  v.require(!cfg.zeta_text.empty(), "--zeta is required");
  v.require(cfg.t_set, "--t is required");
  auto zeta = parse_zeta(cfg.zeta_text, v);
  v.require(cfg.degree >= 1, "--K must be >= 1");
  v.require(cfg.collocation >= 4 * cfg.degree + 2, "--M must be >= 4K + 2");
  v.require(cfg.samples >= 2, "--samples must be >= 2");
  v.require(cfg.arc_hi > cfg.arc_lo, "--arc-hi must exceed --arc-lo");
  v.finish();

  torsion::SolverOptions options;
  options.degree = cfg.degree;
  options.collocation = cfg.collocation;
  return torsion::solve(StarDomain(*zeta, cfg.t), options);
}

int run_solve(const SolveConfig& cfg) {
  Validator v;
  const auto solution = checked_solve(cfg, v);
  const Arc arc{cfg.arc_lo, cfg.arc_hi};
  const auto profile = torsion::boundary_profile(solution, cfg.samples, arc);

  const fs::path csv = cfg.common.out_dir() / (cfg.common.prefix + "_profile.csv");
  const fs::path summary = cfg.common.out_dir() / (cfg.common.prefix + "_summary.json");
  io::write_file(csv, io::boundary_profile_csv(profile), cfg.common.force);
  io::write_file(summary, io::solution_summary_json(solution), cfg.common.force);

  std::cerr << "solved: K=" << solution.degree() << " M=" << solution.collocation_count()
            << " residual=" << io::format_number(solution.boundary_residual())
            << " condition=" << io::format_number(solution.condition_estimate()) << "\n";
  echo_outputs("solve", {{"profile_csv", csv}, {"summary_json", summary}});
  return 0;
}

int run_failpoints(const SolveConfig& cfg) {
  Validator v;
  const auto solution = checked_solve(cfg, v);
  const Arc arc{cfg.arc_lo, cfg.arc_hi};
  const auto result = torsion::find_fail_points(solution, arc, cfg.samples);

  std::vector<std::pair<std::string, fs::path>> outputs;
  const fs::path fp = cfg.common.out_dir() / (cfg.common.prefix + "_failpoints.json");
  io::write_file(fp, io::fail_point_result_json(result), cfg.common.force);
  outputs.emplace_back("failpoints_json", fp);

  const fs::path csv = cfg.common.out_dir() / (cfg.common.prefix + "_profile.csv");
  io::write_file(csv, io::boundary_profile_csv(result.profile), cfg.common.force);
  outputs.emplace_back("profile_csv", csv);

  if (solution.domain().centrally_symmetric()) {
    const auto report = torsion::distance_report(result, solution.domain());
    const fs::path dist = cfg.common.out_dir() / (cfg.common.prefix + "_distance.json");
    io::write_file(dist, io::distance_report_json(report), cfg.common.force);
    outputs.emplace_back("distance_json", dist);
  }

  if (result.degenerate) {
    std::cerr << "profile is constant within tolerance: degenerate (disk)\n";
  } else {
    std::cerr << "fail points (" << result.angles.size() << "):";
    for (size_t i = 0; i < result.angles.size(); ++i) {
      std::cerr << " " << display_angle(result.angles[i], cfg.common.degrees);
      if (result.endpoint[i]) std::cerr << " [endpoint]";
    }
    std::cerr << "\n";
  }
  echo_outputs("failpoints", outputs);
  return 0;
}

// ---------------------------------------------------------------------------
// rectangle

struct RectangleConfig {
  double half_length = 0.0;
  double half_width = 0.0;
  bool L_set = false;
  bool l_set = false;
  int terms = 30;
  int side_samples = 256;
  CommonOptions common;
};

int run_rectangle(const RectangleConfig& cfg) {
  Validator v;
  v.require(cfg.L_set, "--L is required");
  v.require(cfg.l_set, "--l is required");
  if (cfg.L_set && cfg.l_set) {
    v.require(cfg.half_width > 0.0 && cfg.half_length >= cfg.half_width,
              "rectangle requires L >= l > 0");
  }
  v.require(cfg.terms >= 8, "--terms must be >= 8");
  v.require(cfg.side_samples >= 128, "--side-samples must be >= 128");
  v.finish();

  const torsion::RectangleDomain domain(cfg.half_length, cfg.half_width);
  const auto result = torsion::rect_fail_points(domain, cfg.terms, cfg.side_samples);
  const auto cert = torsion::rect_monotonicity_certificate(domain, cfg.terms,
                                                           std::max(cfg.side_samples, 128));

  const fs::path sides = cfg.common.out_dir() / (cfg.common.prefix + "_sides.csv");
  const fs::path report = cfg.common.out_dir() / (cfg.common.prefix + "_failpoints.json");
  const fs::path cert_path = cfg.common.out_dir() / (cfg.common.prefix + "_certificate.json");
  io::write_file(sides, io::side_profiles_csv(result.profiles), cfg.common.force);
  io::write_file(report, io::rect_fail_points_json(result), cfg.common.force);
  io::write_file(cert_path, io::monotonicity_certificate_json(cert), cfg.common.force);

  std::cerr << "global |grad u| max " << io::format_number(result.max_value) << " at";
  for (const auto& sm : result.global_maxima) {
    std::cerr << " (" << io::format_number(sm.point[0]) << ", "
              << io::format_number(sm.point[1]) << ")";
  }
  std::cerr << "; u_xy certificate " << (cert.passed ? "positive" : "FAILED") << "\n";
  echo_outputs("rectangle",
               {{"sides_csv", sides}, {"failpoints_json", report}, {"certificate_json", cert_path}});
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  std::string zeta_text;
  std::vector<double> t_list;
  double arc_lo = 0.0;
  double arc_hi = torsion::two_pi;
  int degree = 32;
  int collocation = 256;
  int jobs = 0;
  CommonOptions common;
};

int run_sweep(const SweepConfig& cfg) {
  Validator v;
  v.require(!cfg.zeta_text.empty(), "--zeta is required");
  auto zeta = parse_zeta(cfg.zeta_text, v);
  v.require(!cfg.t_list.empty(), "--t-list is required");
  for (size_t i = 1; i < cfg.t_list.size(); ++i) {
    v.require(cfg.t_list[i] < cfg.t_list[i - 1], "--t-list must be strictly decreasing");
  }
  for (double t : cfg.t_list) v.require(t > 0.0, "--t-list entries must be positive");
  v.require(cfg.arc_hi > cfg.arc_lo, "--arc-hi must exceed --arc-lo");
  v.finish();

  torsion::SolverOptions options;
  options.degree = cfg.degree;
  options.collocation = cfg.collocation;
  const Arc arc{cfg.arc_lo, cfg.arc_hi};
  const auto table = torsion::convergence_sweep(*zeta, cfg.t_list, arc, options, cfg.jobs);
  const auto prediction = torsion::predict_fail_point(*zeta, arc);

  const fs::path csv = cfg.common.out_dir() / (cfg.common.prefix + "_convergence.csv");
  const fs::path pred = cfg.common.out_dir() / (cfg.common.prefix + "_prediction.json");
  io::write_file(csv, io::convergence_table_csv(table), cfg.common.force);
  io::write_file(pred, io::prediction_to_json(prediction), cfg.common.force);

  bool any_failed = false;
  for (const auto& row : table.rows) {
    if (!row.ok) {
      any_failed = true;
      std::cerr << "t=" << io::format_number(row.t) << ": " << row.message << "\n";
    } else {
      std::cerr << "t=" << io::format_number(row.t)
                << " fail angle " << display_angle(row.fail_angle_numeric, cfg.common.degrees)
                << " error " << io::format_number(row.abs_error) << "\n";
    }
  }
  echo_outputs("sweep", {{"convergence_csv", csv}, {"prediction_json", pred}});
  return any_failed ? 3 : 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Verdict {
  std::string case_name;
  std::vector<Check> checks;

  void add(const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({name, passed, detail});
  }
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  std::string to_json() const {
    std::string out = "{\"case\":\"" + case_name + "\"";
    out += std::string(",\"passed\":") + (passed() ? "true" : "false");
    out += ",\"checks\":[";
    for (size_t i = 0; i < checks.size(); ++i) {
      if (i) out += ",";
      out += "{\"name\":\"" + checks[i].name + "\"";
      out += std::string(",\"passed\":") + (checks[i].passed ? "true" : "false");
      out += ",\"detail\":" + json(checks[i].detail).dump() + "}";
    }
    return out + "]}";
  }
};

struct ReproduceConfig {
  std::string case_name;
  int jobs = 0;
  CommonOptions common;
};

// Largest deviation of the solved boundary |grad u|^2 from the first-order
// model over 1024 samples.
double first_order_deviation(const TrigPolynomial& zeta, double t) {
  const auto solution = torsion::solve(StarDomain(zeta, t));
  const auto functional = torsion::fail_point_functional(zeta);
  double worst = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double theta = torsion::two_pi * i / 1024;
    worst = std::max(worst, std::abs(solution.boundary_grad_sq(theta) -
                                     torsion::expansion_from_functional(functional, t, theta)));
  }
  return worst;
}

void check_first_order_ratios(Verdict& verdict, const TrigPolynomial& zeta, double t0) {
  const double d1 = first_order_deviation(zeta, t0);
  const double d2 = first_order_deviation(zeta, t0 / 2);
  const double d3 = first_order_deviation(zeta, t0 / 4);
  const double r1 = d1 / d2;
  const double r2 = d2 / d3;
  verdict.add("first_order_quadratic_decay",
              r1 >= 3.2 && r1 <= 4.8 && r2 >= 3.2 && r2 <= 4.8,
              "deviation ratios under t-halving: " + io::format_number(r1) + ", " +
                  io::format_number(r2) + " (target window [3.2, 4.8])");
}

int run_reproduce(const ReproduceConfig& cfg) {
  const std::vector<std::string> cases = {"faraway", "monotone", "rectangle",
                                          "local-min", "translation"};
  Validator v;
  v.require(std::find(cases.begin(), cases.end(), cfg.case_name) != cases.end(),
            "--case must be one of faraway|monotone|rectangle|local-min|translation");
  v.finish();

  const fs::path dir = cfg.common.out_dir();
  const bool force = cfg.common.force;
  const std::vector<double> t_list = {0.02, 0.01, 0.005};
  std::vector<std::pair<std::string, fs::path>> outputs;
  Verdict verdict;
  verdict.case_name = cfg.case_name;

  const auto write = [&](const std::string& tag, const fs::path& path,
                         const std::string& content) {
    io::write_file(path, content, force);
    outputs.emplace_back(tag, path);
  };

  if (cfg.case_name == "faraway") {
    const TrigPolynomial zeta({{2, -4.0}, {4, 1.0}}, {});
    const Arc arc{0.0, kHalfPi};

    const auto fail = torsion::predict_fail_point(zeta, arc);
    const auto curv = torsion::predict_curvature_min(zeta, arc);
    const double fail_ref = std::acos(std::sqrt(2.0 / 3.0));
    const double curv_ref = std::acos(std::sqrt(3.0 / 5.0));
    verdict.add("predicted_fail_angle", std::abs(fail.predicted_angle - fail_ref) <= 1e-10,
                io::format_number(fail.predicted_angle) + " vs arccos(sqrt(2/3)) = " +
                    io::format_number(fail_ref));
    verdict.add("predicted_curvature_min_angle",
                std::abs(curv.predicted_angle - curv_ref) <= 1e-10,
                io::format_number(curv.predicted_angle) + " vs arccos(sqrt(3/5)) = " +
                    io::format_number(curv_ref));

    const auto contacts = torsion::contact_points(StarDomain(zeta, 0.005));
    const bool contact_ok = contacts.angles.size() == 2 &&
                            std::abs(contacts.angles[0]) <= 1e-9 &&
                            std::abs(contacts.angles[1] - std::numbers::pi) <= 1e-9;
    verdict.add("contacts_on_short_axis", contact_ok,
                "inscribed-circle contacts at theta = 0 and pi");

    const auto table = torsion::convergence_sweep(zeta, t_list, arc, {}, cfg.jobs);
    bool rows_ok = true, monotone = true, ratios_ok = true;
    for (size_t i = 0; i < table.rows.size(); ++i) {
      rows_ok = rows_ok && table.rows[i].ok;
      if (i > 0) {
        monotone = monotone && table.rows[i].abs_error < table.rows[i - 1].abs_error;
        ratios_ok = ratios_ok && table.rows[i].error_ratio >= 1.4 &&
                    table.rows[i].error_ratio <= 2.8;
      }
    }
    verdict.add("sweep_solver_rows", rows_ok, "all sweep rows solved");
    verdict.add("fail_angle_error_decreasing", monotone, "numeric-vs-predicted error shrinks with t");
    verdict.add("final_error_bound", rows_ok && table.rows.back().abs_error <= 0.025,
                "error at t=0.005: " + io::format_number(table.rows.back().abs_error) +
                    " <= 0.025 rad");
    verdict.add("error_ratio_window", ratios_ok, "consecutive error ratios inside [1.4, 2.8]");
    write("convergence_csv", dir / "faraway_convergence.csv", io::convergence_table_csv(table));
    write("prediction_json", dir / "faraway_prediction.json", io::prediction_to_json(fail));

    check_first_order_ratios(verdict, zeta, 0.02);

    const auto solution = torsion::solve(StarDomain(zeta, 0.005));
    write("profile_csv", dir / "faraway_profile_t0.005.csv",
          io::boundary_profile_csv(torsion::boundary_profile(solution, 1024)));
  } else if (cfg.case_name == "monotone") {
    const TrigPolynomial zeta({{2, 13.0}, {4, -1.0}}, {});
    const Arc arc{0.0, kHalfPi};
    const double t = 0.005;

    const auto solution = torsion::solve(StarDomain(zeta, t));
    const auto mono = torsion::monotonicity_check(solution, arc, 512);
    verdict.add("gradient_strictly_increasing", mono.monotone && mono.increasing,
                "|grad u| along the first-quadrant arc at t = 0.005");

    const StarDomain domain(zeta, t);
    const auto kappa_mono = torsion::monotonicity_report(
        [&domain](double theta) { return torsion::curvature(domain, theta); }, arc, 512);
    verdict.add("curvature_not_monotone", !kappa_mono.monotone,
                "sign change of the curvature derivative on the same grid");

    const auto fp = torsion::find_fail_points(solution, arc);
    verdict.add("endpoint_fail_point",
                fp.angles.size() == 1 && fp.endpoint[0] &&
                    std::abs(fp.angles[0] - kHalfPi) <= 1e-7,
                "maximum at the arc endpoint pi/2");

    check_first_order_ratios(verdict, zeta, 0.005);

    write("profile_csv", dir / "monotone_profile_t0.005.csv",
          io::boundary_profile_csv(torsion::boundary_profile(solution, 1024)));
    write("monotonicity_json", dir / "monotone_monotonicity.json",
          io::monotonicity_report_json(mono));
    write("curvature_monotonicity_json", dir / "monotone_curvature.json",
          io::monotonicity_report_json(kappa_mono));
    write("failpoints_json", dir / "monotone_failpoints.json",
          io::fail_point_result_json(fp));
  } else if (cfg.case_name == "rectangle") {
    const std::vector<std::pair<double, double>> shapes = {{1.0, 1.0}, {2.0, 1.0}, {4.0, 1.0}};
    for (const auto& [L, l] : shapes) {
      const torsion::RectangleDomain domain(L, l);
      const auto result = torsion::rect_fail_points(domain, 30, 256);
      const auto cert = torsion::rect_monotonicity_certificate(domain, 30, 128);
      const std::string tag = "L" + io::format_number(L);

      if (L > l) {
        bool ok = result.global_maxima.size() == 2;
        for (const auto& sm : result.global_maxima) {
          ok = ok && (sm.side == torsion::Side::top || sm.side == torsion::Side::bottom) &&
               std::abs(sm.position) <= 1e-6;
        }
        verdict.add(tag + "_fail_at_long_side_midpoints", ok,
                    "global maxima at (0, +-l) only");
        const double gap = result.side_maxima[1].value - result.side_maxima[0].value;
        verdict.add(tag + "_long_side_dominates", gap > 1e-4,
                    "|grad u|(0,l) - |grad u|(L,0) = " + io::format_number(gap));
      } else {
        bool ok = result.global_maxima.size() == 4;
        double lo = result.side_maxima[0].value, hi = lo;
        for (const auto& sm : result.side_maxima) {
          lo = std::min(lo, sm.value);
          hi = std::max(hi, sm.value);
          ok = ok && std::abs(sm.position) <= 1e-6;
        }
        verdict.add(tag + "_four_midpoints_tie", ok && hi - lo <= 1e-9,
                    "all four side midpoints agree within 1e-9");
      }
      verdict.add(tag + "_mixed_derivative_positive", cert.passed,
                  "u_xy > 0 on the open quarter-sides (min " +
                      io::format_number(cert.min_value) + ")");
      write(tag + "_sides_csv", dir / ("rectangle_" + tag + "_sides.csv"),
            io::side_profiles_csv(result.profiles));
      write(tag + "_failpoints_json", dir / ("rectangle_" + tag + "_failpoints.json"),
            io::rect_fail_points_json(result));
    }
    // square midpoint value vs the plain N = 30 truncation
    const auto square = rect_eval(torsion::RectangleDomain(1.0, 1.0), 0.0, 1.0, 30);
    verdict.add("square_midpoint_value", std::abs(std::abs(square.grad[1]) - 0.67538) <= 1e-4,
                "|grad u|(0,1) = " + io::format_number(std::abs(square.grad[1])) +
                    " vs 0.67538");
  } else if (cfg.case_name == "local-min") {
    const TrigPolynomial zeta = TrigPolynomial::cosine(2, 1.0);
    double margin_005 = 0.0, margin_01 = 0.0;
    for (double t : {0.005, 0.01}) {
      const auto solution = torsion::solve(StarDomain(zeta, t));
      double peak = 0.0;
      for (int i = 0; i < 1024; ++i) {
        peak = std::max(peak, solution.boundary_grad_sq(torsion::two_pi * i / 1024));
      }
      const double margin = peak - 0.25;
      (t == 0.005 ? margin_005 : margin_01) = margin;
      verdict.add("dispersion_exceeds_disk_t" + io::format_number(t), margin > 0.0,
                  "max |grad u|^2 - 1/4 = " + io::format_number(margin));
      write("profile_csv_t" + io::format_number(t),
            dir / ("localmin_profile_t" + io::format_number(t) + ".csv"),
            io::boundary_profile_csv(torsion::boundary_profile(solution, 1024)));
    }
    const double growth = margin_01 / margin_005;
    verdict.add("margin_grows_linearly", growth >= 1.0 && growth <= 4.0,
                "margin(0.01)/margin(0.005) = " + io::format_number(growth) +
                    " (linear within factor 2)");

    std::string sv_csv = "t,saint_venant,deviation_from_disk,fitted_C\n";
    double prev_c = 0.0;
    bool sv_ok = true;
    for (double t : t_list) {
      const auto solution = torsion::solve(StarDomain(zeta, t));
      const double T = torsion::saint_venant_functional(solution);
      const double dev = std::abs(T - std::numbers::pi / 8);
      const double c = dev / (t * t);
      if (prev_c > 0.0) sv_ok = sv_ok && c / prev_c >= 0.5 && c / prev_c <= 2.0;
      prev_c = c;
      sv_csv += io::format_number(t) + "," + io::format_number(T) + "," +
                io::format_number(dev) + "," + io::format_number(c) + "\n";
    }
    verdict.add("saint_venant_critical", sv_ok,
                "|T - pi/8| = C t^2 with C stable under halving");
    write("saint_venant_csv", dir / "localmin_saint_venant.csv", sv_csv);
  } else {  // translation
    const TrigPolynomial zeta = TrigPolynomial::cosine(1, 1.0);
    std::string csv = "t,max_abs_deviation,fitted_C\n";
    double dev_02 = 0.0, dev_01 = 0.0;
    for (double t : {0.02, 0.01}) {
      const auto solution = torsion::solve(StarDomain(zeta, t));
      double worst = 0.0;
      for (int i = 0; i < 1024; ++i) {
        worst = std::max(worst,
                         std::abs(solution.boundary_grad_sq(torsion::two_pi * i / 1024) - 0.25));
      }
      (t == 0.02 ? dev_02 : dev_01) = worst;
      csv += io::format_number(t) + "," + io::format_number(worst) + "," +
             io::format_number(worst / (t * t)) + "\n";
    }
    const double c_ratio = (dev_01 / 1e-4) / (dev_02 / 4e-4);
    verdict.add("translation_invariance_quadratic", c_ratio >= 0.5 && c_ratio <= 2.0,
                "max |E - 1/4| = C t^2 with C ratio " + io::format_number(c_ratio));
    write("deviation_csv", dir / "translation_deviation.csv", csv);
  }

  const fs::path verdict_path = dir / (verdict.case_name + "_verdict.json");
  write("verdict_json", verdict_path, verdict.to_json());

  for (const auto& check : verdict.checks) {
    std::cerr << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail
              << "\n";
  }
  echo_outputs("reproduce", outputs, verdict.case_name, verdict.passed());
  return verdict.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary maxima of the torsion-function gradient: first-order "
               "predictions, a spectral solver oracle, and rectangle series"};
  app.require_subcommand(1);

  PredictConfig predict;
  auto* predict_cmd = app.add_subcommand(
      "predict", "first-order predictions (fail point, curvature min, contacts)");
  predict_cmd->add_option("--zeta", predict.zeta_text, "radial profile as JSON");
  predict_cmd->add_option("--t", predict.t, "amplitude used for contact points");
  predict_cmd->add_option("--arc-lo", predict.arc_lo, "search arc lower bound (rad)");
  predict_cmd->add_option("--arc-hi", predict.arc_hi, "search arc upper bound (rad)");
  add_common(predict_cmd, predict.common, "predict");

  SolveConfig solve_cfg;
  auto* solve_cmd = app.add_subcommand("solve", "solve the torsion problem on a star domain");
  auto add_solve_opts = [](CLI::App* cmd, SolveConfig& cfg) {
    cmd->add_option("--zeta", cfg.zeta_text, "radial profile as JSON");
    cmd->add_option("--t", cfg.t, "perturbation amplitude")->trigger_on_parse();
    cmd->add_option("--K", cfg.degree, "harmonic basis degree");
    cmd->add_option("--M", cfg.collocation, "boundary collocation points");
    cmd->add_option("--samples", cfg.samples, "boundary table samples");
    cmd->add_option("--arc-lo", cfg.arc_lo, "arc lower bound (rad)");
    cmd->add_option("--arc-hi", cfg.arc_hi, "arc upper bound (rad)");
  };
  add_solve_opts(solve_cmd, solve_cfg);
  add_common(solve_cmd, solve_cfg.common, "solve");

  SolveConfig fp_cfg;
  auto* fp_cmd = app.add_subcommand("failpoints", "locate boundary maxima of |grad u|");
  add_solve_opts(fp_cmd, fp_cfg);
  add_common(fp_cmd, fp_cfg.common, "failpoints");

  RectangleConfig rect_cfg;
  auto* rect_cmd = app.add_subcommand("rectangle", "exact series analysis on a rectangle");
  rect_cmd->add_option("--L", rect_cfg.half_length, "half-length (x)");
  rect_cmd->add_option("--l", rect_cfg.half_width, "half-width (y)");
  rect_cmd->add_option("--terms", rect_cfg.terms, "series truncation");
  rect_cmd->add_option("--side-samples", rect_cfg.side_samples, "samples per side");
  add_common(rect_cmd, rect_cfg.common, "rectangle");

  SweepConfig sweep_cfg;
  auto* sweep_cmd = app.add_subcommand("sweep", "fail-point convergence study over t");
  sweep_cmd->add_option("--zeta", sweep_cfg.zeta_text, "radial profile as JSON");
  sweep_cmd->add_option("--t-list", sweep_cfg.t_list, "strictly decreasing t values")
      ->delimiter(',');
  sweep_cmd->add_option("--arc-lo", sweep_cfg.arc_lo, "arc lower bound (rad)");
  sweep_cmd->add_option("--arc-hi", sweep_cfg.arc_hi, "arc upper bound (rad)");
  sweep_cmd->add_option("--K", sweep_cfg.degree, "harmonic basis degree");
  sweep_cmd->add_option("--M", sweep_cfg.collocation, "boundary collocation points");
  sweep_cmd->add_option("--jobs", sweep_cfg.jobs, "parallel solves (0 = all cores)");
  add_common(sweep_cmd, sweep_cfg.common, "sweep");

  ReproduceConfig rep_cfg;
  auto* rep_cmd = app.add_subcommand("reproduce", "run a named end-to-end case with verdicts");
  rep_cmd->add_option("--case", rep_cfg.case_name,
                      "faraway|monotone|rectangle|local-min|translation");
  rep_cmd->add_option("--jobs", rep_cfg.jobs, "parallel solves (0 = all cores)");
  add_common(rep_cmd, rep_cfg.common, "reproduce");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (predict_cmd->parsed()) {
      const json cfg = load_config(predict.common.config_path);
      merge(predict_cmd, "--zeta", cfg, "zeta", predict.zeta_text);
      if (predict_cmd->count("--zeta") == 0 && cfg.contains("zeta") && cfg.at("zeta").is_object()) {
        predict.zeta_text = cfg.at("zeta").dump();
      }
      merge(predict_cmd, "--t", cfg, "t", predict.t);
      merge(predict_cmd, "--arc-lo", cfg, "arc_lo", predict.arc_lo);
      merge(predict_cmd, "--arc-hi", cfg, "arc_hi", predict.arc_hi);
      return run_predict(predict);
    }
    const auto merge_solve = [&](CLI::App* cmd, SolveConfig& cfg_struct) {
      const json cfg = load_config(cfg_struct.common.config_path);
      if (cmd->count("--zeta") == 0 && cfg.contains("zeta")) {
        cfg_struct.zeta_text =
            cfg.at("zeta").is_object() ? cfg.at("zeta").dump() : cfg.at("zeta").get<std::string>();
      }
      cfg_struct.t_set = cmd->count("--t") > 0;
      if (!cfg_struct.t_set && cfg.contains("t")) {
        cfg_struct.t = cfg.at("t").get<double>();
        cfg_struct.t_set = true;
      }
      merge(cmd, "--K", cfg, "K", cfg_struct.degree);
      merge(cmd, "--M", cfg, "M", cfg_struct.collocation);
      merge(cmd, "--samples", cfg, "samples", cfg_struct.samples);
      merge(cmd, "--arc-lo", cfg, "arc_lo", cfg_struct.arc_lo);
      merge(cmd, "--arc-hi", cfg, "arc_hi", cfg_struct.arc_hi);
    };
    if (solve_cmd->parsed()) {
      merge_solve(solve_cmd, solve_cfg);
      return run_solve(solve_cfg);
    }
    if (fp_cmd->parsed()) {
      merge_solve(fp_cmd, fp_cfg);
      return run_failpoints(fp_cfg);
    }
    if (rect_cmd->parsed()) {
      const json cfg = load_config(rect_cfg.common.config_path);
      rect_cfg.L_set = rect_cmd->count("--L") > 0;
      rect_cfg.l_set = rect_cmd->count("--l") > 0;
      if (!rect_cfg.L_set && cfg.contains("L")) {
        rect_cfg.half_length = cfg.at("L").get<double>();
        rect_cfg.L_set = true;
      }
      if (!rect_cfg.l_set && cfg.contains("l")) {
        rect_cfg.half_width = cfg.at("l").get<double>();
        rect_cfg.l_set = true;
      }
      merge(rect_cmd, "--terms", cfg, "terms", rect_cfg.terms);
      merge(rect_cmd, "--side-samples", cfg, "side_samples", rect_cfg.side_samples);
      return run_rectangle(rect_cfg);
    }
    if (sweep_cmd->parsed()) {
      const json cfg = load_config(sweep_cfg.common.config_path);
      if (sweep_cmd->count("--zeta") == 0 && cfg.contains("zeta")) {
        sweep_cfg.zeta_text =
            cfg.at("zeta").is_object() ? cfg.at("zeta").dump() : cfg.at("zeta").get<std::string>();
      }
      merge(sweep_cmd, "--t-list", cfg, "t_list", sweep_cfg.t_list);
      merge(sweep_cmd, "--arc-lo", cfg, "arc_lo", sweep_cfg.arc_lo);
      merge(sweep_cmd, "--arc-hi", cfg, "arc_hi", sweep_cfg.arc_hi);
      merge(sweep_cmd, "--K", cfg, "K", sweep_cfg.degree);
      merge(sweep_cmd, "--M", cfg, "M", sweep_cfg.collocation);
      merge(sweep_cmd, "--jobs", cfg, "jobs", sweep_cfg.jobs);
      return run_sweep(sweep_cfg);
    }
    if (rep_cmd->parsed()) {
      const json cfg = load_config(rep_cfg.common.config_path);
      merge(rep_cmd, "--case", cfg, "case", rep_cfg.case_name);
      merge(rep_cmd, "--jobs", cfg, "jobs", rep_cfg.jobs);
      return run_reproduce(rep_cfg);
    }
  } catch (const ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const io::FileExistsError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const torsion::SolverError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& err) {
    std::cerr << "invalid configuration: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
