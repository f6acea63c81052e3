#include "torsion/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace torsion::io {

namespace {

std::string number_or_null(double value) {
  if (!std::isfinite(value)) return "null";
  return format_number(value);
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

const char* type_str(CriticalType type) {
  switch (type) {
    case CriticalType::maximum: return "max";
    case CriticalType::minimum: return "min";
    case CriticalType::inflection: return "inflection";
  }
  return "?";
}

template <class T, class F>
std::string join(const std::vector<T>& items, const F& fmt) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += fmt(items[i]);
  }
  return out;
}

std::string number_array(const std::vector<double>& values) {
  return "[" + join(values, [](double v) { return number_or_null(v); }) + "]";
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

std::string trig_polynomial_to_json(const TrigPolynomial& p) {
  const auto coeff_map = [](const std::map<int, double>& m) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : m) {
      if (!first) out += ",";
      first = false;
      out += "\"" + std::to_string(k) + "\":" + format_number(v);
    }
    return out + "}";
  };
  return "{\"cos\":" + coeff_map(p.cos_coeffs()) + ",\"sin\":" + coeff_map(p.sin_coeffs()) + "}";
}

TrigPolynomial trig_polynomial_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("trig polynomial JSON must be an object");
  std::map<int, double> cos_coeffs, sin_coeffs;
  const auto read = [](const nlohmann::json& obj, std::map<int, double>& into) {
    for (const auto& [key, value] : obj.items()) {
      size_t pos = 0;
      const int mode = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument("mode keys must be integers");
      if (!value.is_number()) throw std::invalid_argument("coefficients must be numbers");
      into[mode] = value.get<double>();
    }
  };
  if (j.contains("cos")) read(j.at("cos"), cos_coeffs);
  if (j.contains("sin")) read(j.at("sin"), sin_coeffs);
  return TrigPolynomial(std::move(cos_coeffs), std::move(sin_coeffs));
}

std::string prediction_to_json(const FailPointPrediction& prediction) {
  std::string out = "{";
  out += "\"degenerate\":" + std::string(bool_str(prediction.degenerate));
  if (prediction.degenerate) {
    out += ",\"predicted_angle\":null";
    out += ",\"predicted_value\":" + number_or_null(prediction.predicted_value);
    out += ",\"nondegenerate\":null,\"critical_points\":[]}";
    return out;
  }
  out += ",\"predicted_angle\":" + format_number(prediction.predicted_angle);
  out += ",\"predicted_value\":" + format_number(prediction.predicted_value);
  out += ",\"nondegenerate\":";
  switch (prediction.nondegeneracy) {
    case Nondegeneracy::nondegenerate: out += "true"; break;
    case Nondegeneracy::degenerate: out += "false"; break;
    case Nondegeneracy::not_applicable: out += "null"; break;
  }
  out += ",\"critical_points\":[";
  out += join(prediction.critical_points, [](const CriticalPoint& cp) {
    std::string s = "{\"angle\":" + format_number(cp.angle);
    s += ",\"value\":" + format_number(cp.value);
    s += ",\"type\":\"" + std::string(type_str(cp.type)) + "\"";
    s += ",\"endpoint\":" + std::string(bool_str(cp.endpoint)) + "}";
    return s;
  });
  out += "]}";
  return out;
}

std::string contact_points_to_json(const ContactPoints& contacts) {
  std::string out = "{\"whole_boundary\":";
  out += bool_str(contacts.whole_boundary);
  out += ",\"min_radius\":" + format_number(contacts.min_radius);
  out += ",\"angles\":" + number_array(contacts.angles) + "}";
  return out;
}

std::string solution_summary_json(const TorsionSolution& solution) {
  std::string out = "{";
  out += "\"K\":" + std::to_string(solution.degree());
  out += ",\"M\":" + std::to_string(solution.collocation_count());
  out += ",\"t\":" + format_number(solution.domain().t());
  out += ",\"residual\":" + format_number(solution.boundary_residual());
  out += ",\"condition_estimate\":" + format_number(solution.condition_estimate());
  out += ",\"basis_scale\":" + format_number(solution.basis_scale()) + "}";
  return out;
}

std::string fail_point_result_json(const FailPointResult& result) {
  std::string out = "{\"degenerate\":";
  out += bool_str(result.degenerate);
  out += ",\"max_value\":" + number_or_null(result.max_value);
  out += ",\"angles\":" + number_array(result.angles);
  out += ",\"symmetry_group\":[" +
         join(result.symmetry_group, [](int g) { return std::to_string(g); }) + "]";
  out += ",\"endpoint\":[";
  for (size_t i = 0; i < result.endpoint.size(); ++i) {
    if (i) out += ",";
    out += bool_str(result.endpoint[i]);
  }
  out += "],\"refinement_converged\":";
  out += bool_str(result.refinement_converged);
  out += "}";
  return out;
}

std::string monotonicity_report_json(const MonotonicityReport& report) {
  std::string out = "{\"monotone\":";
  out += bool_str(report.monotone);
  out += ",\"increasing\":";
  out += bool_str(report.increasing);
  out += ",\"samples\":" + std::to_string(report.samples);
  out += ",\"sign_changes\":[" +
         join(report.sign_changes,
              [](const std::array<double, 2>& iv) {
                return "[" + format_number(iv[0]) + "," + format_number(iv[1]) + "]";
              }) +
         "]}";
  return out;
}

std::string distance_report_json(const DistanceReport& report) {
  std::string out = "{\"degenerate\":";
  out += bool_str(report.degenerate);
  if (report.degenerate) {
    out += ",\"distance\":null,\"diameter\":null,\"ratio\":null";
  } else {
    out += ",\"distance\":" + format_number(report.distance);
    out += ",\"diameter\":" + format_number(report.diameter);
    out += ",\"ratio\":" + format_number(report.ratio);
  }
  out += ",\"fail_angles\":" + number_array(report.fail_angles);
  out += ",\"contact_angles\":" + number_array(report.contact_angles) + "}";
  return out;
}

namespace {
std::string side_maximum_json(const SideMaximum& sm) {
  std::string s = "{\"side\":\"" + side_name(sm.side) + "\"";
  s += ",\"position\":" + format_number(sm.position);
  s += ",\"value\":" + format_number(sm.value);
  s += ",\"point\":[" + format_number(sm.point[0]) + "," + format_number(sm.point[1]) + "]}";
  return s;
}
}  // namespace

std::string rect_fail_points_json(const RectFailPoints& result) {
  std::string out = "{\"max_value\":" + format_number(result.max_value);
  out += ",\"side_maxima\":[" + join(result.side_maxima, side_maximum_json) + "]";
  out += ",\"global_maxima\":[" + join(result.global_maxima, side_maximum_json) + "]}";
  return out;
}

std::string monotonicity_certificate_json(const MonotonicityCertificate& cert) {
  std::string out = "{\"passed\":";
  out += bool_str(cert.passed);
  out += ",\"min_value\":" + format_number(cert.min_value);
  out += ",\"min_side\":\"" + side_name(cert.min_side) + "\"";
  out += ",\"min_position\":" + format_number(cert.min_position);
  out += ",\"samples_per_side\":" + std::to_string(cert.samples_per_side) + "}";
  return out;
}

std::string boundary_profile_csv(const BoundaryProfile& profile) {
  std::string out = "theta,r,kappa,grad_sq_numeric,grad_sq_firstorder,F\n";
  for (const auto& row : profile.rows) {
    out += format_number(row.theta) + "," + format_number(row.r) + "," +
           format_number(row.kappa) + "," + format_number(row.grad_sq_numeric) + "," +
           format_number(row.grad_sq_firstorder) + "," + format_number(row.f_value) + "\n";
  }
  return out;
}

std::string convergence_table_csv(const ConvergenceTable& table) {
  std::string out = "t,fail_angle_numeric,fail_angle_predicted,abs_error,error_ratio\n";
  for (const auto& row : table.rows) {
    out += format_number(row.t) + ",";
    out += (row.ok ? format_number(row.fail_angle_numeric) : std::string()) + ",";
    out += format_number(row.fail_angle_predicted) + ",";
    out += (row.ok ? format_number(row.abs_error) : std::string()) + ",";
    out += std::isfinite(row.error_ratio) ? format_number(row.error_ratio) : std::string();
    out += "\n";
  }
  return out;
}

std::string side_profiles_csv(const std::vector<SideProfile>& profiles) {
  std::string out = "side,arc_param,grad_norm\n";
  for (const auto& profile : profiles) {
    const std::string name = side_name(profile.side);
    for (size_t i = 0; i < profile.arc_param.size(); ++i) {
      out += name + "," + format_number(profile.arc_param[i]) + "," +
             format_number(profile.grad_norm[i]) + "\n";
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content,
                bool force) {
  namespace fs = std::filesystem;
  if (!force && fs::exists(path)) {
    throw FileExistsError("refusing to overwrite " + path.string() +
                          " (pass --force to replace)");
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace torsion::io
