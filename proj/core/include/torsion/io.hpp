#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsion/fail_point.hpp"
#include "torsion/geometry.hpp"
#include "torsion/perturbation.hpp"
#include "torsion/rectangle.hpp"
#include "torsion/torsion_solver.hpp"
#include "torsion/trig_polynomial.hpp"

namespace torsion::io {

/// Shortest-of-15-significant-digits decimal form ("%.15g"); all numeric
/// file output goes through this, which keeps identical configs
/// byte-identical.
std::string format_number(double value);

/// {"cos": {"0": c0, ...}, "sin": {...}} with string integer keys.
std::string trig_polynomial_to_json(const TrigPolynomial& p);
TrigPolynomial trig_polynomial_from_json(const std::string& text);

std::string prediction_to_json(const FailPointPrediction& prediction);
std::string contact_points_to_json(const ContactPoints& contacts);
std::string solution_summary_json(const TorsionSolution& solution);
std::string fail_point_result_json(const FailPointResult& result);
std::string monotonicity_report_json(const MonotonicityReport& report);
std::string distance_report_json(const DistanceReport& report);
std::string rect_fail_points_json(const RectFailPoints& result);
std::string monotonicity_certificate_json(const MonotonicityCertificate& cert);

/// CSV bodies, LF line endings, headers exactly as documented.
std::string boundary_profile_csv(const BoundaryProfile& profile);
std::string convergence_table_csv(const ConvergenceTable& table);
std::string side_profiles_csv(const std::vector<SideProfile>& profiles);

class FileExistsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Writes content to path (parent directories created); refuses to replace
/// an existing file unless force is set.
void write_file(const std::filesystem::path& path, const std::string& content,
                bool force);

}  // namespace torsion::io
