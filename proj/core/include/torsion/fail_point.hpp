#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torsion/geometry.hpp"
#include "torsion/torsion_solver.hpp"

namespace torsion {

/// Maxima of a boundary profile. All angles attaining the global maximum
/// within tol_E = 1e-9 (relative) are reported; angles that are images of
/// one another under the reflection symmetries of zeta share a group label.
struct FailPointResult {
  bool degenerate = false;  ///< profile constant within tolerance (disk)
  std::vector<double> angles;
  std::vector<int> symmetry_group;  ///< per angle; same label = same orbit
  std::vector<bool> endpoint;       ///< per angle: lies on an arc endpoint
  double max_value = 0.0;
  bool refinement_converged = true;
  BoundaryProfile profile;
};

/// Dense sampling of |grad u|^2 on the boundary, local maxima refined by
/// golden section plus a parabolic polish, ties grouped by symmetry.
FailPointResult find_fail_points(const TorsionSolution& solution, Arc arc = {},
                                 int samples = 4096);

/// Same search on an arbitrary smooth profile (no BoundaryProfile attached).
/// reflect / antipodal enable grouping under theta -> -theta / theta + pi.
FailPointResult find_profile_max(const std::function<double(double)>& profile,
                                 Arc arc, int samples = 4096,
                                 bool reflect_symmetric = false,
                                 bool antipodal_symmetric = false);

struct MonotonicityReport {
  bool monotone = false;
  bool increasing = false;  ///< dominant direction when monotone
  int samples = 0;
  /// Sample intervals whose finite difference opposes the dominant sign
  /// (or vanishes); empty iff monotone.
  std::vector<std::array<double, 2>> sign_changes;
};

/// Finite-difference sign pattern of the sampled profile along the arc,
/// endpoint-adjacent differences excluded. samples >= 512.
MonotonicityReport monotonicity_check(const TorsionSolution& solution, Arc arc,
                                      int samples = 512);
MonotonicityReport monotonicity_report(const std::function<double(double)>& profile,
                                       Arc arc, int samples);

struct ConvergenceRow {
  double t = 0.0;
  double fail_angle_numeric = 0.0;
  double fail_angle_predicted = 0.0;
  double abs_error = 0.0;
  double error_ratio = 0.0;  ///< abs_error(previous row) / abs_error(this row); NaN on row 0
  bool ok = false;
  std::string message;  ///< solver failure description when !ok
};

struct ConvergenceTable {
  double predicted_angle = 0.0;
  std::vector<ConvergenceRow> rows;  ///< t strictly decreasing
};

/// For each t: solve, locate the numeric fail point, compare with the
/// first-order prediction. Rows run in parallel (jobs <= 0: all cores);
/// assembly is in input order and solver failures only mark their row.
ConvergenceTable convergence_sweep(const TrigPolynomial& zeta,
                                   const std::vector<double>& t_list, Arc arc = {},
                                   const SolverOptions& options = {}, int jobs = 0);

struct DistanceReport {
  bool degenerate = false;  ///< fail or contact set fills the whole circle
  double distance = 0.0;    ///< min Euclidean distance between the two sets
  double diameter = 0.0;    ///< max pairwise boundary distance
  double ratio = 0.0;       ///< distance / diameter
  std::vector<double> fail_angles;
  std::vector<double> contact_angles;
};

/// Exploratory gap measure between fail points and inscribed-circle contact
/// points, normalized by the diameter. Centrally symmetric domains only.
DistanceReport distance_report(const FailPointResult& result, const StarDomain& domain);

}  // namespace torsion
