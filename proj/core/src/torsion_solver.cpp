#include "torsion/torsion_solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>

#include "torsion/perturbation.hpp"

namespace torsion {

namespace {

// h = Re f(z), f(z) = c0 + sum_k (a_k - i b_k) (z/R)^k. Returns f and f'.
struct HarmonicPart {
  std::complex<double> f;
  std::complex<double> fprime;
};

HarmonicPart evaluate_harmonic(const std::vector<double>& coeffs, double scale,
                               std::complex<double> z) {
  const int degree = static_cast<int>((coeffs.size() - 1) / 2);
  const std::complex<double> w = z / scale;
  std::complex<double> f{coeffs[0], 0.0};
  std::complex<double> fp{0.0, 0.0};
  // Horner on the scaled variable; fp accumulates d/dw, rescaled at the end.
  std::complex<double> acc{0.0, 0.0};
  std::complex<double> acc_p{0.0, 0.0};
  for (int k = degree; k >= 1; --k) {
    const std::complex<double> alpha{coeffs[2 * k - 1], -coeffs[2 * k]};
    acc_p = acc_p * w + acc;
    acc = acc * w + alpha;
  }
  acc_p = acc_p * w + acc;  // now acc_p = sum k>=1 alpha_k k w^{k-1} ... see below
  f += acc * w;
  fp = acc_p / scale;
  return {f, fp};
}

}  // namespace

double TorsionSolution::value(double r, double theta) const {
  const std::complex<double> z = std::polar(r, theta);
  const auto h = evaluate_harmonic(coeffs_, scale_, z);
  return h.f.real() - 0.25 * r * r;
}

std::array<double, 2> TorsionSolution::gradient(double r, double theta) const {
  const std::complex<double> z = std::polar(r, theta);
  const auto h = evaluate_harmonic(coeffs_, scale_, z);
  // grad Re f = (Re f', -Im f'); particular part -|x|^2/4 adds -x/2.
  return {h.fprime.real() - 0.5 * z.real(), -h.fprime.imag() - 0.5 * z.imag()};
}

double TorsionSolution::boundary_grad_sq(double theta) const {
  const auto g = gradient(domain_.radius(theta), theta);
  return g[0] * g[0] + g[1] * g[1];
}

TorsionSolution::Eval TorsionSolution::interior_eval(double r, double theta) const {
  const double rb = domain_.radius(theta);
  if (r < 0.0 || r > rb * (1.0 + 1e-12)) {
    throw std::domain_error("evaluation point lies outside the closed domain");
  }
  return {value(r, theta), gradient(r, theta)};
}

TorsionSolution solve(const StarDomain& domain, const SolverOptions& options) {
  const int K = options.degree;
  const int M = options.collocation;
  if (K < 1) throw std::invalid_argument("solver degree must be >= 1");
  if (M < 4 * K + 2) {
    throw std::invalid_argument("collocation points must satisfy M >= 4K + 2");
  }

  TorsionSolution solution(domain);
  solution.degree_ = K;
  solution.collocation_ = M;

  // Bounding radius of the collocation points normalizes each basis column
  // to unit max modulus.
  double scale = 0.0;
  for (int j = 0; j < M; ++j) {
    scale = std::max(scale, domain.radius(two_pi * j / M));
  }
  solution.scale_ = scale;

  const int cols = 2 * K + 1;
  Eigen::MatrixXd A(M, cols);
  Eigen::VectorXd b(M);
  for (int j = 0; j < M; ++j) {
    const double theta = two_pi * j / M;
    const double r = domain.radius(theta);
    const double rho = r / scale;
    b(j) = 0.25 * r * r;
    A(j, 0) = 1.0;
    double rk = 1.0;
    for (int k = 1; k <= K; ++k) {
      rk *= rho;
      A(j, 2 * k - 1) = rk * std::cos(k * theta);
      A(j, 2 * k) = rk * std::sin(k * theta);
    }
  }

  {
    const Eigen::VectorXd sv = A.bdcSvd().singularValues();
    const double smin = sv(sv.size() - 1);
    solution.condition_estimate_ = smin > 0.0 ? sv(0) / smin
                                              : std::numeric_limits<double>::infinity();
  }
  if (!(solution.condition_estimate_ < options.condition_limit)) {
    throw SolverError(SolverError::Kind::ill_conditioned,
                      "collocation matrix condition " +
                          std::to_string(solution.condition_estimate_) +
                          " exceeds limit; lower the degree K or the perturbation t");
  }

  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  solution.coeffs_.assign(x.data(), x.data() + cols);

  // Residual on the collocation grid shifted by half a spacing.
  double residual = 0.0;
  for (int j = 0; j < M; ++j) {
    const double theta = two_pi * (j + 0.5) / M;
    const double r = domain.radius(theta);
    residual = std::max(residual, std::abs(solution.value(r, theta)));
  }
  solution.boundary_residual_ = residual;
  if (!(residual <= options.rtol)) {
    throw SolverError(SolverError::Kind::residual,
                      "boundary residual " + std::to_string(residual) +
                          " misses tolerance; raise K/M or shrink the perturbation");
  }
  return solution;
}

double boundary_grad_sq(const TorsionSolution& solution, double theta) {
  return solution.boundary_grad_sq(theta);
}

double saint_venant_functional(const TorsionSolution& solution, int theta_samples) {
  using gauss = boost::math::quadrature::gauss<double, 40>;
  double total = 0.0;
  for (int j = 0; j < theta_samples; ++j) {
    const double theta = two_pi * j / theta_samples;
    const double rb = solution.domain().radius(theta);
    const auto ray = [&solution, theta](double r) {
      return solution.value(r, theta) * r;
    };
    total += gauss::integrate(ray, 0.0, rb);
  }
  return total * two_pi / theta_samples;
}

BoundaryProfile boundary_profile(const TorsionSolution& solution, int samples, Arc arc) {
  if (samples < 2) throw std::invalid_argument("profile needs at least 2 samples");
  BoundaryProfile profile;
  const StarDomain& domain = solution.domain();
  profile.t = domain.t();
  profile.degree = solution.degree();
  profile.samples = samples;
  profile.residual = solution.boundary_residual();
  profile.rows.reserve(samples);

  const TrigPolynomial functional = fail_point_functional(domain.zeta());
  const bool periodic = arc.full_circle();
  const double step = arc.length() / (periodic ? samples : samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double theta = arc.lo + step * i;
    BoundaryProfile::Row row;
    row.theta = theta;
    row.r = domain.radius(theta);
    row.kappa = curvature(domain, theta);
    row.grad_sq_numeric = solution.boundary_grad_sq(theta);
    row.grad_sq_firstorder = expansion_from_functional(functional, domain.t(), theta);
    row.f_value = functional(theta);
    if (!(row.grad_sq_numeric > 0.0)) {
      throw SolverError(SolverError::Kind::residual,
                        "boundary gradient vanished at theta = " + std::to_string(theta) +
                            "; solution is not resolved");
    }
    profile.rows.push_back(row);
  }
  return profile;
}

}  // namespace torsion
