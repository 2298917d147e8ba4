#include "thermopauli/fluctuations.hpp"

#include <cmath>
#include <utility>

namespace thermopauli {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_vec(const Eigen::VectorXd& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw inconsistent_input_error(std::string(what) + " has wrong dimension");
}

double gaussian_density(const Eigen::MatrixXd& a, double kb, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(a.rows());
  const double quad = x.dot(a * x);
  return std::sqrt(a.determinant()) * std::pow(2.0 * kPi * kb, -0.5 * n) * std::exp(-quad / (2.0 * kb));
}

// Raw moment of a scalar Gaussian with the given mean and variance.
double gaussian_raw_moment(double mean, double var, int power) {
  switch (power) {
    case 0:
      return 1.0;
    case 1:
      return mean;
    case 2:
      return var + mean * mean;
    case 3:
      return mean * mean * mean + 3.0 * mean * var;
    case 4:
      return 3.0 * var * var + 6.0 * var * mean * mean + std::pow(mean, 4);
    default:
      throw truncation_error(
          "closed-form Gaussian moments stop at power 4; integrate with the quadrature oracle");
  }
}

std::complex<double> branch_alpha(const CoherentPair& pair, int branch) {
  if (branch != 0 && branch != 1) throw inconsistent_input_error("branch index must be 0 or 1");
  const double s = (branch == 0) ? pair.sigma : -pair.sigma;
  return {1.0, pair.h * s};
}

void check_pair(const CoherentPair& pair) {
  if (!(pair.h > 0.0)) throw inconsistent_input_error("pair scale h must be positive");
}

}  // namespace

FluctKernel make_fluct_kernel(Eigen::MatrixXd a, double kB) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw inconsistent_input_error("kernel matrix must be square and non-empty");
  if (!(kB > 0.0)) throw inconsistent_input_error("kB must be positive");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw inconsistent_input_error("kernel matrix must be symmetric");
  a = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
    throw inconsistent_input_error("kernel matrix must be positive definite");
  return FluctKernel{std::move(a), kB, 2.0 * kB};
}

CoherentState make_coherent_state(FluctKernel kernel, Eigen::VectorXd x0, Eigen::VectorXd y0) {
  check_vec(x0, kernel.dim(), "x0");
  check_vec(y0, kernel.dim(), "y0");
  return CoherentState{std::move(kernel), std::move(x0), std::move(y0)};
}

double GaussianWavefunction::norm_factor() const {
  const int n = dim();
  return std::pow(2.0, 0.25 * n) * std::pow(A.determinant(), 0.25) * std::pow(2.0 * kPi * h, -0.25 * n);
}

std::complex<double> GaussianWavefunction::evaluate(const Eigen::VectorXd& x) const {
  check_vec(x, dim(), "evaluation point");
  const Eigen::VectorXd d = x - x0;
  const double quad = d.dot(A * d);
  const std::complex<double> mod(0.0, y0.dot(x) / h);
  return phase * norm_factor() * std::exp(-quad / (2.0 * h) + mod);
}

double density_extensive(const FluctKernel& k, const Eigen::VectorXd& x) {
  check_vec(x, k.dim(), "x");
  return gaussian_density(k.A, k.kB, x);
}

double density_intensive(const FluctKernel& k, const Eigen::VectorXd& y) {
  check_vec(y, k.dim(), "y");
  return gaussian_density(k.A.inverse(), k.kB, y);
}

GaussianWavefunction build_wavefunction(const FluctKernel& k) {
  GaussianWavefunction w;
  w.A = k.A;
  w.h = k.h;
  w.x0 = Eigen::VectorXd::Zero(k.dim());
  w.y0 = Eigen::VectorXd::Zero(k.dim());
  return w;
}

GaussianWavefunction to_wavefunction(const CoherentState& s) {
  GaussianWavefunction w = build_wavefunction(s.kernel);
  w.x0 = s.x0;
  w.y0 = s.y0;
  return w;
}

GaussianWavefunction h_fourier_analytic(const GaussianWavefunction& w) {
  GaussianWavefunction out;
  out.A = w.A.inverse();
  out.A = 0.5 * (out.A + out.A.transpose());
  out.h = w.h;
  out.x0 = w.y0;
  out.y0 = -w.x0;
  out.phase = w.phase * std::exp(std::complex<double>(0.0, w.x0.dot(w.y0) / w.h));
  return out;
}

GaussianWavefunction h_fourier_analytic(const CoherentState& s) {
  return h_fourier_analytic(to_wavefunction(s));
}

double moments(const CoherentState& s, MomentKind kind, int j, int power) {
  if (j < 0 || j >= s.kernel.dim()) throw inconsistent_input_error("coordinate index out of range");
  if (power < 0) throw inconsistent_input_error("moment power must be non-negative");
  double mean, var;
  if (kind == MomentKind::delta_e) {
    mean = s.x0(j);
    var = s.kernel.kB * s.kernel.A.inverse()(j, j);
  } else {
    mean = s.y0(j);
    var = s.kernel.kB * s.kernel.A(j, j);
  }
  return gaussian_raw_moment(mean, var, power);
}

double symmetrized_covariance(const CoherentState& s, int j, int l) {
  const int d = s.kernel.dim();
  if (j < 0 || j >= d || l < 0 || l >= d)
    throw inconsistent_input_error("coordinate index out of range");
  // <(P_j Q_l + Q_l P_j)/2> for a Gaussian coherent state: the fluctuation
  // parts cancel against the commutator, leaving the mean offsets alone.
  return s.y0(j) * s.x0(l);
}

Eigen::VectorXd landau_lifshits_map(const Eigen::MatrixXd& hess_block, const Eigen::VectorXd& de) {
  if (hess_block.rows() != hess_block.cols())
    throw inconsistent_input_error("hessian block must be square");
  check_vec(de, static_cast<int>(hess_block.rows()), "displacement");
  return hess_block * de;
}

std::complex<double> branch_state_value(const CoherentPair& pair, int branch, double x) {
  check_pair(pair);
  const std::complex<double> alpha = branch_alpha(pair, branch);
  return std::pow(kPi * pair.h, -0.25) * std::exp(-alpha * (x * x) / (2.0 * pair.h));
}

std::complex<double> pair_overlap(const CoherentPair& pair, int a, int b) {
  check_pair(pair);
  const std::complex<double> gamma = 0.5 * (std::conj(branch_alpha(pair, a)) + branch_alpha(pair, b));
  return std::pow(gamma, -0.5);
}

std::complex<double> pair_q2(const CoherentPair& pair, int a, int b) {
  const std::complex<double> gamma = 0.5 * (std::conj(branch_alpha(pair, a)) + branch_alpha(pair, b));
  return pair_overlap(pair, a, b) * pair.h / (2.0 * gamma);
}

std::complex<double> pair_p2(const CoherentPair& pair, int a, int b) {
  const std::complex<double> aa = std::conj(branch_alpha(pair, a));
  const std::complex<double> ab = branch_alpha(pair, b);
  const std::complex<double> gamma = 0.5 * (aa + ab);
  return pair_overlap(pair, a, b) * pair.h * aa * ab / (2.0 * gamma);
}

std::complex<double> pair_r(const CoherentPair& pair, int a, int b) {
  const std::complex<double> aa = std::conj(branch_alpha(pair, a));
  const std::complex<double> ab = branch_alpha(pair, b);
  const std::complex<double> gamma = 0.5 * (aa + ab);
  return pair_overlap(pair, a, b) * std::complex<double>(0.0, 0.5 * pair.h) * (ab - aa) / (2.0 * gamma);
}

Eigen::Matrix2cd gram_example5(const CoherentPair& pair) {
  Eigen::Matrix2cd g;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) g(a, b) = pair_overlap(pair, a, b);
  return g;
}

double symmetrized_covariance(const CoherentPair& pair, int branch) {
  return pair_r(pair, branch, branch).real();
}

DeformedMoments deformed_moments(const CoherentPair& pair, const DensityMatrix2& p) {
  check_pair(pair);
  if (pair.sigma == 0.0)
    throw degenerate_error("the two branch states coincide at sigma = 0; no two-state basis");
  const Eigen::Matrix2cd& rho = p.p;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw inconsistent_input_error("statistical operator must be Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw inconsistent_input_error("statistical operator must have unit trace");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw inconsistent_input_error("statistical operator must be positive semidefinite");

  // Gram-Schmidt in coefficient form: psi columns in the raw phi basis.
  const std::complex<double> s = pair_overlap(pair, 0, 1);
  const double w = std::sqrt(1.0 - std::norm(s));
  Eigen::Matrix2cd t;
  t << 1.0, -s / w, 0.0, 1.0 / w;

  auto observe = [&](std::complex<double> (*element)(const CoherentPair&, int, int)) {
    Eigen::Matrix2cd raw;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) raw(a, b) = element(pair, a, b);
    const Eigen::Matrix2cd ortho = t.adjoint() * raw * t;
    return (ortho * rho).trace().real();
  };

  DeformedMoments out;
  out.var_e = observe(&pair_q2);
  out.var_beta = observe(&pair_p2);
  out.cov = observe(&pair_r);
  return out;
}

}  // namespace thermopauli
