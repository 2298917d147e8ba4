#include "thermopauli/oracle.hpp"

#include <cmath>
#include <cstdlib>

namespace thermopauli::oracle {

namespace {

// Orthonormal Hermite functions w.r.t. weight e^{-x^2}: value of the degree-n
// member and, via the ladder identity, its derivative.
double hermite_orthonormal(int n, double x, double* deriv = nullptr) {
  const double h0 = std::pow(M_PI, -0.25);
  double hk = h0;        // degree 0
  double hk_prev = 0.0;  // degree -1
  for (int k = 0; k < n; ++k) {
    const double hk_next =
        x * std::sqrt(2.0 / (k + 1)) * hk - std::sqrt(static_cast<double>(k) / (k + 1)) * hk_prev;
    hk_prev = hk;
    hk = hk_next;
  }
  if (deriv) *deriv = (n > 0) ? std::sqrt(2.0 * n) * hk_prev : 0.0;
  return hk;
}

}  // namespace

QuadratureGrid gauss_hermite_grid(int n, double gamma) {
  if (n < 1 || n > 200) throw truncation_error("gauss_hermite_grid: node count out of range");
  if (!(gamma > 0.0)) throw truncation_error("gauss_hermite_grid: scale must be positive");

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(k / 2.0);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  if (es.info() != Eigen::Success)
    throw convergence_error("gauss_hermite_grid: eigensolver failed");

  QuadratureGrid grid;
  grid.scheme = "gauss_hermite";
  grid.gamma = gamma;
  grid.points.resize(static_cast<std::size_t>(n));
  grid.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      double dp = 0.0;
      const double p = hermite_orthonormal(n, t, &dp);
      if (dp == 0.0) break;
      const double step = p / dp;
      t -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
    }
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double hk = hermite_orthonormal(k, t);
      sum += hk * hk;
    }
    const double w = 1.0 / sum;  // Christoffel number for weight e^{-t^2}
    grid.points[static_cast<std::size_t>(i)] = gamma * t;
    grid.weights[static_cast<std::size_t>(i)] = gamma * w * std::exp(t * t);
  }

  // The rule must reproduce the Gaussian normalizer exactly: the effective
  // weights against e^{-(x/gamma)^2} sum to gamma*sqrt(pi).
  double check = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = grid.points[static_cast<std::size_t>(i)] / gamma;
    check += grid.weights[static_cast<std::size_t>(i)] * std::exp(-t * t);
  }
  if (std::abs(check - gamma * std::sqrt(M_PI)) > 1e-10 * gamma)
    throw convergence_error("gauss_hermite_grid: normalization check failed");
  return grid;
}

QuadratureGrid trapezoid_grid(int n, double cutoff) {
  if (n < 2) throw truncation_error("trapezoid_grid: need at least two nodes");
  if (!(cutoff > 0.0)) throw truncation_error("trapezoid_grid: cutoff must be positive");
  QuadratureGrid grid;
  grid.scheme = "trapezoid";
  grid.gamma = cutoff;
  const double step = 2.0 * cutoff / (n - 1);
  grid.points.resize(static_cast<std::size_t>(n));
  grid.weights.assign(static_cast<std::size_t>(n), step);
  for (int i = 0; i < n; ++i) grid.points[static_cast<std::size_t>(i)] = -cutoff + step * i;
  grid.weights.front() = step / 2.0;
  grid.weights.back() = step / 2.0;
  return grid;
}

double integrate(const QuadratureGrid& grid, const std::function<double(double)>& fn) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) acc += grid.weights[i] * fn(grid.points[i]);
  return acc;
}

std::complex<double> integrate(const QuadratureGrid& grid,
                               const std::function<std::complex<double>(double)>& fn) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) acc += grid.weights[i] * fn(grid.points[i]);
  return acc;
}

std::complex<double> h_fourier_quadrature(const std::function<std::complex<double>(double)>& fn,
                                          double h, const QuadratureGrid& grid, double y) {
  if (!(h > 0.0)) throw truncation_error("h_fourier_quadrature: h must be positive");
  const std::complex<double> minus_i_over_h(0.0, -1.0 / h);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double x = grid.points[i];
    acc += grid.weights[i] * std::exp(minus_i_over_h * (y * x)) * fn(x);
  }
  return acc / std::sqrt(2.0 * M_PI * h);
}

std::complex<double> h_fourier_quadrature(
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& fn, double h,
    const std::vector<QuadratureGrid>& grids, const Eigen::VectorXd& y) {
  if (!(h > 0.0)) throw truncation_error("h_fourier_quadrature: h must be positive");
  const int dim = static_cast<int>(grids.size());
  if (dim < 1 || y.size() != dim)
    throw truncation_error("h_fourier_quadrature: grid/point dimension mismatch");
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  Eigen::VectorXd x(dim);
  std::complex<double> acc = 0.0;
  const std::complex<double> minus_i_over_h(0.0, -1.0 / h);
  for (;;) {
    double w = 1.0;
    double phase = 0.0;
    for (int a = 0; a < dim; ++a) {
      const auto& g = grids[static_cast<std::size_t>(a)];
      x(a) = g.points[idx[static_cast<std::size_t>(a)]];
      w *= g.weights[idx[static_cast<std::size_t>(a)]];
      phase += y(a) * x(a);
    }
    acc += w * std::exp(minus_i_over_h * phase) * fn(x);
    int a = 0;
    while (a < dim) {
      if (++idx[static_cast<std::size_t>(a)] < grids[static_cast<std::size_t>(a)].points.size())
        break;
      idx[static_cast<std::size_t>(a)] = 0;
      ++a;
    }
    if (a == dim) break;
  }
  return acc * std::pow(2.0 * M_PI * h, -0.5 * dim);
}

DerivativeEstimate finite_diff_derivatives(const std::function<double(double)>& fn, double at,
                                           int order) {
  if (order < 0 || order > 6) throw truncation_error("finite_diff_derivatives: order 0..6 only");
  if (order == 0) return {fn(at), 0.0};

  // Central stencils with O(h^2) truncation error, offsets symmetric around 0.
  struct Stencil {
    int radius;
    double coeff[7];  // for offsets -radius..radius
    int hpow;
  };
  static const Stencil stencils[6] = {
      {1, {-0.5, 0.0, 0.5, 0, 0, 0, 0}, 1},
      {1, {1.0, -2.0, 1.0, 0, 0, 0, 0}, 2},
      {2, {-0.5, 1.0, 0.0, -1.0, 0.5, 0, 0}, 3},
      {2, {1.0, -4.0, 6.0, -4.0, 1.0, 0, 0}, 4},
      {3, {-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5}, 5},
      {3, {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}, 6},
  };
  const Stencil& st = stencils[order - 1];

  auto estimate = [&](double h) {
    double acc = 0.0;
    for (int o = -st.radius; o <= st.radius; ++o)
      acc += st.coeff[o + st.radius] * fn(at + o * h);
    return acc / std::pow(h, st.hpow);
  };

  // Three Richardson rounds on the O(h^2) ladder.  The base step balances
  // truncation against round-off: the eps/h^order noise floor pushes the
  // high-order stencils toward wider spacing, while low orders profit from
  // staying close to the expansion point.
  static const double base_step[6] = {0.05, 0.08, 0.12, 0.18, 0.25, 0.4};
  const double h0 = base_step[order - 1] * (1.0 + std::abs(at));
  constexpr int levels = 4;
  double tableau[levels];
  for (int i = 0; i < levels; ++i) tableau[i] = estimate(h0 / std::pow(2.0, i));
  double prev_best = tableau[levels - 1];
  double pow4 = 1.0;
  for (int round = 1; round < levels; ++round) {
    pow4 *= 4.0;
    for (int i = 0; i < levels - round; ++i)
      tableau[i] = (pow4 * tableau[i + 1] - tableau[i]) / (pow4 - 1.0);
    if (round == levels - 2) prev_best = tableau[0];
  }
  return {tableau[0], std::abs(tableau[0] - prev_best)};
}

double grid_legendre(const std::function<double(double)>& fn, double beta,
                     const std::vector<double>& grid) {
  if (grid.size() < 3) throw truncation_error("grid_legendre: need at least three grid points");
  auto objective = [&](double e) { return fn(e) - beta * e; };
  std::size_t best = 0;
  double best_val = objective(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = objective(grid[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == grid.size())
    throw convergence_error("grid_legendre: inconclusive, maximizer at grid boundary");

  // Golden-section refinement inside the bracketing interval.
  double lo = grid[best - 1], hi = grid[best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  return objective((lo + hi) / 2.0);
}

}  // namespace thermopauli::oracle
