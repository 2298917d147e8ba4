#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermopauli/errors.hpp"

// Brute-force verification backends.  Everything here is deliberately
// independent of the series and solver code paths it is used to check:
// quadrature, finite differences, and grid search share no numerical kernels
// with the rest of the library.
namespace thermopauli::oracle {

struct QuadratureGrid {
  std::vector<double> points;
  std::vector<double> weights;  // effective weights: sum_i w_i f(x_i) ~ integral over R
  std::string scheme;
  double gamma = 1.0;  // Gaussian scale the grid was tuned for
};

// Gauss-Hermite rule rescaled for integrands decaying like exp(-(x/gamma)^2).
// Nodes from the Golub-Welsch tridiagonal eigenproblem, polished by Newton on
// the orthonormal recurrence; weights via the Christoffel sums (overflow-free
// for n <= 200).
QuadratureGrid gauss_hermite_grid(int n, double gamma = 1.0);

// Uniform trapezoid rule on [-cutoff, cutoff]; the blunt fallback.
QuadratureGrid trapezoid_grid(int n, double cutoff);

double integrate(const QuadratureGrid& grid, const std::function<double(double)>& fn);
std::complex<double> integrate(const QuadratureGrid& grid,
                               const std::function<std::complex<double>(double)>& fn);

// (2 pi h)^{-1/2} integral of e^{-i y x / h} fn(x); the unitary convention.
std::complex<double> h_fourier_quadrature(const std::function<std::complex<double>(double)>& fn,
                                          double h, const QuadratureGrid& grid, double y);

// Tensor-product version for small dimensions; one grid per axis.
std::complex<double> h_fourier_quadrature(
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& fn, double h,
    const std::vector<QuadratureGrid>& grids, const Eigen::VectorXd& y);

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;  // spread of the last extrapolation step
};

// Richardson-extrapolated central differences; orders 0..6 only.
DerivativeEstimate finite_diff_derivatives(const std::function<double(double)>& fn, double at,
                                           int order);

// sup_E [fn(E) - beta*E] over the grid with golden-section refinement around
// the best interior sample.  A maximizer on the boundary is inconclusive.
double grid_legendre(const std::function<double(double)>& fn, double beta,
                     const std::vector<double>& grid);

}  // namespace thermopauli::oracle
