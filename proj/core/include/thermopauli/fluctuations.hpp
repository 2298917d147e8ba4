#pragma once

#include <complex>

#include <Eigen/Dense>

#include "thermopauli/errors.hpp"

namespace thermopauli {

// Gaussian fluctuation kernel: A is the negated entropy Hessian block over
// the fluctuating coordinates.  The quantum-like scale is pinned to h = 2 kB.
struct FluctKernel {
  Eigen::MatrixXd A;
  double kB = 1.0;
  double h = 2.0;

  int dim() const { return static_cast<int>(A.rows()); }
};

FluctKernel make_fluct_kernel(Eigen::MatrixXd a, double kB);

struct CoherentState {
  FluctKernel kernel;
  Eigen::VectorXd x0;  // mean fluctuation of the extensive coordinates
  Eigen::VectorXd y0;  // mean fluctuation of the intensive coordinates
};

CoherentState make_coherent_state(FluctKernel kernel, Eigen::VectorXd x0, Eigen::VectorXd y0);

// psi(x) = phase * exp(i y0.x / h) * phi_h(x - x0; A), with
// phi_h(x; A) = 2^{n/4} det(A)^{1/4} (2 pi h)^{-n/4} exp(-x^T A x / (2h)).
struct GaussianWavefunction {
  Eigen::MatrixXd A;
  double h = 2.0;
  Eigen::VectorXd x0;
  Eigen::VectorXd y0;
  std::complex<double> phase{1.0, 0.0};

  int dim() const { return static_cast<int>(A.rows()); }
  double norm_factor() const;
  std::complex<double> evaluate(const Eigen::VectorXd& x) const;
};

double density_extensive(const FluctKernel& k, const Eigen::VectorXd& x);
double density_intensive(const FluctKernel& k, const Eigen::VectorXd& y);

GaussianWavefunction build_wavefunction(const FluctKernel& k);
GaussianWavefunction to_wavefunction(const CoherentState& s);

// Closed-form h-Fourier transform (kernel e^{-iyx/h}, unitary prefactor):
// A -> A^{-1}, (x0, y0) -> (y0, -x0), global phase gains e^{i x0.y0 / h}.
GaussianWavefunction h_fourier_analytic(const GaussianWavefunction& w);
GaussianWavefunction h_fourier_analytic(const CoherentState& s);

enum class MomentKind { delta_e, delta_beta };

// Raw moment <(delta .)^m> of coordinate j; closed form up to power 4.
double moments(const CoherentState& s, MomentKind kind, int j, int power);

// Expectation of (P_j Q_l + Q_l P_j)/2; vanishes for centered states.
double symmetrized_covariance(const CoherentState& s, int j, int l);

// Delta beta = S'' . Delta E, the deterministic equations-of-state link.
Eigen::VectorXd landau_lifshits_map(const Eigen::MatrixXd& hess_block, const Eigen::VectorXd& de);

// The deformed two-state family: branch m has Gaussian parameter
// alpha_0 = 1 + i h sigma, alpha_1 = 1 - i h sigma, both of unit L2 norm.
struct CoherentPair {
  double sigma = 0.0;
  double h = 2.0;
};

struct DensityMatrix2 {
  Eigen::Matrix2cd p;
};

std::complex<double> branch_state_value(const CoherentPair& pair, int branch, double x);

// Matrix elements between the raw branch states, exposed for cross-checks.
std::complex<double> pair_overlap(const CoherentPair& pair, int a, int b);
std::complex<double> pair_q2(const CoherentPair& pair, int a, int b);
std::complex<double> pair_p2(const CoherentPair& pair, int a, int b);
std::complex<double> pair_r(const CoherentPair& pair, int a, int b);

Eigen::Matrix2cd gram_example5(const CoherentPair& pair);

// <phi^(branch) | (PQ+QP)/2 | phi^(branch)>; real, and odd in sigma.
double symmetrized_covariance(const CoherentPair& pair, int branch);

struct DeformedMoments {
  double var_e = 0.0;
  double var_beta = 0.0;
  double cov = 0.0;
};

// Observables of a 2x2 statistical operator over the orthonormalized pair.
DeformedMoments deformed_moments(const CoherentPair& pair, const DensityMatrix2& p);

}  // namespace thermopauli
