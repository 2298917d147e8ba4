#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "thermopauli/series1.hpp"

namespace thermopauli {

// Data of the truncated problem: the two families of real coefficients,
// both indexed 1..n0 (element 0 of the vectors holds the order-1 value).
// The underlying series are normalized to constant term 1.
template <class R>
struct TropicalProblem {
  int n0 = 0;
  std::vector<R> u;
  std::vector<R> w;
};

struct TropicalTolerances {
  double w2 = 1e-9;           // order-2 consistency, relative
  double degenerate = 1e-12;  // |q - (3 u1 w1)^2| < degenerate * max(1, |q|)
  double clamp_D = 1e-12;     // D in [-clamp_D, 0) is treated as 0
  double bracket = 1e-12;     // recursion-system determinant threshold
};

template <class R>
struct TropicalDiagnostics {
  R q{};
  R D{};
  bool cond_w2 = false;
  bool cond_q = false;
  bool degenerate = false;
};

template <class R>
struct TropicalSolution {
  int branch = 0;
  std::vector<R> lambda;  // 1..n0
  std::vector<R> rho;     // 1..n0
  double residual_norm = 0.0;
};

namespace detail {

template <class R>
void validate_tropical(const TropicalProblem<R>& p) {
  if (p.n0 < 4) throw truncation_error("tropical problem needs degree >= 4");
  if (static_cast<int>(p.u.size()) != p.n0 || static_cast<int>(p.w.size()) != p.n0)
    throw truncation_error("tropical problem: coefficient lists must have length n0");
}

// Iterated link-operator values T_n for the series 1 + sum (u_m + i lambda_m) x^m/m!.
// Entries of lambda beyond its length are treated as zero.
template <class R>
std::vector<complex_of_t<R>> link_values(const std::vector<R>& u, const std::vector<R>& lambda,
                                         int n_upto) {
  using CX = complex_of_t<R>;
  TruncatedSeries1<CX> f(n_upto, "x");
  f.at(0) = field<CX>::from_int(1);
  for (int m = 1; m <= n_upto; ++m) {
    R re = (m <= static_cast<int>(u.size())) ? u[static_cast<std::size_t>(m - 1)] : R{};
    R im = (m <= static_cast<int>(lambda.size())) ? lambda[static_cast<std::size_t>(m - 1)] : R{};
    f.at(m) = field<CX>::make(re, im);
  }
  return legendre_link_seq(f, n_upto);
}

// Multiply by (-i)^n.
template <class CX>
CX rotate_back(const CX& z, int n) {
  using fld = field<CX>;
  switch (n & 3) {
    case 0: return z;
    case 1: return fld::make(fld::im(z), -fld::re(z));
    case 2: return -z;
    default: return fld::make(-fld::im(z), fld::re(z));
  }
}

}  // namespace detail

// Constant term q of the quadratic on the order-2 coefficient,
// lambda_2^2 + 6 u1 w1 lambda_2 + q = 0, assembled from the input data.
template <class R>
R tropical_q(const TropicalProblem<R>& p) {
  using CX = complex_of_t<R>;
  detail::validate_tropical(p);
  const R &u1 = p.u[0], &u2 = p.u[1], &u3 = p.u[2], &u4 = p.u[3];
  const R &w1 = p.w[0], &w3 = p.w[2], &w4 = p.w[3];
  const CX z = field<CX>::make(u1, -w1);
  const CX z3 = z * z * z;
  const CX z4 = z3 * z;
  const R two = field<R>::from_int(2), three = field<R>::from_int(3);
  const R ten = field<R>::from_int(10), fifteen = field<R>::from_int(15);
  const R c105 = field<R>::from_int(105);
  R odd_part = w3 - ten * w1 * u2 - fifteen * field<CX>::im(z3);
  R even_part = w4 + u4 - fifteen * u1 * u3 - ten * u2 * u2 +
                c105 * (u1 * u1 - w1 * w1) * u2 - c105 * field<CX>::re(z4);
  return -(three * w1 / two) * odd_part + even_part / ten;
}

template <class R>
TropicalDiagnostics<R> check_admissibility(const TropicalProblem<R>& p,
                                           const TropicalTolerances& tol = {}) {
  detail::validate_tropical(p);
  TropicalDiagnostics<R> d;
  const R &u1 = p.u[0], &u2 = p.u[1], &w1 = p.w[0], &w2 = p.w[1];
  const R three = field<R>::from_int(3);
  const R w2_expected = u2 - three * (u1 * u1 - w1 * w1);
  d.cond_w2 = detail::within(w2 - w2_expected, w2_expected, tol.w2);
  d.q = tropical_q(p);
  const R s = field<R>::from_int(3) * u1 * w1;
  d.D = field<R>::from_int(4) * (s * s - d.q);  // (6 u1 w1)^2 - 4q
  d.degenerate = detail::within(d.q - s * s, d.q, tol.degenerate);
  d.cond_q = !d.degenerate;
  return d;
}

// Independent residual of the derivative-link equations: for n = 1..n0
// compare i^n (w_n + i rho_n) against the n-fold link-operator value computed
// from scratch out of (u, lambda).  Returns the max coefficient residual.
template <class R>
double verify_tropical(const TropicalProblem<R>& p, const TropicalSolution<R>& s) {
  using CX = complex_of_t<R>;
  detail::validate_tropical(p);
  if (static_cast<int>(s.lambda.size()) != p.n0 || static_cast<int>(s.rho.size()) != p.n0)
    throw truncation_error("tropical solution: coefficient lists must have length n0");
  const std::vector<CX> t = detail::link_values(p.u, s.lambda, p.n0);
  double worst = 0.0;
  for (int n = 1; n <= p.n0; ++n) {
    // lhs = i^n (w_n + i rho_n)  <=>  (w_n + i rho_n) - (-i)^n T_n = 0
    const CX lhs = field<CX>::make(p.w[static_cast<std::size_t>(n - 1)],
                                   s.rho[static_cast<std::size_t>(n - 1)]);
    const CX diff = lhs - detail::rotate_back(t[static_cast<std::size_t>(n)], n);
    const double r = abs_ri(diff);
    if (r > worst) worst = r;
  }
  return worst;
}

// Order-by-order reconstruction.  Returns two branches for positive
// discriminant, one for a vanishing (or clamped) discriminant.
template <class R>
std::vector<TropicalSolution<R>> solve_tropical(const TropicalProblem<R>& p,
                                                const TropicalTolerances& tol = {}) {
  using CX = complex_of_t<R>;
  detail::validate_tropical(p);
  const TropicalDiagnostics<R> diag = check_admissibility(p, tol);
  if (!diag.cond_w2)
    throw inconsistent_input_error("order-2 condition violated: w2 != u2 - 3(u1^2 - w1^2)");
  if (diag.degenerate) throw degenerate_error("degenerate: q equals (3 u1 w1)^2");
  R D = diag.D;
  bool coalesced = false;
  if constexpr (!field<R>::exact) {
    const double d = field<R>::re_d(D);
    if (d < 0.0 && d >= -tol.clamp_D) {
      D = R{};
      coalesced = true;
    }
  }
  {
    const double d = field<R>::re_d(D);
    if (d < 0.0) throw no_real_solution_error("negative discriminant: no real solution branch");
    if (field<R>::is_zero(D)) coalesced = true;
  }
  const R sqrtD = sqrt_scalar(D);
  const R u1 = p.u[0], w1 = p.w[0];
  const R half = field<R>::from_ratio(1, 2);
  const R minus_6u1w1 = -field<R>::from_int(6) * u1 * w1;

  std::vector<TropicalSolution<R>> out;
  const int branch_count = coalesced ? 1 : 2;
  for (int branch = 0; branch < branch_count; ++branch) {
    TropicalSolution<R> sol;
    sol.branch = branch;
    std::vector<R>& lam = sol.lambda;
    lam.assign(static_cast<std::size_t>(p.n0), R{});
    lam[0] = -w1;
    lam[1] = (branch == 0) ? R((minus_6u1w1 + sqrtD) * half) : R((minus_6u1w1 - sqrtD) * half);

    // Order 3 from the imaginary projection of the third link equation.
    {
      const CX z = field<CX>::make(u1, -w1);
      const R im_z3 = field<CX>::im(z * z * z);
      lam[2] = p.w[2] + field<R>::from_int(10) * (u1 * lam[1] - w1 * p.u[1]) -
               field<R>::from_int(15) * im_z3;
    }

    // Pairs (lambda_{2k}, lambda_{2k+1}) for k >= 2 from the equations of
    // orders 2k+1 (imaginary projection) and 2k+2 (real projection).  Both
    // are affine in the two unknowns, so three evaluations pin the system.
    auto residual_pair = [&](int k, const R& t_even, const R& t_odd) -> std::pair<R, R> {
      std::vector<R> trial = lam;
      trial[static_cast<std::size_t>(2 * k - 1)] = t_even;  // lambda_{2k}
      trial[static_cast<std::size_t>(2 * k)] = t_odd;       // lambda_{2k+1}
      const std::vector<CX> t = detail::link_values(p.u, trial, 2 * k + 2);
      const R sign_odd = (k % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
      const R sign_even = -sign_odd;  // (-1)^{k+1}
      const R r1 = field<CX>::im(t[static_cast<std::size_t>(2 * k + 1)]) -
                   sign_odd * p.w[static_cast<std::size_t>(2 * k)];
      const R r2 = field<CX>::re(t[static_cast<std::size_t>(2 * k + 2)]) -
                   sign_even * p.w[static_cast<std::size_t>(2 * k + 1)];
      return {r1, r2};
    };
    for (int k = 2; 2 * k + 2 <= p.n0; ++k) {
      const R zero{}, one = field<R>::from_int(1);
      const auto [r10, r20] = residual_pair(k, zero, zero);
      const auto [r1a, r2a] = residual_pair(k, one, zero);
      const auto [r1b, r2b] = residual_pair(k, zero, one);
      const R a11 = r1a - r10, a12 = r1b - r10;
      const R a21 = r2a - r20, a22 = r2b - r20;
      const R det = a11 * a22 - a12 * a21;
      bool singular;
      if constexpr (field<R>::exact) {
        singular = (det == 0);
      } else {
        double scale = std::abs(field<R>::re_d(a11)) + std::abs(field<R>::re_d(a12)) +
                       std::abs(field<R>::re_d(a21)) + std::abs(field<R>::re_d(a22));
        if (scale < 1.0) scale = 1.0;
        singular = std::abs(field<R>::re_d(det)) < tol.bracket * scale;
      }
      if (singular)
        throw degenerate_error("vanishing recursion bracket at order " + std::to_string(2 * k + 2));
      lam[static_cast<std::size_t>(2 * k - 1)] = (a12 * r20 - a22 * r10) / det;
      lam[static_cast<std::size_t>(2 * k)] = (a21 * r10 - a11 * r20) / det;
      if constexpr (!field<R>::exact) {
        // The system is affine, so re-solving on the leftover residual strips
        // the first solve's round-off (plain iterative refinement).
        for (int pass = 0; pass < 2; ++pass) {
          const auto [e1, e2] = residual_pair(k, lam[static_cast<std::size_t>(2 * k - 1)],
                                              lam[static_cast<std::size_t>(2 * k)]);
          lam[static_cast<std::size_t>(2 * k - 1)] += (a12 * e2 - a22 * e1) / det;
          lam[static_cast<std::size_t>(2 * k)] += (a21 * e1 - a11 * e2) / det;
        }
      }
    }

    // Top of the ladder.  The truncated equations never reach the highest
    // even coefficient, which stays a gauge choice pinned to zero; for odd
    // n0 the last equation still determines the top odd coefficient.
    if (p.n0 % 2 == 1) {
      const int n = p.n0;
      lam[static_cast<std::size_t>(n - 2)] = R{};  // lambda_{n0-1} gauge
      const R sign_odd = ((n - 1) / 2 % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
      auto residual_top = [&](const R& t_odd) -> R {
        std::vector<R> trial = lam;
        trial[static_cast<std::size_t>(n - 1)] = t_odd;
        const std::vector<CX> t = detail::link_values(p.u, trial, n);
        return field<CX>::im(t[static_cast<std::size_t>(n)]) -
               sign_odd * p.w[static_cast<std::size_t>(n - 1)];
      };
      const R r0 = residual_top(R{});
      const R slope = residual_top(field<R>::from_int(1)) - r0;
      if (field<R>::is_zero(slope))
        throw degenerate_error("vanishing recursion bracket at order " + std::to_string(n));
      lam[static_cast<std::size_t>(n - 1)] = -r0 / slope;
      if constexpr (!field<R>::exact) {
        for (int pass = 0; pass < 2; ++pass)
          lam[static_cast<std::size_t>(n - 1)] -=
              residual_top(lam[static_cast<std::size_t>(n - 1)]) / slope;
      }
    }
    // (even n0: lambda_{n0} stays 0, the gauge representative)

    // All imaginary parts known; read the rho ladder off the link values.
    const std::vector<CX> t = detail::link_values(p.u, lam, p.n0);
    sol.rho.assign(static_cast<std::size_t>(p.n0), R{});
    for (int n = 1; n <= p.n0; ++n)
      sol.rho[static_cast<std::size_t>(n - 1)] =
          field<CX>::im(detail::rotate_back(t[static_cast<std::size_t>(n)], n));

    sol.residual_norm = verify_tropical(p, sol);
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace thermopauli
