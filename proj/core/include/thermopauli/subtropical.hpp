#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "thermopauli/series2.hpp"

namespace thermopauli {

// Deformed reconstruction problem: both coefficient tables live on the same
// (m0, n0) truncation window, h-slices 0..m0 and x-orders 0..n0.  The data
// are treated as polynomials of the stated degrees.
template <class R>
struct SubtropicalProblem {
  int m0 = 0;
  int n0 = 0;
  TruncatedSeries2<R> A;
  TruncatedSeries2<R> B;
};

struct SubtropicalTolerances {
  double order_zero = 1e-9;  // h^0 consistency between the even parts
  double degenerate = 1e-12; // |c''(0)| threshold, relative to the c scale
  double pivot = 1e-12;      // stage-system pivot threshold
  double grid = 1e-9;        // nonnegativity slack for the sampled c check
};

// Diagnostic byproduct of the order-1 layer: the curvature series c and the
// quantities every later stage hinges on.
template <class R>
struct CSeriesReport {
  TruncatedSeries1<R> c;  // even series, degree n0
  R c_at_0{};
  R c2{};                 // c''(0)
  bool nonneg_on_grid = false;
};

template <class R>
struct SubtropicalSolution {
  int branch = 0;            // 0: positive square-root branch, 1: negative
  TruncatedSeries2<R> f;     // odd data plus the reconstructed even part
  TruncatedSeries2<R> g;     // imaginary completion of the transformed table
  std::vector<R> P;          // h-polynomial coefficients P_0..P_m0 (divided powers)
  double residual_norm = 0.0;
};

namespace detail {

template <class R>
void validate_subtropical(const SubtropicalProblem<R>& p) {
  if (p.m0 < 1) throw truncation_error("subtropical problem needs h-degree >= 1");
  if (p.n0 < 2) throw truncation_error("subtropical problem needs x-degree >= 2");
  if (p.A.h_degree() != p.m0 || p.A.x_degree() != p.n0 || p.B.h_degree() != p.m0 ||
      p.B.x_degree() != p.n0)
    throw truncation_error("subtropical problem: tables must match the stated window");
}

// Dense Gaussian elimination over an arbitrary field.  Small systems only.
template <class R>
std::vector<R> linsolve(std::vector<std::vector<R>> mat, std::vector<R> rhs, double pivot_tol,
                        const std::string& ctx) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    if constexpr (field<R>::exact) {
      for (int r = col; r < n; ++r)
        if (mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (int r = col; r < n; ++r) {
        const double a =
            std::abs(field<R>::re_d(mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]));
        if (a > best) {
          best = a;
          pivot = r;
        }
      }
      if (pivot >= 0 && best < pivot_tol) pivot = -1;
    }
    if (pivot < 0) throw degenerate_error("singular stage system: " + ctx);
    std::swap(mat[static_cast<std::size_t>(col)], mat[static_cast<std::size_t>(pivot)]);
    std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(pivot)]);
    const R& pv = mat[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int r = col + 1; r < n; ++r) {
      R factor = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / pv;
      if (field<R>::is_zero(factor)) continue;
      for (int c = col; c < n; ++c)
        mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * mat[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<R> x(static_cast<std::size_t>(n), R{});
  for (int r = n - 1; r >= 0; --r) {
    R acc = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c)
      acc -= mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = acc / mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return x;
}

template <class F>
TruncatedSeries1<F> even_part(const TruncatedSeries1<F>& a) {
  return even_odd_split(a).even;
}

}  // namespace detail

// Transport correction generator: Q = log( exp(-T) * exp((h/2) d_xx) exp(T) )
// for T the fully assembled complex table.  Built from the commutator ladder
//   W_1 = T', W_{j+1} = T' W_j + W_j',
//   G = 1 + sum_{r=1..order} (h/2)^r / r! * W_{2r},  Q = log G.
// Slice m of Q depends on slices <= m-1 of T only.  Exact in x through
// T.x_degree() - 2*order; callers pad the input to cover their window.
template <class CX>
TruncatedSeries2<CX> q_series(const TruncatedSeries2<CX>& t, int order) {
  if (order < 0) throw truncation_error("q_series: negative order");
  if (order > 60) throw truncation_error("q_series: order too large");
  const int n_out = t.x_degree() - 2 * order;
  if (n_out < 0) throw truncation_error("q_series: x-degree too small for the requested order");
  if (order > 0 && t.h_degree() < order - 1)
    throw truncation_error("q_series: h-degree too small for the requested order");
  TruncatedSeries2<CX> g(order, n_out);
  g.at(0, 0) = field<CX>::from_int(1);
  if (order > 0) {
    const int mt = t.h_degree();
    const TruncatedSeries2<CX> tp = series2_dx(t);
    TruncatedSeries2<CX> w = tp;  // W_1
    for (int j = 1; j < 2 * order; ++j) {
      const int nd = t.x_degree() - j - 1;  // x-degree of W_{j+1}
      w = series2_add(series2_mul(tp.truncated(mt, nd), w.truncated(mt, nd)), series2_dx(w));
      if ((j + 1) % 2 != 0) continue;
      const int r = (j + 1) / 2;
      // (h/2)^r / r! * W_2r adds C(m,r) 2^{-r} W_2r(m-r, n) to slice m.
      for (int m = r; m <= order; ++m) {
        if (m - r > mt) break;
        const CX coef = field<CX>::from_ratio(binomial(m, r), std::int64_t(1) << r);
        for (int n = 0; n <= n_out; ++n) {
          const CX& wv = w(m - r, n);
          if (!field<CX>::is_zero(wv)) g.at(m, n) += coef * wv;
        }
      }
    }
  }
  return series2_log(g);
}

// The order-1 layer of the reconstruction: the curvature series c whose
// shifted double primitive is the square of the even profile derivative.
template <class R>
CSeriesReport<R> compute_c(const SubtropicalProblem<R>& p, const SubtropicalTolerances& tol = {}) {
  detail::validate_subtropical(p);
  const int n0 = p.n0;
  const R half = field<R>::from_ratio(1, 2);

  const TruncatedSeries1<R> a0 = p.A.h_slice(0);
  const TruncatedSeries1<R> a1 = p.A.h_slice(1);
  const TruncatedSeries1<R> a0p = series_derivative(a0).padded(n0);
  const TruncatedSeries1<R> a0pp = series_derivative(series_derivative(a0)).padded(n0);

  TruncatedSeries1<R> f0odd(n0);
  TruncatedSeries1<R> b1_even_ix(n0);
  for (int n = 0; n <= n0; ++n) {
    const R sign = ((n / 2) % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
    if (n % 2 == 1)
      f0odd.at(n) = sign * p.B(0, n);
    else
      b1_even_ix.at(n) = sign * p.B(1, n);
  }
  const TruncatedSeries1<R> f0odd_p = series_derivative(f0odd).padded(n0);

  TruncatedSeries1<R> c = series_sub(
      series_add(a1, series_scale(half, series_add(series_mul(a0p, a0p), a0pp))),
      series_add(b1_even_ix, series_scale(half, series_mul(f0odd_p, f0odd_p))));
  c = detail::even_part(c);

  CSeriesReport<R> rep{c, c[0], c[2], false};

  // Sampled sanity check of c - c(0) >= 0 near the base point.
  double scale = 1.0;
  for (int n = 0; n <= n0; ++n) {
    const double a = std::abs(field<R>::re_d(c[n]));
    if (a > scale) scale = a;
  }
  TruncatedSeries1<double> cd(n0);
  for (int n = 0; n <= n0; ++n) cd.at(n) = field<R>::re_d(c[n]);
  cd.at(0) = 0.0;
  bool ok = true;
  for (int i = 0; i <= 100; ++i) {
    const double x = -1.0 + 0.02 * i;
    if (cd.evaluate(x) < -tol.grid * scale) {
      ok = false;
      break;
    }
  }
  rep.nonneg_on_grid = ok;
  return rep;
}

// Residual of the defining identity, computed through a route the solver
// never touches: exponentiate both tables and push one through the heat
// action directly.  Exact inputs that solve the window give exactly 0.
template <class R>
double verify_subtropical(const SubtropicalProblem<R>& p, const SubtropicalSolution<R>& s) {
  using CX = complex_of_t<R>;
  detail::validate_subtropical(p);
  const int m0 = p.m0, n0 = p.n0;
  if (s.f.h_degree() != m0 || s.f.x_degree() != n0 || s.g.h_degree() != m0 ||
      s.g.x_degree() != n0 || static_cast<int>(s.P.size()) != m0 + 1)
    throw truncation_error("subtropical solution: tables must match the problem window");
  const int n_int = n0 + 2 * m0;

  TruncatedSeries2<CX> bhat(m0, n0);
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) bhat.at(m, n) = field<CX>::make(p.B(m, n), s.g(m, n));
  const TruncatedSeries2<CX> lhs = series2_exp(series2_substitute_ix(bhat));

  TruncatedSeries2<CX> ahat(m0, n_int);
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) {
      R re = p.A(m, n);
      if (n == 0 && m >= 1) re += field<R>::from_int(m) * s.P[static_cast<std::size_t>(m - 1)];
      ahat.at(m, n) = field<CX>::make(re, s.f(m, n));
    }
  const TruncatedSeries2<CX> rhs = heat_apply(series2_exp(ahat));

  double worst = 0.0;
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) {
      const double r = abs_ri(lhs(m, n) - rhs(m, n));
      if (r > worst) worst = r;
    }
  return worst;
}

// Stage-by-stage reconstruction of (f, g, P) from the table pair.  Two
// solutions, one per square-root branch of the even profile.
template <class R>
std::vector<SubtropicalSolution<R>> solve_subtropical(const SubtropicalProblem<R>& p,
                                                      const SubtropicalTolerances& tol = {}) {
  using CX = complex_of_t<R>;
  detail::validate_subtropical(p);
  const int m0 = p.m0, n0 = p.n0;
  const int n_int = n0 + 2 * m0;

  for (int n = 0; n <= n0; n += 2) {
    const R sign = ((n / 2) % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
    if (!detail::within(sign * p.B(0, n) - p.A(0, n), p.A(0, n), tol.order_zero))
      throw inconsistent_input_error("inconsistent order zero");
  }

  const CSeriesReport<R> rep = compute_c(p, tol);
  const R p0 = -rep.c_at_0;

  {
    double scale = 1.0;
    for (int n = 0; n <= n0; ++n) {
      const double a = std::abs(field<R>::re_d(rep.c[n]));
      if (a > scale) scale = a;
    }
    bool degenerate;
    if constexpr (field<R>::exact) {
      degenerate = (rep.c2 == 0);
    } else {
      degenerate = std::abs(field<R>::re_d(rep.c2)) < tol.degenerate * scale;
    }
    if (degenerate) throw degenerate_error("degenerate: c''(0) vanishes");
    if (field<R>::re_d(rep.c2) < 0.0)
      throw no_real_solution_error("no real branch: c''(0) is negative");
  }

  TruncatedSeries1<R> ctilde = rep.c;
  ctilde.at(0) = R{};
  const TruncatedSeries1<R> p_of_x =
      series_divide_x2(series_scale(field<R>::from_int(2), ctilde));
  const TruncatedSeries1<R> root = series_sqrt(p_of_x);

  TruncatedSeries1<R> f0odd(n0);
  for (int n = 1; n <= n0; n += 2) {
    const R sign = ((n / 2) % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
    f0odd.at(n) = sign * p.B(0, n);
  }

  const int j_top = n0 / 2;  // even x-orders 0..2*j_top

  std::vector<SubtropicalSolution<R>> out;
  for (int branch = 0; branch < 2; ++branch) {
    SubtropicalSolution<R> sol;
    sol.branch = branch;
    sol.f = TruncatedSeries2<R>(m0, n0);
    sol.P.assign(static_cast<std::size_t>(m0) + 1, R{});
    sol.P[0] = p0;

    TruncatedSeries1<R> f0even_p = series_mul_x(root);
    if (branch == 1) f0even_p = series_scale(field<R>::from_int(-1), f0even_p);
    sol.f.set_h_slice(0, series_add(f0odd, series_integrate(f0even_p).padded(n0)));

    auto assemble = [&](const TruncatedSeries2<R>& f, const std::vector<R>& pp) {
      TruncatedSeries2<CX> t(m0, n_int);
      for (int m = 0; m <= m0; ++m)
        for (int n = 0; n <= n0; ++n) {
          R re = p.A(m, n);
          if (n == 0 && m >= 1) re += field<R>::from_int(m) * pp[static_cast<std::size_t>(m - 1)];
          t.at(m, n) = field<CX>::make(re, f(m, n));
        }
      return t;
    };

    for (int m = 1; m <= m0; ++m) {
      // Odd x-orders of slice m drop out of the stage system and follow
      // directly from the imaginary projection.
      {
        const TruncatedSeries2<CX> q = q_series(assemble(sol.f, sol.P), m);
        for (int n = 1; n <= n0; n += 2) {
          const R sign = ((n / 2) % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
          sol.f.at(m, n) = sign * p.B(m, n) - field<CX>::im(q(m, n));
        }
      }
      if (m == m0) break;  // top slice: even part and P stay at the gauge zero

      // Joint stage system for (P_m, even f-orders 2..2*j_top) from the real
      // even projection one slice up.  Affine in the unknowns; probe it.
      auto residual = [&](const R& p_m, const std::vector<R>& f_even) {
        TruncatedSeries2<R> f_try = sol.f;
        std::vector<R> p_try = sol.P;
        p_try[static_cast<std::size_t>(m)] = p_m;
        for (int j = 1; j <= j_top; ++j)
          f_try.at(m, 2 * j) = f_even[static_cast<std::size_t>(j - 1)];
        const TruncatedSeries2<CX> q = q_series(assemble(f_try, p_try), m + 1);
        std::vector<R> r(static_cast<std::size_t>(j_top) + 1, R{});
        for (int j = 0; j <= j_top; ++j) {
          const R sign = (j % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
          R lhs = p.A(m + 1, 2 * j) + field<CX>::re(q(m + 1, 2 * j));
          if (j == 0) lhs += field<R>::from_int(m + 1) * p_m;
          r[static_cast<std::size_t>(j)] = lhs - sign * p.B(m + 1, 2 * j);
        }
        return r;
      };

      const std::vector<R> zeros(static_cast<std::size_t>(j_top), R{});
      const std::vector<R> base = residual(R{}, zeros);
      const int dim = j_top + 1;
      std::vector<std::vector<R>> mat(static_cast<std::size_t>(dim),
                                      std::vector<R>(static_cast<std::size_t>(dim), R{}));
      for (int col = 0; col < dim; ++col) {
        R p_m{};
        std::vector<R> f_even = zeros;
        if (col == 0)
          p_m = field<R>::from_int(1);
        else
          f_even[static_cast<std::size_t>(col - 1)] = field<R>::from_int(1);
        const std::vector<R> probe = residual(p_m, f_even);
        for (int row = 0; row < dim; ++row)
          mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
              probe[static_cast<std::size_t>(row)] - base[static_cast<std::size_t>(row)];
      }
      std::vector<R> rhs(static_cast<std::size_t>(dim), R{});
      for (int row = 0; row < dim; ++row) rhs[static_cast<std::size_t>(row)] = -base[static_cast<std::size_t>(row)];
      const std::vector<R> x =
          detail::linsolve(std::move(mat), std::move(rhs), tol.pivot, "h-slice " + std::to_string(m + 1));
      sol.P[static_cast<std::size_t>(m)] = x[0];
      for (int j = 1; j <= j_top; ++j) sol.f.at(m, 2 * j) = x[static_cast<std::size_t>(j)];
    }

    // The imaginary completion is read off the full transport correction.
    const TruncatedSeries2<CX> q = q_series(assemble(sol.f, sol.P), m0);
    sol.g = TruncatedSeries2<R>(m0, n0);
    for (int m = 0; m <= m0; ++m)
      for (int n = 0; n <= n0; ++n) {
        const R sign = ((n / 2) % 2 == 0) ? field<R>::from_int(1) : field<R>::from_int(-1);
        if (n % 2 == 0)
          sol.g.at(m, n) = sign * (sol.f(m, n) + field<CX>::im(q(m, n)));
        else {
          R re = p.A(m, n) + field<CX>::re(q(m, n));
          sol.g.at(m, n) = -sign * re;
        }
      }

    sol.residual_norm = verify_subtropical(p, sol);
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace thermopauli
