#pragma once

#include <utility>
#include <vector>

#include "thermopauli/series1.hpp"

namespace thermopauli {

// Two-variable truncated series, divided powers in both variables:
// coeffs(m, n) multiplies h^m x^n / (m! n!).  The first variable is always
// the deformation parameter h; the second is the spatial one.
template <class F>
class TruncatedSeries2 {
 public:
  TruncatedSeries2() : m0_(0), n0_(0), c_(1) {}
  TruncatedSeries2(int m0, int n0) : m0_(m0), n0_(n0) {
    if (m0 < 0 || n0 < 0) throw truncation_error("series degrees must be non-negative");
    c_.assign(static_cast<std::size_t>(m0 + 1) * static_cast<std::size_t>(n0 + 1), F{});
  }

  int h_degree() const { return m0_; }
  int x_degree() const { return n0_; }

  const F& operator()(int m, int n) const { return c_[index(m, n)]; }
  F& at(int m, int n) { return c_[index(m, n)]; }

  TruncatedSeries2 truncated(int m_new, int n_new) const {
    if (m_new < 0 || m_new > m0_ || n_new < 0 || n_new > n0_)
      throw truncation_error("truncated: target degrees out of range");
    TruncatedSeries2 r(m_new, n_new);
    for (int m = 0; m <= m_new; ++m)
      for (int n = 0; n <= n_new; ++n) r.at(m, n) = (*this)(m, n);
    return r;
  }
  TruncatedSeries2 padded(int m_new, int n_new) const {
    if (m_new < m0_ || n_new < n0_) throw truncation_error("padded: target degrees below current");
    TruncatedSeries2 r(m_new, n_new);
    for (int m = 0; m <= m0_; ++m)
      for (int n = 0; n <= n0_; ++n) r.at(m, n) = (*this)(m, n);
    return r;
  }

  TruncatedSeries1<F> h_slice(int m, std::string label = "x") const {
    if (m < 0 || m > m0_) throw truncation_error("h_slice: order out of range");
    TruncatedSeries1<F> s(n0_, std::move(label));
    for (int n = 0; n <= n0_; ++n) s.at(n) = (*this)(m, n);
    return s;
  }
  void set_h_slice(int m, const TruncatedSeries1<F>& s) {
    if (m < 0 || m > m0_) throw truncation_error("set_h_slice: order out of range");
    if (s.degree() != n0_) throw truncation_error("set_h_slice: degree mismatch");
    for (int n = 0; n <= n0_; ++n) at(m, n) = s[n];
  }

 private:
  std::size_t index(int m, int n) const {
    if (m < 0 || m > m0_ || n < 0 || n > n0_)
      throw truncation_error("series2 coefficient index out of range");
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(n0_ + 1) +
           static_cast<std::size_t>(n);
  }

  int m0_, n0_;
  std::vector<F> c_;
};

namespace detail {
template <class F>
void require_compatible2(const TruncatedSeries2<F>& a, const TruncatedSeries2<F>& b) {
  if (a.h_degree() != b.h_degree() || a.x_degree() != b.x_degree())
    throw truncation_error("series2 degree mismatch");
}
}  // namespace detail

template <class F>
TruncatedSeries2<F> series2_add(const TruncatedSeries2<F>& a, const TruncatedSeries2<F>& b) {
  detail::require_compatible2(a, b);
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n) r.at(m, n) = a(m, n) + b(m, n);
  return r;
}

template <class F>
TruncatedSeries2<F> series2_sub(const TruncatedSeries2<F>& a, const TruncatedSeries2<F>& b) {
  detail::require_compatible2(a, b);
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n) r.at(m, n) = a(m, n) - b(m, n);
  return r;
}

template <class F>
TruncatedSeries2<F> series2_scale(const F& s, const TruncatedSeries2<F>& a) {
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n) r.at(m, n) = s * a(m, n);
  return r;
}

// Double divided-power Cauchy product.
template <class F>
TruncatedSeries2<F> series2_mul(const TruncatedSeries2<F>& a, const TruncatedSeries2<F>& b) {
  detail::require_compatible2(a, b);
  const int m0 = a.h_degree(), n0 = a.x_degree();
  TruncatedSeries2<F> r(m0, n0);
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) {
      F acc{};
      for (int j = 0; j <= m; ++j) {
        const F bm = field<F>::from_int(binomial(m, j));
        for (int k = 0; k <= n; ++k) {
          const F& av = a(j, k);
          if (field<F>::is_zero(av)) continue;
          acc += bm * field<F>::from_int(binomial(n, k)) * av * b(m - j, n - k);
        }
      }
      r.at(m, n) = acc;
    }
  return r;
}

// d/dx on the spatial variable; consumes one x-order.
template <class F>
TruncatedSeries2<F> series2_dx(const TruncatedSeries2<F>& a) {
  if (a.x_degree() == 0) throw truncation_error("series2_dx: no x-orders left");
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree() - 1);
  for (int m = 0; m <= r.h_degree(); ++m)
    for (int n = 0; n <= r.x_degree(); ++n) r.at(m, n) = a(m, n + 1);
  return r;
}

// x -> ix on the spatial variable.
template <class F>
TruncatedSeries2<F> series2_substitute_ix(const TruncatedSeries2<F>& a) {
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n) {
      const F& v = a(m, n);
      switch (n & 3) {
        case 0: r.at(m, n) = v; break;
        case 1: r.at(m, n) = field<F>::make(-field<F>::im(v), field<F>::re(v)); break;
        case 2: r.at(m, n) = -v; break;
        default: r.at(m, n) = field<F>::make(field<F>::im(v), -field<F>::re(v)); break;
      }
    }
  return r;
}

// exp of a two-variable series, h-slice by h-slice: the h^0 slice is a
// one-variable exp, then E_{m+1} = sum_k C(m,k) T_{k+1} * E_{m-k} from
// dE/dh = (dT/dh) E.
template <class F>
TruncatedSeries2<F> series2_exp(const TruncatedSeries2<F>& a) {
  const int m0 = a.h_degree(), n0 = a.x_degree();
  TruncatedSeries2<F> r(m0, n0);
  std::vector<TruncatedSeries1<F>> e;
  e.push_back(series_exp(a.h_slice(0)));
  for (int m = 0; m < m0; ++m) {
    TruncatedSeries1<F> acc(n0);
    for (int k = 0; k <= m; ++k) {
      TruncatedSeries1<F> term = series_mul(a.h_slice(k + 1), e[static_cast<std::size_t>(m - k)]);
      acc = series_add(acc, series_scale(field<F>::from_int(binomial(m, k)), term));
    }
    e.push_back(acc);
  }
  for (int m = 0; m <= m0; ++m) r.set_h_slice(m, e[static_cast<std::size_t>(m)]);
  return r;
}

// log of a two-variable series; the h^0 slice must be invertible.
template <class F>
TruncatedSeries2<F> series2_log(const TruncatedSeries2<F>& a) {
  const int m0 = a.h_degree(), n0 = a.x_degree();
  const TruncatedSeries1<F> g0 = a.h_slice(0);
  if (field<F>::is_zero(g0[0])) throw singular_error("series2_log: constant term is zero");
  const TruncatedSeries1<F> inv_g0 = series_reciprocal(g0);
  TruncatedSeries2<F> r(m0, n0);
  std::vector<TruncatedSeries1<F>> l;
  l.push_back(series_log(g0));
  for (int m = 0; m < m0; ++m) {
    // a_{m+1} = sum_{k<=m} C(m,k) L_{k+1} a_{m-k}; isolate the k = m term.
    TruncatedSeries1<F> acc(n0);
    for (int k = 0; k < m; ++k) {
      TruncatedSeries1<F> term = series_mul(l[static_cast<std::size_t>(k + 1)], a.h_slice(m - k));
      acc = series_add(acc, series_scale(field<F>::from_int(binomial(m, k)), term));
    }
    l.push_back(series_mul(series_sub(a.h_slice(m + 1), acc), inv_g0));
  }
  for (int m = 0; m <= m0; ++m) r.set_h_slice(m, l[static_cast<std::size_t>(m)]);
  return r;
}

// Action of exp((h/2) d^2/dx^2) on the coefficient table:
//   result(m, n) = sum_{k=0..m} C(m,k) 2^{-k} a(m-k, n+2k),
// with coefficients beyond the stated x-degree treated as zero (the caller
// pads the x-degree first when exactness at high orders matters).
template <class F>
TruncatedSeries2<F> heat_apply(const TruncatedSeries2<F>& a) {
  const int m0 = a.h_degree(), n0 = a.x_degree();
  TruncatedSeries2<F> r(m0, n0);
  for (int m = 0; m <= m0; ++m)
    for (int n = 0; n <= n0; ++n) {
      F acc{};
      for (int k = 0; k <= m; ++k) {
        if (n + 2 * k > n0) break;
        acc += field<F>::from_ratio(binomial(m, k), std::int64_t(1) << k) * a(m - k, n + 2 * k);
      }
      r.at(m, n) = acc;
    }
  return r;
}

template <class F>
TruncatedSeries2<F> series2_re(const TruncatedSeries2<F>& a) {
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n)
      r.at(m, n) = field<F>::make(field<F>::re(a(m, n)), typename field<F>::real_t{});
  return r;
}

template <class F>
TruncatedSeries2<F> series2_im(const TruncatedSeries2<F>& a) {
  TruncatedSeries2<F> r(a.h_degree(), a.x_degree());
  for (int m = 0; m <= a.h_degree(); ++m)
    for (int n = 0; n <= a.x_degree(); ++n)
      r.at(m, n) = field<F>::make(field<F>::im(a(m, n)), typename field<F>::real_t{});
  return r;
}

}  // namespace thermopauli
