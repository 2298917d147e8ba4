#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thermopauli/combinatorics.hpp"
#include "thermopauli/errors.hpp"
#include "thermopauli/scalar.hpp"

namespace thermopauli {

// One-variable truncated series in the divided-power convention:
// coeffs[m] multiplies x^m/m!.  All arithmetic is exact through the stated
// degree; operations that genuinely lose an order (derivative) return a
// shorter series rather than padding silently.
template <class F>
class TruncatedSeries1 {
 public:
  TruncatedSeries1() : label_("x") { c_.resize(1); }
  explicit TruncatedSeries1(int degree, std::string label = "x")
      : label_(std::move(label)) {
    if (degree < 0) throw truncation_error("series degree must be non-negative");
    c_.assign(static_cast<std::size_t>(degree) + 1, F{});
  }
  TruncatedSeries1(std::vector<F> coeffs, std::string label = "x")
      : c_(std::move(coeffs)), label_(std::move(label)) {
    if (c_.empty()) throw truncation_error("series needs at least the constant term");
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::string& label() const { return label_; }
  const std::vector<F>& coeffs() const { return c_; }

  const F& operator[](int m) const {
    if (m < 0 || m > degree()) throw truncation_error("series coefficient index out of range");
    return c_[static_cast<std::size_t>(m)];
  }
  F& at(int m) {
    if (m < 0 || m > degree()) throw truncation_error("series coefficient index out of range");
    return c_[static_cast<std::size_t>(m)];
  }

  TruncatedSeries1 with_label(std::string label) const {
    TruncatedSeries1 r = *this;
    r.label_ = std::move(label);
    return r;
  }

  // Truncate to a lower degree or zero-pad to a higher one.  Padding asserts
  // the caller's claim that the series is a polynomial of the stated degree.
  TruncatedSeries1 truncated(int new_degree) const {
    if (new_degree < 0 || new_degree > degree())
      throw truncation_error("truncated: target degree out of range");
    TruncatedSeries1 r(new_degree, label_);
    for (int m = 0; m <= new_degree; ++m) r.c_[static_cast<std::size_t>(m)] = c_[static_cast<std::size_t>(m)];
    return r;
  }
  TruncatedSeries1 padded(int new_degree) const {
    if (new_degree < degree()) throw truncation_error("padded: target degree below current");
    TruncatedSeries1 r(new_degree, label_);
    for (int m = 0; m <= degree(); ++m) r.c_[static_cast<std::size_t>(m)] = c_[static_cast<std::size_t>(m)];
    return r;
  }

  // Pointwise evaluation of the truncating polynomial.
  F evaluate(const F& x) const {
    F acc = c_.back();
    for (int m = degree() - 1; m >= 0; --m) {
      // acc holds sum_{k>m} c_k x^{k-m-1}/(k-m-1)! ... maintained via Horner in x/(m+1)
      acc = c_[static_cast<std::size_t>(m)] + acc * x / field<F>::from_int(m + 1);
    }
    return acc;
  }

 private:
  std::vector<F> c_;
  std::string label_;
};

namespace detail {
template <class F>
void require_compatible(const TruncatedSeries1<F>& a, const TruncatedSeries1<F>& b) {
  if (a.degree() != b.degree())
    throw truncation_error("series degree mismatch: " + std::to_string(a.degree()) + " vs " +
                           std::to_string(b.degree()));
  if (a.label() != b.label())
    throw truncation_error("series variable mismatch: '" + a.label() + "' vs '" + b.label() + "'");
}
}  // namespace detail

template <class F>
TruncatedSeries1<F> series_add(const TruncatedSeries1<F>& a, const TruncatedSeries1<F>& b) {
  detail::require_compatible(a, b);
  TruncatedSeries1<F> r(a.degree(), a.label());
  for (int m = 0; m <= a.degree(); ++m) r.at(m) = a[m] + b[m];
  return r;
}

template <class F>
TruncatedSeries1<F> series_sub(const TruncatedSeries1<F>& a, const TruncatedSeries1<F>& b) {
  detail::require_compatible(a, b);
  TruncatedSeries1<F> r(a.degree(), a.label());
  for (int m = 0; m <= a.degree(); ++m) r.at(m) = a[m] - b[m];
  return r;
}

template <class F>
TruncatedSeries1<F> series_scale(const F& s, const TruncatedSeries1<F>& a) {
  TruncatedSeries1<F> r(a.degree(), a.label());
  for (int m = 0; m <= a.degree(); ++m) r.at(m) = s * a[m];
  return r;
}

// Divided-power Cauchy product: c_n = sum_k C(n,k) a_k b_{n-k}.
template <class F>
TruncatedSeries1<F> series_mul(const TruncatedSeries1<F>& a, const TruncatedSeries1<F>& b) {
  detail::require_compatible(a, b);
  const int n0 = a.degree();
  TruncatedSeries1<F> r(n0, a.label());
  for (int n = 0; n <= n0; ++n) {
    F acc{};
    for (int k = 0; k <= n; ++k)
      acc += field<F>::from_int(binomial(n, k)) * a[k] * b[n - k];
    r.at(n) = acc;
  }
  return r;
}

// 1/a through the truncation degree; needs a(0) != 0.
template <class F>
TruncatedSeries1<F> series_reciprocal(const TruncatedSeries1<F>& a) {
  if (field<F>::is_zero(a[0]))
    throw singular_error("series_reciprocal: constant term is zero");
  const int n0 = a.degree();
  TruncatedSeries1<F> r(n0, a.label());
  const F inv0 = field<F>::from_int(1) / a[0];
  r.at(0) = inv0;
  for (int n = 1; n <= n0; ++n) {
    F acc{};
    for (int k = 1; k <= n; ++k)
      acc += field<F>::from_int(binomial(n, k)) * a[k] * r[n - k];
    r.at(n) = -inv0 * acc;
  }
  return r;
}

// d/dx: one order of accuracy is consumed.
template <class F>
TruncatedSeries1<F> series_derivative(const TruncatedSeries1<F>& a) {
  if (a.degree() == 0) throw truncation_error("series_derivative: no orders left");
  TruncatedSeries1<F> r(a.degree() - 1, a.label());
  for (int m = 0; m <= r.degree(); ++m) r.at(m) = a[m + 1];
  return r;
}

// Antiderivative vanishing at 0; gains an order.  Divided-power coefficients
// shift without rescaling.
template <class F>
TruncatedSeries1<F> series_integrate(const TruncatedSeries1<F>& a) {
  TruncatedSeries1<F> r(a.degree() + 1, a.label());
  for (int m = 0; m <= a.degree(); ++m) r.at(m + 1) = a[m];
  return r;
}

// Multiplication by the variable; gains an order.  (x * x^j/j! = (j+1) x^{j+1}/(j+1)!)
template <class F>
TruncatedSeries1<F> series_mul_x(const TruncatedSeries1<F>& a) {
  TruncatedSeries1<F> r(a.degree() + 1, a.label());
  for (int m = 0; m <= a.degree(); ++m) r.at(m + 1) = field<F>::from_int(m + 1) * a[m];
  return r;
}

// Extract t from a = x^2 * t; requires the two lowest coefficients to vanish.
template <class F>
TruncatedSeries1<F> series_divide_x2(const TruncatedSeries1<F>& a) {
  if (a.degree() < 2) throw truncation_error("series_divide_x2: degree too small");
  if (!field<F>::is_zero(a[0]) || !field<F>::is_zero(a[1]))
    throw singular_error("series_divide_x2: series is not divisible by x^2");
  TruncatedSeries1<F> r(a.degree() - 2, a.label());
  for (int j = 0; j <= r.degree(); ++j)
    r.at(j) = a[j + 2] / field<F>::from_int((j + 1) * (j + 2));
  return r;
}

// exp(a).  Recursion from E' = a' E; exact through the truncation degree.
template <class F>
TruncatedSeries1<F> series_exp(const TruncatedSeries1<F>& a) {
  const int n0 = a.degree();
  TruncatedSeries1<F> r(n0, a.label());
  r.at(0) = exp_scalar(a[0]);
  for (int n = 0; n < n0; ++n) {
    F acc{};
    for (int k = 0; k <= n; ++k)
      acc += field<F>::from_int(binomial(n, k)) * a[k + 1] * r[n - k];
    r.at(n + 1) = acc;
  }
  return r;
}

// log(a), principal branch on the constant term; needs a(0) != 0.
template <class F>
TruncatedSeries1<F> series_log(const TruncatedSeries1<F>& a) {
  if (field<F>::is_zero(a[0])) throw singular_error("series_log: constant term is zero");
  const int n0 = a.degree();
  TruncatedSeries1<F> r(n0, a.label());
  r.at(0) = log_scalar(a[0]);
  for (int n = 0; n < n0; ++n) {
    // a_{n+1} = sum_{k<=n} C(n,k) L_{k+1} a_{n-k}; isolate the k = n term.
    F acc{};
    for (int k = 0; k < n; ++k)
      acc += field<F>::from_int(binomial(n, k)) * r[k + 1] * a[n - k];
    r.at(n + 1) = (a[n + 1] - acc) / a[0];
  }
  return r;
}

// sqrt(a) with the branch fixed by sqrt_scalar on the constant term.
template <class F>
TruncatedSeries1<F> series_sqrt(const TruncatedSeries1<F>& a) {
  const int n0 = a.degree();
  TruncatedSeries1<F> r(n0, a.label());
  r.at(0) = sqrt_scalar(a[0]);
  if (field<F>::is_zero(r[0]))
    throw singular_error("series_sqrt: constant term is zero, series branch undefined");
  const F two_r0 = field<F>::from_int(2) * r[0];
  for (int n = 1; n <= n0; ++n) {
    F acc{};
    for (int k = 1; k < n; ++k)
      acc += field<F>::from_int(binomial(n, k)) * r[k] * r[n - k];
    r.at(n) = (a[n] - acc) / two_r0;
  }
  return r;
}

// x -> ix.  A series in "y" evaluated at iy yields a series read in "x", and
// vice versa; other labels are kept.
template <class F>
TruncatedSeries1<F> series_substitute_ix(const TruncatedSeries1<F>& a) {
  std::string label = a.label() == "y" ? "x" : (a.label() == "x" ? "y" : a.label());
  TruncatedSeries1<F> r(a.degree(), std::move(label));
  // i^m cycle through (1, i, -1, -i)
  for (int m = 0; m <= a.degree(); ++m) {
    const F& v = a[m];
    switch (m & 3) {
      case 0: r.at(m) = v; break;
      case 1: r.at(m) = field<F>::make(-field<F>::im(v), field<F>::re(v)); break;
      case 2: r.at(m) = -v; break;
      default: r.at(m) = field<F>::make(field<F>::im(v), -field<F>::re(v)); break;
    }
  }
  return r;
}

template <class F>
struct EvenOddPair {
  TruncatedSeries1<F> even;
  TruncatedSeries1<F> odd;
};

template <class F>
EvenOddPair<F> even_odd_split(const TruncatedSeries1<F>& a) {
  EvenOddPair<F> p{TruncatedSeries1<F>(a.degree(), a.label()),
                   TruncatedSeries1<F>(a.degree(), a.label())};
  for (int m = 0; m <= a.degree(); ++m) {
    if (m % 2 == 0)
      p.even.at(m) = a[m];
    else
      p.odd.at(m) = a[m];
  }
  return p;
}

// a(s * x): coefficient m picks up s^m.
template <class F>
TruncatedSeries1<F> series_scale_argument(const F& s, const TruncatedSeries1<F>& a) {
  TruncatedSeries1<F> r(a.degree(), a.label());
  F p = field<F>::from_int(1);
  for (int m = 0; m <= a.degree(); ++m) {
    r.at(m) = p * a[m];
    p = p * s;
  }
  return r;
}

namespace detail {

// Ordinary-coefficient helpers for composition; divided powers are clumsy there.
template <class F>
std::vector<F> to_ordinary(const TruncatedSeries1<F>& a) {
  std::vector<F> v(static_cast<std::size_t>(a.degree()) + 1);
  F fact = field<F>::from_int(1);
  for (int m = 0; m <= a.degree(); ++m) {
    if (m > 0) fact = fact * field<F>::from_int(m);
    v[static_cast<std::size_t>(m)] = a[m] / fact;
  }
  return v;
}

template <class F>
TruncatedSeries1<F> from_ordinary(const std::vector<F>& v, const std::string& label) {
  TruncatedSeries1<F> r(static_cast<int>(v.size()) - 1, label);
  F fact = field<F>::from_int(1);
  for (int m = 0; m < static_cast<int>(v.size()); ++m) {
    if (m > 0) fact = fact * field<F>::from_int(m);
    r.at(m) = v[static_cast<std::size_t>(m)] * fact;
  }
  return r;
}

template <class F>
std::vector<F> ordinary_mul(const std::vector<F>& a, const std::vector<F>& b, std::size_t size) {
  std::vector<F> r(size, F{});
  for (std::size_t i = 0; i < a.size() && i < size; ++i) {
    if (field<F>::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < size; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace detail

// a(b(x)) for b with vanishing constant term.
template <class F>
TruncatedSeries1<F> series_compose(const TruncatedSeries1<F>& a, const TruncatedSeries1<F>& b) {
  if (!field<F>::is_zero(b[0]))
    throw singular_error("series_compose: inner series must vanish at 0");
  const int n0 = (a.degree() < b.degree()) ? a.degree() : b.degree();
  const std::size_t size = static_cast<std::size_t>(n0) + 1;
  std::vector<F> av = detail::to_ordinary(a.truncated(n0));
  std::vector<F> bv = detail::to_ordinary(b.truncated(n0));
  // Horner: r = a_n; r = r*b + a_k
  std::vector<F> r(size, F{});
  r[0] = av[static_cast<std::size_t>(n0)];
  for (int k = n0 - 1; k >= 0; --k) {
    r = detail::ordinary_mul(r, bv, size);
    r[0] += av[static_cast<std::size_t>(k)];
  }
  return detail::from_ordinary(r, b.label());
}

// Compositional inverse of b (b(0) = 0, b'(0) != 0): returns x with x(b(t)) = t.
template <class F>
TruncatedSeries1<F> series_compositional_inverse(const TruncatedSeries1<F>& b) {
  if (!field<F>::is_zero(b[0]))
    throw singular_error("series_compositional_inverse: series must vanish at 0");
  if (field<F>::is_zero(b[1]))
    throw singular_error("series_compositional_inverse: first coefficient is zero");
  const int n0 = b.degree();
  const std::size_t size = static_cast<std::size_t>(n0) + 1;
  std::vector<F> bv = detail::to_ordinary(b);
  std::vector<F> xv(size, F{});
  xv[1] = field<F>::from_int(1) / bv[1];
  // powers[k-1] holds the ordinary coefficients of b^k.
  std::vector<std::vector<F>> powers{bv};
  for (int k = 2; k <= n0; ++k) powers.push_back(detail::ordinary_mul(powers.back(), bv, size));
  // Order-by-order: [t^j](x o b) must vanish for j >= 2; the unknown x_j
  // enters that coefficient as x_j * b_1^j.
  F b1p = bv[1];
  for (int j = 2; j <= n0; ++j) {
    F acc{};
    for (int k = 1; k < j; ++k)
      acc += xv[static_cast<std::size_t>(k)] *
             powers[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)];
    b1p = b1p * bv[1];  // b_1^j
    xv[static_cast<std::size_t>(j)] = -acc / b1p;
  }
  return detail::from_ordinary(xv, b.label());
}

// Iterates of the operator (1/f) d/dx applied to 1/f, all evaluated at 0:
// element n = [((1/f) d/dx)^n (1/f)](0).  Each derivative consumes one order,
// so n_max may not exceed the degree of f.
template <class F>
std::vector<F> legendre_link_seq(const TruncatedSeries1<F>& f, int n_max) {
  if (n_max < 0) throw truncation_error("legendre_link_seq: negative order");
  if (n_max > f.degree())
    throw truncation_error("legendre_link_seq: order exceeds series degree (one order is consumed per derivative)");
  if (field<F>::is_zero(f[0])) throw singular_error("legendre_link_seq: f(0) = 0");
  const TruncatedSeries1<F> r = series_reciprocal(f);
  std::vector<F> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  TruncatedSeries1<F> cur = r;
  out.push_back(cur[0]);
  for (int n = 1; n <= n_max; ++n) {
    TruncatedSeries1<F> d = series_derivative(cur);
    cur = series_mul(r.truncated(d.degree()), d);
    out.push_back(cur[0]);
  }
  return out;
}

}  // namespace thermopauli
