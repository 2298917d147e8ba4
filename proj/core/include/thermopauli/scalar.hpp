#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>

#include "thermopauli/errors.hpp"

namespace thermopauli {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Complex numbers over an arbitrary ordered field.  std::complex is only
// specified for float/double/long double, so exact complex arithmetic gets
// its own minimal type.
template <class R>
struct rc {
  R re{};
  R im{};

  rc() = default;
  rc(R r) : re(std::move(r)) {}
  rc(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  friend rc operator+(const rc& a, const rc& b) { return {a.re + b.re, a.im + b.im}; }
  friend rc operator-(const rc& a, const rc& b) { return {a.re - b.re, a.im - b.im}; }
  friend rc operator-(const rc& a) { return {-a.re, -a.im}; }
  friend rc operator*(const rc& a, const rc& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend rc operator/(const rc& a, const rc& b) {
    R n = b.re * b.re + b.im * b.im;
    if (n == 0) throw singular_error("rc: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  rc& operator+=(const rc& b) { return *this = *this + b; }
  rc& operator-=(const rc& b) { return *this = *this - b; }
  rc& operator*=(const rc& b) { return *this = *this * b; }
  rc& operator/=(const rc& b) { return *this = *this / b; }
  friend bool operator==(const rc& a, const rc& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const rc& a, const rc& b) { return !(a == b); }
};

using RationalComplex = rc<Rational>;

// Integer square root with exactness check.
inline BigInt isqrt_exact(const BigInt& n, const char* ctx) {
  if (n < 0) throw no_real_solution_error(std::string(ctx) + ": sqrt of negative value");
  BigInt s = boost::multiprecision::sqrt(n);
  if (s * s != n) throw exactness_error(std::string(ctx) + ": value is not a perfect square");
  return s;
}

inline Rational sqrt_exact(const Rational& q, const char* ctx = "sqrt_exact") {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (q < 0) throw no_real_solution_error(std::string(ctx) + ": sqrt of negative rational");
  BigInt num = isqrt_exact(numerator(q), ctx);
  BigInt den = isqrt_exact(denominator(q), ctx);
  return Rational(num, den);
}

// Uniform accessors over the four coefficient fields:
//   double, Rational (real) and std::complex<double>, rc<Rational> (complex).
template <class F>
struct field;

template <>
struct field<double> {
  using real_t = double;
  static constexpr bool exact = false;
  static constexpr bool complex = false;
  static double from_int(long long n) { return static_cast<double>(n); }
  static double from_ratio(long long p, long long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double re(double x) { return x; }
  static double im(double) { return 0.0; }
  static double make(double r, double i) {
    if (i != 0.0) throw truncation_error("real field cannot hold imaginary part");
    return r;
  }
  static bool is_zero(double x) { return x == 0.0; }
  static double re_d(double x) { return x; }
  static double im_d(double) { return 0.0; }
};

template <>
struct field<Rational> {
  using real_t = Rational;
  static constexpr bool exact = true;
  static constexpr bool complex = false;
  static Rational from_int(long long n) { return Rational(n); }
  static Rational from_ratio(long long p, long long q) { return Rational(p, q); }
  static const Rational& re(const Rational& x) { return x; }
  static Rational im(const Rational&) { return Rational(0); }
  static Rational make(Rational r, const Rational& i) {
    if (i != 0) throw truncation_error("real field cannot hold imaginary part");
    return r;
  }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double re_d(const Rational& x) { return static_cast<double>(x); }
  static double im_d(const Rational&) { return 0.0; }
};

template <>
struct field<std::complex<double>> {
  using real_t = double;
  static constexpr bool exact = false;
  static constexpr bool complex = true;
  static std::complex<double> from_int(long long n) { return {static_cast<double>(n), 0.0}; }
  static std::complex<double> from_ratio(long long p, long long q) {
    return {static_cast<double>(p) / static_cast<double>(q), 0.0};
  }
  static double re(const std::complex<double>& z) { return z.real(); }
  static double im(const std::complex<double>& z) { return z.imag(); }
  static std::complex<double> make(double r, double i) { return {r, i}; }
  static bool is_zero(const std::complex<double>& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  static double re_d(const std::complex<double>& z) { return z.real(); }
  static double im_d(const std::complex<double>& z) { return z.imag(); }
};

template <>
struct field<RationalComplex> {
  using real_t = Rational;
  static constexpr bool exact = true;
  static constexpr bool complex = true;
  static RationalComplex from_int(long long n) { return {Rational(n), Rational(0)}; }
  static RationalComplex from_ratio(long long p, long long q) {
    return {Rational(p, q), Rational(0)};
  }
  static const Rational& re(const RationalComplex& z) { return z.re; }
  static const Rational& im(const RationalComplex& z) { return z.im; }
  static RationalComplex make(Rational r, Rational i) { return {std::move(r), std::move(i)}; }
  static bool is_zero(const RationalComplex& z) { return z.re == 0 && z.im == 0; }
  static double re_d(const RationalComplex& z) { return static_cast<double>(z.re); }
  static double im_d(const RationalComplex& z) { return static_cast<double>(z.im); }
};

// Real field <-> complex field pairings for the two backends.
template <class R>
struct complex_of;
template <>
struct complex_of<double> {
  using type = std::complex<double>;
};
template <>
struct complex_of<Rational> {
  using type = RationalComplex;
};
template <class R>
using complex_of_t = typename complex_of<R>::type;

// Scalar transcendental functions.  The exact backend only admits the cases
// that stay inside the rationals; anything else raises exactness_error so a
// caller can fall back to doubles deliberately rather than silently.
inline double exp_scalar(double x) { return std::exp(x); }
inline std::complex<double> exp_scalar(const std::complex<double>& z) { return std::exp(z); }
inline Rational exp_scalar(const Rational& x) {
  if (x != 0) throw exactness_error("exp of nonzero rational is irrational");
  return Rational(1);
}
inline RationalComplex exp_scalar(const RationalComplex& z) {
  if (z.re != 0 || z.im != 0) throw exactness_error("exp of nonzero rational is irrational");
  return RationalComplex(Rational(1));
}

inline double log_scalar(double x) {
  if (x <= 0.0) throw singular_error("log of non-positive value");
  return std::log(x);
}
inline std::complex<double> log_scalar(const std::complex<double>& z) {
  if (z == std::complex<double>(0.0, 0.0)) throw singular_error("log of zero");
  return std::log(z);
}
inline Rational log_scalar(const Rational& x) {
  if (x != 1) throw exactness_error("log of rational other than 1 is irrational");
  return Rational(0);
}
inline RationalComplex log_scalar(const RationalComplex& z) {
  if (z.re != 1 || z.im != 0) throw exactness_error("log of rational other than 1 is irrational");
  return RationalComplex(Rational(0));
}

inline double sqrt_scalar(double x) {
  if (x < 0.0) throw no_real_solution_error("sqrt of negative value");
  return std::sqrt(x);
}
inline std::complex<double> sqrt_scalar(const std::complex<double>& z) { return std::sqrt(z); }
inline Rational sqrt_scalar(const Rational& x) { return sqrt_exact(x, "sqrt_scalar"); }
inline RationalComplex sqrt_scalar(const RationalComplex& z) {
  if (z.im != 0) throw exactness_error("sqrt of rational complex with nonzero imaginary part");
  return RationalComplex(sqrt_exact(z.re, "sqrt_scalar"));
}

inline std::complex<double> conj_scalar(const std::complex<double>& z) { return std::conj(z); }
inline RationalComplex conj_scalar(const RationalComplex& z) { return {z.re, -z.im}; }
inline double conj_scalar(double x) { return x; }
inline Rational conj_scalar(const Rational& x) { return x; }

// Magnitude surrogate used for residual reports: max(|Re|, |Im|) converted to
// double.  Exact zeros map to exactly 0.0.
template <class F>
double abs_ri(const F& z) {
  double r = std::abs(field<F>::re_d(z));
  double i = std::abs(field<F>::im_d(z));
  return r > i ? r : i;
}

namespace detail {

// Vanishing test for a real field element.  Exact backends demand exact
// zero; floating ones compare against a relative scale floored at 1.  The
// value parameter is deduced separately so expression templates convert.
template <class R, class V>
bool within(const V& value_expr, const R& scale, double tol) {
  const R value(value_expr);
  if constexpr (field<R>::exact) {
    (void)scale;
    (void)tol;
    return value == 0;
  } else {
    double s = std::abs(field<R>::re_d(scale));
    if (s < 1.0) s = 1.0;
    return std::abs(field<R>::re_d(value)) < tol * s;
  }
}

}  // namespace detail

}  // namespace thermopauli
