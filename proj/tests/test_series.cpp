#include <doctest.h>

#include <complex>
#include <vector>

#include "thermopauli/combinatorics.hpp"
#include "thermopauli/scalar.hpp"
#include "thermopauli/series1.hpp"
#include "thermopauli/series2.hpp"

using namespace thermopauli;

namespace {

TruncatedSeries1<Rational> rational_series(std::vector<long long> v) {
  TruncatedSeries1<Rational> s(static_cast<int>(v.size()) - 1, "x");
  for (int m = 0; m < static_cast<int>(v.size()); ++m) s.at(m) = Rational(v[static_cast<std::size_t>(m)]);
  return s;
}

// exp(x) truncated: every divided-power coefficient is 1.
template <class F>
TruncatedSeries1<F> exp_series(int degree) {
  TruncatedSeries1<F> s(degree, "x");
  for (int m = 0; m <= degree; ++m) s.at(m) = field<F>::from_int(1);
  return s;
}

}  // namespace

TEST_CASE("divided-power product is the binomial convolution") {
  const auto e = exp_series<Rational>(8);
  const auto p = series_mul(e, e);
  Rational pow2(1);
  for (int n = 0; n <= 8; ++n) {
    CHECK(p[n] == pow2);  // exp(x)^2 = exp(2x) has coefficients 2^n
    pow2 *= 2;
  }
}

TEST_CASE("derivative and integral shift the coefficient table") {
  const auto a = rational_series({3, 1, 4, 1, 5});
  const auto d = series_derivative(a);
  CHECK(d.degree() == 3);
  for (int m = 0; m <= 3; ++m) CHECK(d[m] == a[m + 1]);

  const auto back = series_integrate(d);
  CHECK(back.degree() == 4);
  CHECK(back[0] == 0);
  for (int m = 1; m <= 4; ++m) CHECK(back[m] == a[m]);
}

TEST_CASE("multiplication by x in divided powers") {
  const auto a = rational_series({2, 3, 5});
  const auto m = series_mul_x(a);
  CHECK(m.degree() == 3);
  CHECK(m[0] == 0);
  CHECK(m[1] == 1 * a[0]);
  CHECK(m[2] == 2 * a[1]);
  CHECK(m[3] == 3 * a[2]);
}

TEST_CASE("division by x^2 inverts double x-multiplication") {
  const auto a = rational_series({7, -2, 9, 4});
  const auto lifted = series_mul_x(series_mul_x(a));
  const auto back = series_divide_x2(lifted);
  for (int m = 0; m <= 3; ++m) CHECK(back[m] == a[m]);

  SUBCASE("rejects series with nonzero low coefficients") {
    CHECK_THROWS_AS(series_divide_x2(rational_series({1, 0, 0})), singular_error);
    CHECK_THROWS_AS(series_divide_x2(rational_series({0, 1, 0})), singular_error);
  }
}

TEST_CASE("reciprocal multiplies back to one") {
  const auto a = rational_series({2, 1, -3, 5, 7});
  const auto r = series_reciprocal(a);
  const auto p = series_mul(a, r);
  CHECK(p[0] == 1);
  for (int m = 1; m <= 4; ++m) CHECK(p[m] == 0);
  CHECK_THROWS_AS(series_reciprocal(rational_series({0, 1})), singular_error);
}

TEST_CASE("exp and log are mutually inverse") {
  const auto a = rational_series({0, 2, -1, 3, 1, -2});
  const auto e = series_exp(a);
  CHECK(e[0] == 1);
  const auto back = series_log(e);
  for (int m = 0; m <= 5; ++m) CHECK(back[m] == a[m]);

  const auto g = rational_series({1, 4, 2, -1});
  const auto gl = series_log(g);
  const auto ge = series_exp(gl);
  for (int m = 0; m <= 3; ++m) CHECK(ge[m] == g[m]);
}

TEST_CASE("square root squares back") {
  const auto a = rational_series({9, 2, -5, 1});
  const auto r = series_sqrt(a);
  CHECK(r[0] == 3);
  const auto sq = series_mul(r, r);
  for (int m = 0; m <= 3; ++m) CHECK(sq[m] == a[m]);
  CHECK_THROWS_AS(series_sqrt(rational_series({-1, 0})), no_real_solution_error);
}

TEST_CASE("composition reproduces argument scaling and classic series") {
  SUBCASE("exp composed with 2x") {
    TruncatedSeries1<Rational> two_x(6, "x");
    two_x.at(1) = Rational(2);
    const auto c = series_compose(exp_series<Rational>(6), two_x);
    Rational pow2(1);
    for (int n = 0; n <= 6; ++n) {
      CHECK(c[n] == pow2);
      pow2 *= 2;
    }
  }
  SUBCASE("log of the geometric series") {
    // 1/(1-x) has divided-power coefficients n!; its log has (n-1)!.
    TruncatedSeries1<Rational> geo(7, "x");
    Rational fact(1);
    for (int n = 0; n <= 7; ++n) {
      if (n > 0) fact *= n;
      geo.at(n) = fact;
    }
    const auto l = series_log(geo);
    CHECK(l[0] == 0);
    Rational f2(1);
    for (int n = 1; n <= 7; ++n) {
      CHECK(l[n] == f2);
      f2 *= n;
    }
  }
}

TEST_CASE("compositional inverse round-trips") {
  const auto b = rational_series({0, 2, 1, -4, 3, 5});
  const auto binv = series_compositional_inverse(b);
  const auto idm = series_compose(b, binv);
  CHECK(idm[0] == 0);
  CHECK(idm[1] == 1);
  for (int m = 2; m <= 5; ++m) CHECK(idm[m] == 0);
  const auto idm2 = series_compose(binv, b.with_label(binv.label()));
  CHECK(idm2[1] == 1);
  for (int m = 2; m <= 5; ++m) CHECK(idm2[m] == 0);
}

TEST_CASE("imaginary substitution cycles with period four") {
  using CX = std::complex<double>;
  TruncatedSeries1<CX> a(5, "x");
  for (int m = 0; m <= 5; ++m) a.at(m) = CX(0.3 * m - 1.0, 0.1 * m);
  const auto once = series_substitute_ix(a);
  const auto twice = series_substitute_ix(once);
  const auto fourth = series_substitute_ix(series_substitute_ix(twice));
  for (int m = 0; m <= 5; ++m) {
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(twice[m].real() == doctest::Approx(parity * a[m].real()));
    CHECK(twice[m].imag() == doctest::Approx(parity * a[m].imag()));
    CHECK(fourth[m].real() == doctest::Approx(a[m].real()));
    CHECK(fourth[m].imag() == doctest::Approx(a[m].imag()));
  }
}

TEST_CASE("argument scaling and evaluation agree") {
  const auto a = rational_series({1, -2, 3, 4});
  const auto scaled = series_scale_argument(Rational(3), a);
  for (int m = 0; m <= 3; ++m) {
    Rational pw(1);
    for (int j = 0; j < m; ++j) pw *= 3;
    CHECK(scaled[m] == pw * a[m]);
  }

  // evaluate() sums c_m x^m / m!
  TruncatedSeries1<double> d(3, "x");
  d.at(0) = 1.0;
  d.at(1) = -2.0;
  d.at(2) = 3.0;
  d.at(3) = 4.0;
  const double x = 0.7;
  const double direct = 1.0 - 2.0 * x + 3.0 * x * x / 2.0 + 4.0 * x * x * x / 6.0;
  CHECK(d.evaluate(x) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("even odd split partitions the table") {
  const auto a = rational_series({1, 2, 3, 4, 5});
  const auto p = even_odd_split(a);
  for (int m = 0; m <= 4; ++m) {
    CHECK(p.even[m] + p.odd[m] == a[m]);
    if (m % 2 == 0)
      CHECK(p.odd[m] == 0);
    else
      CHECK(p.even[m] == 0);
  }
}

TEST_CASE("link sequence basics") {
  using CX = RationalComplex;
  SUBCASE("linear profile gives signed double factorials") {
    // f = 1 + e x: element n is (-1)^n (2n-1)!! e^n
    const Rational eps(3, 7);
    TruncatedSeries1<CX> f(6, "x");
    f.at(0) = field<CX>::from_int(1);
    f.at(1) = CX(eps);
    const auto t = legendre_link_seq(f, 6);
    Rational expect(1);
    for (int n = 1; n <= 6; ++n) {
      expect *= -(2 * n - 1) * eps;
      CHECK(t[static_cast<std::size_t>(n)].re == expect);
      CHECK(t[static_cast<std::size_t>(n)].im == 0);
    }
  }
  SUBCASE("scaling the profile rescales element n by the inverse power n+1") {
    TruncatedSeries1<CX> f(5, "x");
    f.at(0) = field<CX>::from_int(1);
    f.at(1) = CX(Rational(1, 2), Rational(1, 3));
    f.at(2) = CX(Rational(-1, 4), Rational(2, 5));
    f.at(3) = CX(Rational(1, 8), Rational(0));
    const CX lam(Rational(3), Rational(0));
    const auto t = legendre_link_seq(f, 5);
    const auto ts = legendre_link_seq(series_scale(lam, f), 5);
    CX pw = field<CX>::from_int(1);
    for (int n = 0; n <= 5; ++n) {
      pw = pw * lam;
      CHECK(ts[static_cast<std::size_t>(n)] * pw == t[static_cast<std::size_t>(n)]);
    }
  }
  SUBCASE("vanishing base value is singular") {
    TruncatedSeries1<CX> f(3, "x");
    f.at(1) = field<CX>::from_int(1);
    CHECK_THROWS_AS(legendre_link_seq(f, 3), singular_error);
  }
  SUBCASE("order beyond the stored degree is rejected") {
    TruncatedSeries1<CX> f(3, "x");
    f.at(0) = field<CX>::from_int(1);
    CHECK_THROWS_AS(legendre_link_seq(f, 4), truncation_error);
  }
}

TEST_CASE("two-variable exp and log round-trip") {
  using CX = RationalComplex;
  TruncatedSeries2<CX> a(3, 4);
  int k = 1;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 4; ++n) {
      a.at(m, n) = CX(Rational(k % 7 - 3, 5), Rational((k * k) % 5 - 2, 3));
      ++k;
    }
  a.at(0, 0) = CX(Rational(0));  // keep exp rational
  const auto e = series2_exp(a);
  const auto back = series2_log(e);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 4; ++n) CHECK(back(m, n) == a(m, n));
}

TEST_CASE("heat action on closed forms") {
  SUBCASE("x^2 gains exactly h") {
    // x^2 = 2 * x^2/2! so the divided-power entry is 2
    TruncatedSeries2<Rational> a(2, 4);
    a.at(0, 2) = Rational(2);
    const auto r = heat_apply(a);
    CHECK(r(0, 2) == 2);
    CHECK(r(1, 0) == 1);  // + h
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 4; ++n)
        if (!((m == 0 && n == 2) || (m == 1 && n == 0))) CHECK(r(m, n) == 0);
  }
  SUBCASE("exponential profile picks up the squared-slope factor") {
    // heat exp(s x) = exp(s x + h s^2/2); compare logs
    const Rational s(3, 2);
    const int m0 = 3, n0 = 6;
    TruncatedSeries2<Rational> a(m0, n0);
    Rational pw(1);
    for (int n = 0; n <= n0; ++n) {
      a.at(0, n) = pw;  // exp(sx) slice
      pw *= s;
    }
    const auto r = heat_apply(a);
    const auto l = series2_log(r);
    CHECK(l(0, 1) == s);
    for (int n = 0; n <= n0; ++n)
      if (n != 1) CHECK(l(0, n) == 0);
    CHECK(l(1, 0) == s * s / 2);
    // entries (m, n) are only faithful where n + 2m stays inside the window
    for (int n = 1; n + 2 * 1 <= n0; ++n) CHECK(l(1, n) == 0);
    CHECK(l(2, 0) == 0);
  }
}

TEST_CASE("two-variable imaginary substitution squares to parity") {
  using CX = std::complex<double>;
  TruncatedSeries2<CX> a(2, 3);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n) a.at(m, n) = CX(0.2 * m - n, 0.4 * n + m);
  const auto twice = series2_substitute_ix(series2_substitute_ix(a));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n) {
      const double parity = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(twice(m, n).real() == doctest::Approx(parity * a(m, n).real()));
      CHECK(twice(m, n).imag() == doctest::Approx(parity * a(m, n).imag()));
    }
}

TEST_CASE("binomials and factorial helpers") {
  for (int n = 0; n <= 10; ++n)
    for (int j = 1; j < n; ++j) CHECK(binomial(n, j) == binomial(n - 1, j - 1) + binomial(n - 1, j));
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 7) == 0);
  CHECK(double_factorial_odd(4) == 105);  // 7!!
  CHECK(falling_factorial(7, 3) == 7 * 6 * 5);
  CHECK(factorial_d(5) == doctest::Approx(120.0));
}

TEST_CASE("tritriangular numbers: product formula, series, identity") {
  SUBCASE("closed product form") {
    for (long long n = 1; n <= 20; ++n)
      CHECK(tritriangular(static_cast<int>(n)) == n * (n + 1) * (n + 2) * (n + 3) / 8);
    CHECK_THROWS_AS(tritriangular(0), truncation_error);
  }
  SUBCASE("coefficients of 3x/(1-x)^5 via series arithmetic") {
    const int deg = 21;
    TruncatedSeries1<Rational> one_minus_x(deg, "x");
    one_minus_x.at(0) = Rational(1);
    one_minus_x.at(1) = Rational(-1);
    TruncatedSeries1<Rational> pow5 = one_minus_x;
    for (int j = 1; j < 5; ++j) pow5 = series_mul(pow5, one_minus_x);
    const auto gen = series_mul_x(series_scale(Rational(3), series_reciprocal(pow5))).truncated(deg);
    Rational fact(1);
    for (int n = 1; n <= 20; ++n) {
      fact *= n;
      CHECK(gen[n] == Rational(tritriangular(n)) * fact);  // ordinary coefficient times n!
    }
  }
  SUBCASE("pair-count identity") {
    for (long long k = 0; k <= 20; ++k) {
      const std::int64_t lhs = binomial(static_cast<int>(2 * k + 4), 2) *
                                   binomial(static_cast<int>(2 * k + 3), 2) -
                               2 * tritriangular(static_cast<int>(2 * k + 2));
      CHECK(lhs == -2 * (k + 1) * (k + 2) * (2 * k + 3));
    }
  }
}
