#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "strangeq/contfrac.hpp"

using namespace strangeq;

namespace {

const Precision p256(256);

BigFloat dec(const char* s) { return BigFloat::from_decimal(s, p256); }
BigFloat frat(const Rat& r) { return BigFloat::from_rat(r, p256); }

BigComplex cx_rat(const Rat& re, const Rat& im = Rat(0)) {
  return BigComplex(frat(re), frat(im));
}

/* Exact partial sums of the matching alternating series, advanced one
 * pochhammer factor per index. */
std::vector<Rat> series_partial_sums(CFKind kind, const Rat& q, long count) {
  std::vector<Rat> sums;
  sums.reserve(count + 1);
  Rat term(1), qn(1), sum(0);
  for (long n = 0; n <= count; ++n) {
    if (n > 0) {
      qn *= q;
      if (kind == CFKind::strange_F)
        term *= Rat(1) - qn;
      else
        term /= Rat(1) + qn;
    }
    if (n % 2 == 0)
      sum += term;
    else
      sum -= term;
    sums.push_back(sum);
  }
  return sums;
}

}  // namespace

TEST_CASE("convergents equal the alternating partial sums at rational points") {
  std::vector<Rat> points = {Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(-1, 2)};
  for (const CFSpec& spec : {cf_strange_F(), cf_strange_phi()}) {
    for (const Rat& q : points) {
      auto conv = convergents_exact(spec, q, 100);
      auto sums = series_partial_sums(spec.kind, q, 100);
      REQUIRE(conv.size() == 101);
      for (long k = 0; k <= 100; ++k) {
        CHECK(conv[k].index == k);
        CHECK(conv[k].value == sums[k]);
      }
    }
  }
}

TEST_CASE("first convergents have their hand-computed values") {
  Rat half(1, 2);

  auto f = convergents_exact(cf_strange_F(), half, 6);
  std::vector<Rat> f_expect = {Rat(1),          Rat(1, 2),        Rat(7, 8),
                               Rat(35, 64),     Rat(875, 1024),   Rat(18235, 32768),
                               Rat(1782235, 2097152)};
  for (std::size_t k = 0; k < f_expect.size(); ++k) CHECK(f[k].value == f_expect[k]);

  auto p = convergents_exact(cf_strange_phi(), half, 6);
  std::vector<Rat> p_expect = {Rat(1),         Rat(1, 3),         Rat(13, 15),
                               Rat(53, 135),   Rat(385, 459),     Rat(30757, 75735),
                               Rat(4096357, 4922775)};
  for (std::size_t k = 0; k < p_expect.size(); ++k) CHECK(p[k].value == p_expect[k]);
}

TEST_CASE("count zero yields only the leading convergent") {
  auto conv = convergents_exact(cf_strange_F(), Rat(1, 2), 0);
  REQUIRE(conv.size() == 1);
  CHECK(conv[0].value == Rat(1));
  CHECK_THROWS_AS(convergents_exact(cf_strange_F(), Rat(1, 2), -1), std::invalid_argument);
}

TEST_CASE("determinant of consecutive convergents telescopes the numerators") {
  Rat half(1, 2);
  for (const CFSpec& spec : {cf_strange_F(), cf_strange_phi()}) {
    auto conv = convergents_exact(spec, half, 30);
    Rat prod(1);
    for (long k = 1; k <= 30; ++k) {
      prod *= spec.a_rat(k, half);
      Rat det = conv[k].num * conv[k - 1].den - conv[k - 1].num * conv[k].den;
      Rat expect = (k % 2 == 1) ? prod : -prod;
      CHECK(det == expect);
    }
  }
}

TEST_CASE("partial numerators and denominators agree across the two evaluators") {
  // dyadic point, so every power is exactly representable
  Rat q(3, 8);
  BigComplex qc = cx_rat(q);
  for (const CFSpec& spec : {cf_strange_F(), cf_strange_phi()}) {
    for (long k = 1; k <= 12; ++k) {
      BigComplex a = spec.a_cx(k, qc);
      CHECK(a.re() == frat(spec.a_rat(k, q)));
      CHECK(a.im().is_zero());
      BigComplex b = spec.b_cx(k, qc);
      CHECK(b.re() == frat(spec.b_rat(k, q)));
      CHECK(b.im().is_zero());
    }
    CHECK(spec.b_cx(0, qc).re() == BigFloat::from_long(1, p256));
    CHECK_THROWS_AS(spec.a_rat(0, q), std::invalid_argument);
    CHECK_THROWS_AS(spec.a_cx(0, qc), std::invalid_argument);
    CHECK_THROWS_AS(spec.b_rat(-1, q), std::invalid_argument);
  }
}

TEST_CASE("numeric convergents track the exact ones") {
  Rat q(1, 2);
  BigComplex qc = cx_rat(q);
  BigFloat slack = BigFloat::pow2(-200, Precision(64));
  for (const CFSpec& spec : {cf_strange_F(), cf_strange_phi()}) {
    auto exact = convergents_exact(spec, q, 40);
    auto numeric = convergents_numeric(spec, qc, 40);
    REQUIRE(numeric.size() == 41);
    for (long k = 0; k <= 40; ++k) {
      BigComplex ref = cx_rat(exact[k].value);
      CHECK((numeric[k].value - ref).abs() < slack);
    }
  }
}

TEST_CASE("second fraction recovers f from either convergent parity") {
  BigFloat tol = dec("1e-32");
  BigFloat slack = dec("1e-30");
  for (const Rat& qr : {Rat(1, 2), Rat(1, 100)}) {
    BigComplex q = cx_rat(qr);
    SeriesValue direct = f_eval(q, tol, FForm::Ramanujan);
    SeriesValue even = f_via_cf(q, tol, CFParity::even);
    SeriesValue odd = f_via_cf(q, tol, CFParity::odd);
    CHECK((even.value - direct.value).abs() < slack);
    CHECK((odd.value - direct.value).abs() < slack);
    CHECK((even.value - odd.value).abs() < slack);
    CHECK(even.tail_bound < slack);
    CHECK(even.terms_used > 0);
  }
}

TEST_CASE("fraction evaluation rejects points outside its domain") {
  BigFloat tol = dec("1e-20");
  CHECK_THROWS_AS(f_via_cf(cx_rat(Rat(0)), tol, CFParity::even), std::domain_error);
  CHECK_THROWS_AS(f_via_cf(cx_rat(Rat(3, 2)), tol, CFParity::even), std::domain_error);
  CHECK_THROWS_AS(f_via_cf(cx_rat(Rat(0), Rat(1)), tol, CFParity::odd), std::domain_error);

  // the truncated fraction stays well defined at q = 0 even though the
  // limit does not exist there; convergents collapse to the 1, 0, 1 pattern
  auto at_zero = convergents_exact(cf_strange_F(), Rat(0), 4);
  REQUIRE(at_zero.size() == 5);
  for (std::size_t k = 0; k < at_zero.size(); ++k)
    CHECK(at_zero[k].value == (k % 2 == 0 ? Rat(1) : Rat(0)));
}
