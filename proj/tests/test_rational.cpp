#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include <strangeq/rational.hpp>

using namespace strangeq;

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
  CHECK(Rat::parse("3/4") == Rat(3, 4));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("2") == Rat(2));
  CHECK(Rat::parse("+2") == Rat(2));
  CHECK(Rat::parse("0.125") == Rat(1, 8));
  CHECK(Rat::parse("-0.25") == Rat(-1, 4));
  CHECK(Rat::parse(" 1/3 ") == Rat(1, 3));
  CHECK(Rat::parse("0.1") == Rat(1, 10));
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
}

TEST_CASE("rationals are kept in lowest terms") {
  Rat r(2, 4);
  CHECK(r == Rat(1, 2));
  CHECK(r.str() == "1/2");
  CHECK(Rat(-4, 8).str() == "-1/2");
  CHECK(Rat(6, 3).str() == "2");
  CHECK(Rat(6, 3).is_integer());
  CHECK_FALSE(Rat(1, 2).is_integer());
}

TEST_CASE("rational arithmetic and ordering") {
  Rat a(1, 2), b(1, 3);
  CHECK(a + b == Rat(5, 6));
  CHECK(a - b == Rat(1, 6));
  CHECK(a * b == Rat(1, 6));
  CHECK(a / b == Rat(3, 2));
  CHECK(-a == Rat(-1, 2));
  CHECK(a.abs() == a);
  CHECK((-a).abs() == a);
  CHECK(b < a);
  CHECK(a.sign() == 1);
  CHECK(Rat(0).sign() == 0);
  CHECK(Rat(0).is_zero());
  CHECK_THROWS_AS(a / Rat(0), std::domain_error);
}

TEST_CASE("complex literals parse in every supported shape") {
  GaussRat z = GaussRat::parse("0.3+0.4i");
  CHECK(z.re == Rat(3, 10));
  CHECK(z.im == Rat(2, 5));

  z = GaussRat::parse("1/3-1/2i");
  CHECK(z.re == Rat(1, 3));
  CHECK(z.im == Rat(-1, 2));

  z = GaussRat::parse("0.7i");
  CHECK(z.re == Rat(0));
  CHECK(z.im == Rat(7, 10));

  CHECK(GaussRat::parse("i") == GaussRat(Rat(0), Rat(1)));
  CHECK(GaussRat::parse("-i") == GaussRat(Rat(0), Rat(-1)));
  CHECK(GaussRat::parse("2i+1") == GaussRat(Rat(1), Rat(2)));
  CHECK(GaussRat::parse("-1/2") == GaussRat(Rat(-1, 2)));
  CHECK(GaussRat::parse("0") == GaussRat(Rat(0)));
  CHECK_THROWS_AS(GaussRat::parse("1i+2i"), std::invalid_argument);
  CHECK_THROWS_AS(GaussRat::parse(""), std::invalid_argument);
}

TEST_CASE("complex literal formatting round-trips") {
  const char* cases[] = {"1/2", "-1/2", "i", "-i", "1/3-1/2i", "3/10+2/5i", "7/10i", "0"};
  for (const char* text : cases) {
    GaussRat z = GaussRat::parse(text);
    CHECK(GaussRat::parse(z.str()) == z);
  }
}

TEST_CASE("gaussian rational arithmetic") {
  GaussRat i(Rat(0), Rat(1));
  CHECK(i * i == GaussRat(Rat(-1)));
  GaussRat z(Rat(1), Rat(2)), w(Rat(3), Rat(-1));
  CHECK(z + w == GaussRat(Rat(4), Rat(1)));
  CHECK(z - w == GaussRat(Rat(-2), Rat(3)));
  CHECK(z * w == GaussRat(Rat(5), Rat(5)));
  CHECK(-z == GaussRat(Rat(-1), Rat(-2)));
  CHECK(z.is_zero() == false);
  CHECK(GaussRat(Rat(0), Rat(0)).is_zero());
  CHECK(w.is_real() == false);
  CHECK(GaussRat(Rat(3)).is_real());
}

TEST_CASE("parameter sets parse comma-separated lists") {
  ParamSet p = ParamSet::parse("1,-1/2", "0.25");
  REQUIRE(p.a.size() == 2);
  REQUIRE(p.b.size() == 1);
  CHECK(p.a[0] == GaussRat(Rat(1)));
  CHECK(p.a[1] == GaussRat(Rat(-1, 2)));
  CHECK(p.b[0] == GaussRat(Rat(1, 4)));
  CHECK(p.all_rational());

  ParamSet empty = ParamSet::parse("", "");
  CHECK(empty.a.empty());
  CHECK(empty.b.empty());

  ParamSet with_i = ParamSet::parse("i", "");
  CHECK_FALSE(with_i.all_rational());
}

TEST_CASE("alpha polynomial for fixed parameter lists") {
  AlphaPoly one = alpha_poly({GaussRat(Rat(1))});
  REQUIRE(one.coeffs.size() == 1);
  CHECK(one.coeffs[0] == GaussRat(Rat(1)));

  // (1-X)(1+X) = 1 - X^2, so the weight polynomial is X itself.
  AlphaPoly pm = alpha_poly({GaussRat(Rat(1)), GaussRat(Rat(-1))});
  REQUIRE(pm.coeffs.size() == 2);
  CHECK(pm.coeffs[0] == GaussRat(Rat(0)));
  CHECK(pm.coeffs[1] == GaussRat(Rat(1)));

  AlphaPoly two_three = alpha_poly({GaussRat(Rat(2)), GaussRat(Rat(3))});
  REQUIRE(two_three.coeffs.size() == 2);
  CHECK(two_three.coeffs[0] == GaussRat(Rat(5)));
  CHECK(two_three.coeffs[1] == GaussRat(Rat(-6)));

  CHECK(alpha_poly({}).is_zero());
}

TEST_CASE("alpha polynomial reconstructs the defining product") {
  std::mt19937_64 rng(7);
  const Rat pool[] = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GaussRat> cs;
    std::size_t n = rng() % 4;
    for (std::size_t k = 0; k < n; ++k) cs.push_back(GaussRat(pool[rng() % 7]));

    std::vector<GaussRat> prod = linear_product_poly(cs);
    AlphaPoly alpha = alpha_poly(cs);
    // prod(X) must equal 1 - alpha(X) * X coefficient by coefficient.
    REQUIRE(!prod.empty());
    CHECK(prod[0] == GaussRat(Rat(1)));
    for (std::size_t d = 1; d < prod.size(); ++d)
      CHECK(prod[d] == -alpha.coeff(static_cast<long>(d) - 1));
    for (std::size_t d = prod.size(); d <= alpha.coeffs.size(); ++d)
      CHECK(alpha.coeff(static_cast<long>(d) - 1) == GaussRat(Rat(0)));
  }
}
