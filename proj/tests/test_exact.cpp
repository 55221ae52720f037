#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include <strangeq/exact.hpp>
#include <strangeq/rational.hpp>

using namespace strangeq;

namespace {

TruncatedSeries from_ints(const std::vector<long>& cs) {
  TruncatedSeries s(static_cast<long>(cs.size()) - 1);
  for (std::size_t k = 0; k < cs.size(); ++k) s.set_coeff(static_cast<long>(k), Rat(cs[k]));
  return s;
}

/* Brute-force product of (1 - a q^k) for k = 1..n, as plain convolution. */
std::vector<Rat> brute_pochhammer(const Rat& a, long n, long order) {
  std::vector<Rat> acc(static_cast<std::size_t>(order) + 1, Rat(0));
  acc[0] = Rat(1);
  for (long k = 1; k <= n; ++k) {
    std::vector<Rat> next(acc.size(), Rat(0));
    for (std::size_t t = 0; t < acc.size(); ++t) {
      next[t] = next[t] + acc[t];
      if (t + static_cast<std::size_t>(k) < acc.size())
        next[t + static_cast<std::size_t>(k)] =
            next[t + static_cast<std::size_t>(k)] - a * acc[t];
    }
    acc = next;
  }
  return acc;
}

ParamSet random_params(std::mt19937_64& rng) {
  const Rat pool[] = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
  ParamSet p;
  std::size_t r = rng() % 4, s = rng() % 4;
  for (std::size_t i = 0; i < r; ++i) p.a.push_back(GaussRat(pool[rng() % 7]));
  for (std::size_t j = 0; j < s; ++j) p.b.push_back(GaussRat(pool[rng() % 7]));
  return p;
}

}  // namespace

TEST_CASE("series construction, truncation and comparison") {
  TruncatedSeries s = TruncatedSeries::constant(Rat(3), 5);
  CHECK(s.order() == 5);
  CHECK(s.coeff(0) == Rat(3));
  CHECK(s.coeff(5) == Rat(0));

  TruncatedSeries m = TruncatedSeries::monomial(Rat(2), 3, 5);
  CHECK(m.coeff(3) == Rat(2));
  CHECK(m.coeff(0) == Rat(0));

  CHECK(s.truncate(2).order() == 2);
  CHECK(s.truncate(2).coeff(0) == Rat(3));
  CHECK(from_ints({1, 2}) == from_ints({1, 2}));
  CHECK(from_ints({1, 2}) != from_ints({1, 3}));
}

TEST_CASE("series ring operations") {
  TruncatedSeries one_plus_q = from_ints({1, 1, 0});
  TruncatedSeries sq = one_plus_q * one_plus_q;
  CHECK(sq == from_ints({1, 2, 1}));
  CHECK(one_plus_q + one_plus_q == from_ints({2, 2, 0}));
  CHECK(one_plus_q - one_plus_q == from_ints({0, 0, 0}));
  CHECK(-one_plus_q == from_ints({-1, -1, 0}));

  // Multiplication truncates to the smaller order.
  TruncatedSeries low = from_ints({1, 1});
  CHECK((low * sq).order() == 1);
}

TEST_CASE("first mismatch reporting") {
  CHECK(!first_mismatch(from_ints({1, 2, 3}), from_ints({1, 2, 3})));
  auto idx = first_mismatch(from_ints({1, 2, 3}), from_ints({1, 5, 3}));
  REQUIRE(idx.has_value());
  CHECK(*idx == 1);
}

TEST_CASE("series inversion round trips on random units") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    TruncatedSeries s(30);
    s.set_coeff(0, Rat(1));
    for (long k = 1; k <= 30; ++k)
      s.set_coeff(k, Rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
    TruncatedSeries inv = ps_inv(s);
    CHECK(s * inv == TruncatedSeries::constant(Rat(1), 30));
  }
  CHECK_THROWS_AS(ps_inv(from_ints({0, 1})), std::domain_error);
}

TEST_CASE("one-minus factor multiply and divide are inverse operations") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    TruncatedSeries s(20);
    for (long k = 0; k <= 20; ++k) s.set_coeff(k, Rat(static_cast<long>(rng() % 7) - 3));
    Rat a(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 2));
    long j = 1 + static_cast<long>(rng() % 4);
    TruncatedSeries t = s;
    t.mul_one_minus(a, j);
    t.div_one_minus(a, j);
    CHECK(t == s);
  }
}

TEST_CASE("infinite pochhammer expansion starts with the expected pattern") {
  TruncatedSeries qq = ps_pochhammer(Rat(1), 6);
  CHECK(qq == from_ints({1, -1, -1, 0, 0, 1, 0}));
  TruncatedSeries qq7 = ps_pochhammer(Rat(1), 7);
  CHECK(qq7.coeff(7) == Rat(1));

  TruncatedSeries mq = ps_pochhammer(Rat(-1), 3);
  CHECK(mq == from_ints({1, 1, 1, 2}));
}

TEST_CASE("pochhammer expansions match brute-force polynomial products") {
  // 40 factors push every exponent beyond order 30, so the tails agree too.
  std::vector<Rat> brute = brute_pochhammer(Rat(1), 40, 30);
  TruncatedSeries fast = ps_pochhammer(Rat(1), 30);
  for (long k = 0; k <= 30; ++k) CHECK(fast.coeff(k) == brute[static_cast<std::size_t>(k)]);

  std::vector<Rat> bruteh = brute_pochhammer(Rat(-1, 2), 40, 25);
  TruncatedSeries fasth = ps_pochhammer(Rat(-1, 2), 25);
  for (long k = 0; k <= 25; ++k) CHECK(fasth.coeff(k) == bruteh[static_cast<std::size_t>(k)]);
}

TEST_CASE("finite pochhammer expansion") {
  // (1-q)(1-q^2) = 1 - q - q^2 + q^3
  CHECK(ps_pochhammer_finite(Rat(1), 2, 3) == from_ints({1, -1, -1, 1}));
  std::vector<Rat> brute = brute_pochhammer(Rat(1, 2), 5, 12);
  TruncatedSeries fast = ps_pochhammer_finite(Rat(1, 2), 5, 12);
  for (long k = 0; k <= 12; ++k) CHECK(fast.coeff(k) == brute[static_cast<std::size_t>(k)]);
}

TEST_CASE("euler pentagonal coefficient pattern to order 100") {
  TruncatedSeries qq = ps_pochhammer(Rat(1), 100);
  std::vector<int> expected(101, 0);
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 > 100 && e2 > 100) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    if (e1 <= 100) expected[static_cast<std::size_t>(e1)] = sign;
    if (e2 <= 100) expected[static_cast<std::size_t>(e2)] = sign;
  }
  expected[0] = 1;
  for (long k = 0; k <= 100; ++k) CHECK(qq.coeff(k) == Rat(expected[static_cast<std::size_t>(k)]));
}

TEST_CASE("grouped even-odd partial sums of the degenerate series vanish") {
  ParamSet grandi = ParamSet::parse("", "");
  TruncatedSeries plus = ps_phi_plus(grandi, 10);
  CHECK(plus == TruncatedSeries::constant(Rat(0), 10));
  CHECK(ps_product(grandi, 10) == TruncatedSeries::constant(Rat(1), 10));
  CHECK(ps_theorem_rhs(grandi, 10) == TruncatedSeries::constant(Rat(1), 10));
}

TEST_CASE("grouped partial-sum series leading terms") {
  TruncatedSeries f_plus = ps_phi_plus(ParamSet::parse("1", ""), 4);
  CHECK(f_plus == from_ints({0, 1, 0, 1, -1}));

  TruncatedSeries phi_plus = ps_phi_plus(ParamSet::parse("", "-1"), 3);
  CHECK(phi_plus == from_ints({0, 1, -1, 2}));
}

TEST_CASE("grouped terms gain valuation quadratically") {
  // The n-th grouped term starts at exponent 2n+1, so doubling the group
  // count must not change coefficients below that threshold.
  ParamSet p = ParamSet::parse("1,-1/2", "1/3");
  TruncatedSeries a = ps_phi_plus(p, 25);
  TruncatedSeries b = ps_phi_plus(p, 40).truncate(25);
  CHECK(a == b);
}

TEST_CASE("sigma expansions agree between both published forms") {
  SigmaSeries s = ps_sigma(200);
  CHECK(!first_mismatch(s.lost_notebook, s.andrews));
  TruncatedSeries head = s.lost_notebook.truncate(8);
  CHECK(head == from_ints({1, 1, -1, 2, -2, 1, 0, 1, -2}));
}

TEST_CASE("f expansions agree between both published forms") {
  FSeries f = ps_f(200);
  CHECK(!first_mismatch(f.ramanujan, f.fine));
  TruncatedSeries head = f.ramanujan.truncate(8);
  CHECK(head == from_ints({1, 1, -2, 3, -3, 3, -5, 7, -6}));
}

TEST_CASE("identity holds exactly for the two named specializations") {
  ExactCheck one = ps_theorem_check(ParamSet::parse("1", ""), 100);
  CHECK(one.ok);
  ExactCheck two = ps_theorem_check(ParamSet::parse("", "-1"), 100);
  CHECK(two.ok);
}

TEST_CASE("specialized right-hand sides reproduce sigma and f") {
  SigmaSeries s = ps_sigma(60);
  CHECK(ps_theorem_rhs(ParamSet::parse("1", ""), 60) == s.andrews);
  FSeries f = ps_f(60);
  CHECK(ps_theorem_rhs(ParamSet::parse("", "-1"), 60) == f.fine);
}

TEST_CASE("identity holds exactly on random rational parameter sets") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    ParamSet p = random_params(rng);
    ExactCheck c = ps_theorem_check(p, 25);
    CAPTURE(p.str());
    CHECK(c.ok);
  }
}

TEST_CASE("left-hand side assembles from its two published pieces") {
  ParamSet p = ParamSet::parse("1/2", "-1/2");
  TruncatedSeries lhs = ps_theorem_lhs(p, 30);
  TruncatedSeries manual =
      ps_phi_plus(p, 30) + ps_phi_plus(p, 30) + ps_product(p, 30);
  CHECK(lhs == manual);
}

TEST_CASE("mismatches are reported with a witness index") {
  // An intentionally wrong comparison: constant 1 against the sigma series.
  TruncatedSeries sigma = ps_sigma(10).lost_notebook;
  auto idx = first_mismatch(TruncatedSeries::constant(Rat(1), 10), sigma);
  REQUIRE(idx.has_value());
  CHECK(*idx == 1);
}

TEST_CASE("complex parameters are rejected in exact mode") {
  ParamSet p = ParamSet::parse("i", "");
  CHECK_THROWS_AS(ps_theorem_rhs(p, 10), std::invalid_argument);
}
