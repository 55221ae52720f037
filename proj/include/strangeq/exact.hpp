#pragma once

#include <optional>
#include <vector>

#include "strangeq/rational.hpp"

namespace strangeq {

/* Formal power series over Q truncated at a fixed order: coefficients of
 * q^0 .. q^N. Binary operations on mixed orders truncate to the smaller
 * one, so every held coefficient is exact. */
class TruncatedSeries {
 public:
  explicit TruncatedSeries(long order);
  static TruncatedSeries constant(const Rat& c, long order);
  static TruncatedSeries monomial(const Rat& c, long k, long order);

  long order() const { return static_cast<long>(c_.size()) - 1; }
  const Rat& coeff(long k) const { return c_[static_cast<std::size_t>(k)]; }
  void set_coeff(long k, const Rat& v) { c_[static_cast<std::size_t>(k)] = v; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  TruncatedSeries truncate(long order) const;

  /* In-place multiply by (1 - a q^j), j >= 1. Exact and O(N). */
  void mul_one_minus(const Rat& a, long j);
  /* In-place multiply by 1/(1 - a q^j) = sum_t a^t q^{jt}. Exact and O(N). */
  void div_one_minus(const Rat& a, long j);
  /* In-place multiply by sign * q^k (shift up, dropping overflow). */
  void shift_scale(const Rat& c, long k);

  friend TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y);
  friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y);
  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& y);
  TruncatedSeries& operator-=(const TruncatedSeries& y);

  /* Equal order and coefficient lists. */
  friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
    return x.c_ == y.c_;
  }
  friend bool operator!=(const TruncatedSeries& x, const TruncatedSeries& y) {
    return !(x == y);
  }

 private:
  std::vector<Rat> c_;  // c_[k] multiplies q^k
};

/* Smallest k where the coefficients differ, over the common order. */
std::optional<long> first_mismatch(const TruncatedSeries& x, const TruncatedSeries& y);

/* Multiplicative inverse up to the series order; the constant term must be
 * nonzero. */
TruncatedSeries ps_inv(const TruncatedSeries& x);

/* (aq; q)_inf mod q^{N+1}, i.e. prod_{j=1..N} (1 - a q^j) truncated. */
TruncatedSeries ps_pochhammer(const Rat& a, long order);

/* (aq; q)_n truncated at the given order. */
TruncatedSeries ps_pochhammer_finite(const Rat& a, long n, long order);

/* The odd-limit companion series sum_n (T_{2n} - T_{2n+1}) where T_k is the
 * k-th term of the generalized alternating series; each grouped term has
 * valuation >= 2n+1, so the sum is finite at any truncation order.
 * Parameters must be rational. */
TruncatedSeries ps_phi_plus(const ParamSet& params, long order);

/* prod_i (a_i q;q)_inf / prod_j (b_j q;q)_inf truncated. */
TruncatedSeries ps_product(const ParamSet& params, long order);

/* The two formal sides of the two-limit identity:
 *   lhs = 2 * ps_phi_plus + ps_product
 *   rhs = 1 - sum_{n>=1} (-1)^n q^n (alpha(q^n) - beta(q^n))
 *             * prod_i (a_i q;q)_{n-1} / prod_j (b_j q;q)_n            */
TruncatedSeries ps_theorem_lhs(const ParamSet& params, long order);
TruncatedSeries ps_theorem_rhs(const ParamSet& params, long order);

struct ExactCheck {
  bool ok;
  long index;  // first mismatching power when !ok
  Rat lhs_coeff, rhs_coeff;
};

/* Verifies lhs == rhs coefficientwise through the given order. */
ExactCheck ps_theorem_check(const ParamSet& params, long order);

struct SigmaSeries {
  TruncatedSeries lost_notebook;  // sum q^{n(n+1)/2} / (-q;q)_n
  TruncatedSeries andrews;        // 1 + sum (-1)^n q^{n+1} (q;q)_n
};
SigmaSeries ps_sigma(long order);

struct FSeries {
  TruncatedSeries ramanujan;  // sum q^{n^2} / (-q;q)_n^2
  TruncatedSeries fine;       // 1 - sum_{n>=1} (-1)^n q^n / (-q;q)_n
};
FSeries ps_f(long order);

}  // namespace strangeq
