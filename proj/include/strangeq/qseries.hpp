#pragma once

#include <stdexcept>
#include <string>

#include "strangeq/exact.hpp"
#include "strangeq/numerics.hpp"
#include "strangeq/rational.hpp"

namespace strangeq {

/* Value of a convergent series or product together with an a-posteriori
 * geometric bound on the discarded tail and the number of terms consumed. */
struct SeriesValue {
  BigComplex value;
  BigFloat tail_bound;
  long terms_used = 0;
  bool trivial_point = false;  // q = 0 short-circuit
};

/* Denominator factor 1 - b_j q^k too close to zero to divide through. */
class PoleError : public std::domain_error {
 public:
  PoleError(std::size_t j, long k)
      : std::domain_error("denominator pole: b_" + std::to_string(j) + " q^" +
                          std::to_string(k) + " = 1"),
        param_index(j),
        power(k) {}
  std::size_t param_index;
  long power;
};

/* The geometric-ratio tail certificate could not be established within the
 * iteration cap. */
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(long cap)
      : std::runtime_error("no tail bound within " + std::to_string(cap) + " terms"),
        terms(cap) {}
  long terms;
};

/* Watches the magnitudes of successive added terms; once the ratio of
 * consecutive nonzero terms stays below 1 over three steps, bounds the tail
 * by the trailing geometric series (ratio inflated by 1.1 for safety) and
 * reports completion when that bound drops under tol. */
class GeometricTail {
 public:
  GeometricTail(BigFloat tol, long cap);

  /* Feed |t_n| of the term just added; true once the tail bound <= tol.
   * Throws NonConvergence when the cap is hit first. */
  bool done(const BigFloat& term_mag);
  /* An exactly-zero term that provably stays zero (truncated series). */
  void mark_truncated();

  const BigFloat& tail_bound() const { return bound_; }
  long cap() const { return cap_; }
  long count() const { return count_; }

 private:
  BigFloat tol_, bound_, last_mag_;
  double ratio_hist_[3] = {0, 0, 0};
  int streak_ = 0;
  long cap_, count_ = 0;
  bool has_last_ = false;
  bool done_ = false;
};

/* Iteration cap from the design budget: 10 * digits / -log10|q| + 100. */
long iteration_cap(const BigFloat& tol, const BigComplex& q);

/* (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j). */
BigComplex pochhammer_finite(const BigComplex& a, const BigComplex& q, long n);

/* (a;q)_inf for |q| < 1, with multiplicative tail turned into an additive
 * bound. A vanishing factor short-circuits to exactly zero. */
SeriesValue pochhammer_inf(const BigComplex& a, const BigComplex& q, const BigFloat& tol,
                           long max_terms = 0);

/* prod_i (a_i q;q)_inf / prod_j (b_j q;q)_inf. */
SeriesValue product_P(const ParamSet& params, const BigComplex& q, const BigFloat& tol,
                      long max_terms = 0);

/* n-th term prod_i (a_i q;q)_n / prod_j (b_j q;q)_n of the generalized
 * alternating series (sign excluded). */
BigComplex strange_term(const ParamSet& params, const BigComplex& q, long n);

/* Convergent right side of the two-limit identity:
 * 1 - sum_{n>=1} (-1)^n q^n (alpha(q^n) - beta(q^n))
 *       prod_i (a_i q;q)_{n-1} / prod_j (b_j q;q)_n                     */
SeriesValue theorem_rhs(const ParamSet& params, const BigComplex& q, const BigFloat& tol,
                        long max_terms = 0);

/* sigma(q), in either of its two series forms. */
SeriesValue sigma_eval(const BigComplex& q, const BigFloat& tol, SigmaForm form,
                       long max_terms = 0);

/* f(q), in either of its two series forms. */
SeriesValue f_eval(const BigComplex& q, const BigFloat& tol, FForm form, long max_terms = 0);

/* Numeric value of the truncated polynomial at q, with an extrapolated
 * geometric estimate of everything beyond the truncation order in the
 * tail_bound field. */
SeriesValue eval_series_at(const TruncatedSeries& s, const BigComplex& q);

/* Horner evaluation of an alpha polynomial. */
BigComplex eval_poly(const AlphaPoly& p, const BigComplex& x);

/* Raises std::domain_error unless |q| < 1 (or q = 0, which callers treat as
 * the trivial point). */
void require_unit_disk(const BigComplex& q);

}  // namespace strangeq
