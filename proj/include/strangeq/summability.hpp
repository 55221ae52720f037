#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "strangeq/qseries.hpp"

namespace strangeq {

/* Unsigned term generator T_n; partial_sums calls it exactly once per index,
 * in order, so recurrence-backed generators stay cheap. */
using TermGen = std::function<BigComplex(long)>;

/* Partial sums S_N of sum (+-1)^n T_n together with the running arithmetic
 * means. Terms are cached as generated. */
struct PartialSumRecord {
  bool alternating = true;
  std::vector<BigComplex> terms;   // unsigned T_n
  std::vector<BigComplex> sums;    // S_0, S_1, ...
  std::vector<BigComplex> cesaro;  // cesaro[N] = (S_0 + ... + S_N) / (N+1)

  long count() const { return static_cast<long>(sums.size()); }
  /* Sums with odd (parity 1) or even (parity 0) last index. */
  std::vector<BigComplex> parity_sums(int parity) const;
};

PartialSumRecord partial_sums(const TermGen& gen, bool alternating, long count);

/* Term generator for the generalized alternating series, advancing
 * T_n = T_{n-1} * prod(1 - a_i q^n) / prod(1 - b_j q^n) one factor at a
 * time. Denominator factors are pole-checked. */
TermGen strange_term_gen(const ParamSet& params, const BigComplex& q);

enum class Behavior { convergent, two_limit_oscillatory, divergent, truncating };

const char* behavior_name(Behavior b);

struct BehaviorClass {
  Behavior tag;
  std::optional<BigComplex> odd_limit;   // limit over sums with odd last index
  std::optional<BigComplex> even_limit;  // limit over sums with even last index
};

/* Classifies the record: detector requires |x_{k+1} - x_k| <=
 * tol * max(1, |x_k|) for four consecutive steps, and the limit is the
 * final element of the subsequence. A run of exactly-zero trailing terms
 * marks the truncating class. */
BehaviorClass parity_limits(const PartialSumRecord& rec, const BigFloat& tol);

/* Detected limit of the Cesaro means, cross-checked against the average of
 * the two parity limits when those exist; nullopt when the detector fails
 * or the cross-check rejects. */
std::optional<BigComplex> cesaro_limit(const PartialSumRecord& rec, const BigFloat& tol);

/* Closed forms for the two subsequence limits from the convergent side:
 * S_odd = (rhs - P)/2 and S_even = (rhs + P)/2. */
std::pair<SeriesValue, SeriesValue> closed_form_limits(const ParamSet& params,
                                                       const BigComplex& q,
                                                       const BigFloat& tol);

/* Residuals |S_N - (rhs + (-1)^N P)/2| for the last 10 partial sums; they
 * should shrink and end below tol for a genuinely two-limit series. */
struct EnvelopeReport {
  std::vector<BigFloat> residuals;
  BigFloat max_residual;
  bool nonincreasing = false;  // up to tol slack
  bool final_below_tol = false;
  bool ok = false;
  SeriesValue rhs;
  SeriesValue product;
};

EnvelopeReport oscillation_envelope_check(const ParamSet& params, const BigComplex& q,
                                          long last_index, const BigFloat& tol);

/* Default number of partial sums: max(64, ceil(120 / -log2|q|)). */
long default_term_count(const BigComplex& q);

}  // namespace strangeq
