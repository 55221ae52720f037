#pragma once

#include <vector>

#include "strangeq/qseries.hpp"

namespace strangeq {

/* The two q-encoded fractions of interest, each of the shape
 *   1 / (b_0 + a_1 / (b_1 + a_2 / (b_2 + ...)))
 * with b_0 = 1 and b_k = q^k. For the first, a_k = 1 - q^k; for the
 * second, a_1 = 1 and a_k = 1 + q^{k-1} from k = 2 on. Convergent k cuts
 * the fraction after partial numerator a_k, and equals the k-th partial
 * sum of the matching alternating series. */
enum class CFKind { strange_F, strange_phi };

struct CFSpec {
  CFKind kind;
  const char* description;

  /* Partial numerator a_k (k >= 1) and denominator b_k (k >= 0). */
  Rat a_rat(long k, const Rat& q) const;
  Rat b_rat(long k, const Rat& q) const;
  BigComplex a_cx(long k, const BigComplex& q) const;
  BigComplex b_cx(long k, const BigComplex& q) const;
};

CFSpec cf_strange_F();
CFSpec cf_strange_phi();

/* num and den follow the classical three-term recurrence
 * h_k = b_k h_{k-1} + a_k h_{k-2} with seeds (1, 0) for num and (0, 1) for
 * den (and a_0 = 1). Because the overall fraction is the reciprocal of the
 * part below the leading 1/, the convergent's value is den/num. */
template <typename T>
struct Convergent {
  long index;
  T num, den, value;
};

std::vector<Convergent<Rat>> convergents_exact(const CFSpec& spec, const Rat& q, long count);
std::vector<Convergent<BigComplex>> convergents_numeric(const CFSpec& spec, const BigComplex& q,
                                                        long count);

/* Which convergent subsequence feeds the limit: the fraction's own
 * 1-based convergent parity, so `even` selects indices 1, 3, 5, ... of the
 * 0-based list. */
enum class CFParity { even, odd };

/* f(q) through the second fraction: twice the limit of one convergent
 * parity class, plus (even) or minus (odd) 1/(-q;q)_inf. Both parities
 * must give the same value. */
SeriesValue f_via_cf(const BigComplex& q, const BigFloat& tol, CFParity parity);

}  // namespace strangeq
