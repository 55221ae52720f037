#pragma once

#include <vector>

#include "strangeq/numerics.hpp"
#include "strangeq/rational.hpp"

namespace strangeq {

/* Dense integer polynomial, little-endian coefficients. */
using ZPoly = std::vector<mpz_class>;

long euler_phi(long m);

/* m-th cyclotomic polynomial, computed by exact division of x^m - 1 by the
 * cyclotomic polynomials of the proper divisors. Memoized; safe for
 * concurrent readers. */
const ZPoly& cyclo_poly(long m);

/* Element of Z[zeta_m] in the canonical power basis 1, zeta, ...,
 * zeta^{phi(m)-1}: coefficients are the residue mod the m-th cyclotomic
 * polynomial, so equal ring elements have identical coefficient lists. */
class CycloInt {
 public:
  explicit CycloInt(long m);
  static CycloInt from_int(long m, const mpz_class& v);
  static CycloInt zeta(long m, long power = 1);
  static CycloInt from_poly(long m, const ZPoly& p);

  long conductor() const { return m_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const;
  std::string str() const;

  friend CycloInt operator+(const CycloInt& x, const CycloInt& y);
  friend CycloInt operator-(const CycloInt& x, const CycloInt& y);
  friend CycloInt operator*(const CycloInt& x, const CycloInt& y);
  CycloInt operator-() const;
  friend bool operator==(const CycloInt& x, const CycloInt& y) {
    return x.m_ == y.m_ && x.c_ == y.c_;
  }
  friend bool operator!=(const CycloInt& x, const CycloInt& y) { return !(x == y); }

 private:
  long m_;
  std::vector<mpz_class> c_;  // length phi(m)
};

enum class StrangeKind { F, Ftilde };

/* Exact value of the truncating series at q = zeta_m:
 *   F:      sum_{n=0}^{m-1} (zeta;zeta)_n
 *   Ftilde: sum_{n=0}^{m-1} (-1)^n (zeta;zeta)_n                       */
CycloInt strange_at_root(StrangeKind kind, long m);

/* Generalized alternating series at q = zeta_m. Parameters must embed into
 * Z[zeta_m] (integers, or exact imaginary parts when 4 | m) and some
 * numerator factor 1 - a_i zeta^j must vanish for j <= 4m, otherwise the
 * series does not truncate and this errors. Denominator factors are checked
 * for poles. The exact sum is computed in Q(zeta_m); a result outside
 * Z[zeta_m] is reported as a domain error. */
CycloInt strange_at_root(const ParamSet& params, long m);

/* Numerical image at the principal root exp(2 pi i / m). */
BigComplex embed_numeric(const CycloInt& x, Precision p);

}  // namespace strangeq
