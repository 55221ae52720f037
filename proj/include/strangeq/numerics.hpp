#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "strangeq/rational.hpp"

namespace strangeq {

/* Working precision in bits. 64 is the floor; evaluators add kGuardBits
 * internally and round back, so requested precision is what results carry. */
struct Precision {
  long bits;
  explicit Precision(long b) : bits(b) {
    if (b < 64) throw std::invalid_argument("precision below 64 bits");
  }
};

inline constexpr long kGuardBits = 32;
inline constexpr long kDefaultPrecBits = 256;

/* Arbitrary-precision binary float. Plain value semantics over one mpfr_t;
 * binary operations round once, to the wider of the operand precisions.
 * Results are checked finite: overflowing to inf/nan throws instead of
 * propagating. */
class BigFloat {
 public:
  explicit BigFloat(Precision p);
  BigFloat() : BigFloat(Precision(kDefaultPrecBits)) {}
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_long(long v, Precision p);
  static BigFloat from_double(double v, Precision p);
  static BigFloat from_rat(const Rat& v, Precision p);
  /* Decimal string, e.g. "1e-30"; correctly rounded. */
  static BigFloat from_decimal(std::string_view text, Precision p);
  /* 2^e, exact. */
  static BigFloat pow2(long e, Precision p);

  long prec_bits() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  BigFloat round_to(Precision p) const;
  BigFloat abs() const;
  BigFloat sqrt() const;

  friend BigFloat operator+(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator-(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator*(const BigFloat& x, const BigFloat& y);
  friend BigFloat operator/(const BigFloat& x, const BigFloat& y);
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) == 0; }
  friend bool operator!=(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) != 0; }
  friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) < 0; }
  friend bool operator<=(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) <= 0; }
  friend bool operator>(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) > 0; }
  friend bool operator>=(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) >= 0; }

  static BigFloat max(const BigFloat& x, const BigFloat& y) { return x >= y ? x : y; }
  static BigFloat hypot(const BigFloat& x, const BigFloat& y);

  /* Deterministic scientific form with enough digits for the precision. */
  std::string str() const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  void check_finite() const;
  mpfr_t v_;
};

/* Complex value over two BigFloats of equal precision. Multiplication and
 * division form the exact real products at doubled precision before the
 * single rounding, so each component of every operation is correctly
 * rounded at the working precision. */
class BigComplex {
 public:
  explicit BigComplex(Precision p) : re_(p), im_(p) {}
  BigComplex() : BigComplex(Precision(kDefaultPrecBits)) {}
  BigComplex(BigFloat re, BigFloat im);

  static BigComplex from_long(long v, Precision p);
  static BigComplex from_gauss(const GaussRat& v, Precision p);

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  long prec_bits() const { return re_.prec_bits(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  BigComplex round_to(Precision p) const;
  BigComplex conj() const { return BigComplex(re_, -im_); }
  BigFloat abs() const { return BigFloat::hypot(re_, im_); }

  friend BigComplex operator+(const BigComplex& x, const BigComplex& y);
  friend BigComplex operator-(const BigComplex& x, const BigComplex& y);
  friend BigComplex operator*(const BigComplex& x, const BigComplex& y);
  friend BigComplex operator/(const BigComplex& x, const BigComplex& y);
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend bool operator==(const BigComplex& x, const BigComplex& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }
  friend bool operator!=(const BigComplex& x, const BigComplex& y) { return !(x == y); }

  std::string str() const;

 private:
  BigFloat re_, im_;
};

/* Shorthand for the common case: exact Gaussian rational parts,
 * correctly rounded at the given precision. */
inline BigComplex cx(const GaussRat& v, Precision p) { return BigComplex::from_gauss(v, p); }
inline BigFloat cx_abs(const BigComplex& z) { return z.abs(); }

}  // namespace strangeq
