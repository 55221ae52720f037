#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strangeq {

/* Exact rational scalar, kept in lowest terms with a positive denominator.
 * Thin value wrapper over GMP's mpq layer; every operation preserves the
 * canonical form. */
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit from integers is intended
  Rat(long n, long d);
  explicit Rat(mpz_class n) : v_(std::move(n)) {}
  Rat(mpz_class n, mpz_class d);

  /* Accepts "p", "p/q" and plain decimals like "-0.25" (parsed exactly). */
  static Rat parse(std::string_view text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  Rat abs() const;
  double to_double() const { return v_.get_d(); }

  /* "p/q" with q > 1, otherwise just "p". */
  std::string str() const;

  friend Rat operator+(const Rat& x, const Rat& y) { return Rat(mpq_class(x.v_ + y.v_)); }
  friend Rat operator-(const Rat& x, const Rat& y) { return Rat(mpq_class(x.v_ - y.v_)); }
  friend Rat operator*(const Rat& x, const Rat& y) { return Rat(mpq_class(x.v_ * y.v_)); }
  friend Rat operator/(const Rat& x, const Rat& y);
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& y) { v_ += y.v_; return *this; }
  Rat& operator-=(const Rat& y) { v_ -= y.v_; return *this; }
  Rat& operator*=(const Rat& y) { v_ *= y.v_; return *this; }
  Rat& operator/=(const Rat& y);

  friend bool operator==(const Rat& x, const Rat& y) { return x.v_ == y.v_; }
  friend bool operator!=(const Rat& x, const Rat& y) { return x.v_ != y.v_; }
  friend bool operator<(const Rat& x, const Rat& y) { return x.v_ < y.v_; }
  friend bool operator<=(const Rat& x, const Rat& y) { return x.v_ <= y.v_; }
  friend bool operator>(const Rat& x, const Rat& y) { return x.v_ > y.v_; }
  friend bool operator>=(const Rat& x, const Rat& y) { return x.v_ >= y.v_; }

 private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

/* Rational with an exact rational imaginary part. Parameters of the
 * generalized series live here; purely real values are the common case. */
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long n) : re(n) {}  // NOLINT

  /* Complex literals: "0.3+0.4i", "1/3-1/2i", "0.7i", "-2", "i". */
  static GaussRat parse(std::string_view text);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  std::string str() const;

  friend GaussRat operator+(const GaussRat& x, const GaussRat& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend GaussRat operator-(const GaussRat& x, const GaussRat& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend GaussRat operator*(const GaussRat& x, const GaussRat& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  GaussRat operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussRat& x, const GaussRat& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const GaussRat& x, const GaussRat& y) { return !(x == y); }
};

/* Coefficient lists a_1..a_r and b_1..b_s of the generalized alternating
 * series and its companion product. Empty lists are allowed; the fully
 * empty case degenerates to Grandi's series. */
struct ParamSet {
  std::vector<GaussRat> a;
  std::vector<GaussRat> b;

  static ParamSet parse(std::string_view a_csv, std::string_view b_csv);

  bool all_rational() const;
  std::string str() const;
};

/* Polynomial alpha with (1-c_1 X)...(1-c_k X) = 1 - alpha(X)*X, stored as
 * coefficient list of degree <= k-1 (empty list = zero polynomial). */
struct AlphaPoly {
  std::vector<GaussRat> coeffs;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  bool is_zero() const;
  GaussRat coeff(std::size_t d) const {
    return d < coeffs.size() ? coeffs[d] : GaussRat();
  }
};

AlphaPoly alpha_poly(const std::vector<GaussRat>& cs);

/* Expands prod (1 - c_i X) as a plain coefficient list, used to state the
 * defining identity of AlphaPoly in tests. */
std::vector<GaussRat> linear_product_poly(const std::vector<GaussRat>& cs);

enum class SigmaForm { LostNotebook, Andrews };
enum class FForm { Ramanujan, Fine };

}  // namespace strangeq
