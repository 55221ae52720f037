#include "strangeq/numerics.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace strangeq {

namespace {

long max_prec(const BigFloat& x, const BigFloat& y) {
  return std::max(x.prec_bits(), y.prec_bits());
}

}  // namespace

BigFloat::BigFloat(Precision p) {
  mpfr_init2(v_, p.bits);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::check_finite() const {
  if (!mpfr_number_p(v_)) throw std::overflow_error("non-finite value in float arithmetic");
}

BigFloat BigFloat::from_long(long v, Precision p) {
  BigFloat out(p);
  mpfr_set_si(out.v_, v, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from_double(double v, Precision p) {
  BigFloat out(p);
  mpfr_set_d(out.v_, v, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat BigFloat::from_rat(const Rat& v, Precision p) {
  BigFloat out(p);
  mpfr_set_q(out.v_, v.raw().get_mpq_t(), MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from_decimal(std::string_view text, Precision p) {
  BigFloat out(p);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(out.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("cannot parse decimal: '" + s + "'");
  out.check_finite();
  return out;
}

BigFloat BigFloat::pow2(long e, Precision p) {
  BigFloat out(p);
  mpfr_set_ui_2exp(out.v_, 1, e, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::round_to(Precision p) const {
  BigFloat out(p);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::abs() const {
  BigFloat out{Precision(prec_bits())};
  mpfr_abs(out.v_, v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::sqrt() const {
  BigFloat out{Precision(prec_bits())};
  mpfr_sqrt(out.v_, v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat operator+(const BigFloat& x, const BigFloat& y) {
  BigFloat out(Precision(max_prec(x, y)));
  mpfr_add(out.v_, x.v_, y.v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat operator-(const BigFloat& x, const BigFloat& y) {
  BigFloat out(Precision(max_prec(x, y)));
  mpfr_sub(out.v_, x.v_, y.v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat operator*(const BigFloat& x, const BigFloat& y) {
  BigFloat out(Precision(max_prec(x, y)));
  mpfr_mul(out.v_, x.v_, y.v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat operator/(const BigFloat& x, const BigFloat& y) {
  if (y.is_zero()) throw std::domain_error("float division by zero");
  BigFloat out(Precision(max_prec(x, y)));
  mpfr_div(out.v_, x.v_, y.v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out{Precision(prec_bits())};
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat out(Precision(max_prec(x, y)));
  mpfr_hypot(out.v_, x.v_, y.v_, MPFR_RNDN);
  out.check_finite();
  return out;
}

std::string BigFloat::str() const {
  /* prec * log10(2) significant digits, a couple extra so distinct values
   * keep distinct printouts. */
  long digits = static_cast<long>(static_cast<double>(prec_bits()) * 0.30103) + 2;
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits - 1), v_) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  long p = std::max(re_.prec_bits(), im_.prec_bits());
  if (re_.prec_bits() != p) re_ = re_.round_to(Precision(p));
  if (im_.prec_bits() != p) im_ = im_.round_to(Precision(p));
}

BigComplex BigComplex::from_long(long v, Precision p) {
  return BigComplex(BigFloat::from_long(v, p), BigFloat(p));
}

BigComplex BigComplex::from_gauss(const GaussRat& v, Precision p) {
  return BigComplex(BigFloat::from_rat(v.re, p), BigFloat::from_rat(v.im, p));
}

BigComplex BigComplex::round_to(Precision p) const {
  return BigComplex(re_.round_to(p), im_.round_to(p));
}

BigComplex operator+(const BigComplex& x, const BigComplex& y) {
  return BigComplex(x.re_ + y.re_, x.im_ + y.im_);
}

BigComplex operator-(const BigComplex& x, const BigComplex& y) {
  return BigComplex(x.re_ - y.re_, x.im_ - y.im_);
}

BigComplex operator*(const BigComplex& x, const BigComplex& y) {
  long p = std::max(x.prec_bits(), y.prec_bits());
  /* ac, bd, ad, bc are exact at doubled precision, so each component sees a
   * single rounding. */
  Precision wide(2 * p + 4);
  BigFloat ac(wide), bd(wide), ad(wide), bc(wide), t(wide);
  mpfr_mul(ac.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
  mpfr_mul(bd.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
  mpfr_mul(ad.get(), x.re_.get(), y.im_.get(), MPFR_RNDN);
  mpfr_mul(bc.get(), x.im_.get(), y.re_.get(), MPFR_RNDN);
  BigFloat re{Precision(p)}, im{Precision(p)};
  mpfr_sub(t.get(), ac.get(), bd.get(), MPFR_RNDN);
  mpfr_set(re.get(), t.get(), MPFR_RNDN);
  mpfr_add(t.get(), ad.get(), bc.get(), MPFR_RNDN);
  mpfr_set(im.get(), t.get(), MPFR_RNDN);
  if (!mpfr_number_p(re.get()) || !mpfr_number_p(im.get()))
    throw std::overflow_error("non-finite value in complex multiply");
  return BigComplex(std::move(re), std::move(im));
}

BigComplex operator/(const BigComplex& x, const BigComplex& y) {
  if (y.is_zero()) throw std::domain_error("complex division by zero");
  long p = std::max(x.prec_bits(), y.prec_bits());
  /* x * conj(y) and |y|^2 exactly, then one rounded division per part. */
  Precision wide(2 * p + 4);
  BigFloat nr(wide), ni(wide), den(wide), t1(wide), t2(wide);
  mpfr_mul(t1.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
  mpfr_add(nr.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), x.im_.get(), y.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), x.re_.get(), y.im_.get(), MPFR_RNDN);
  mpfr_sub(ni.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), y.re_.get(), y.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), y.im_.get(), y.im_.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  BigFloat re{Precision(p)}, im{Precision(p)};
  mpfr_div(re.get(), nr.get(), den.get(), MPFR_RNDN);
  mpfr_div(im.get(), ni.get(), den.get(), MPFR_RNDN);
  if (!mpfr_number_p(re.get()) || !mpfr_number_p(im.get()))
    throw std::overflow_error("non-finite value in complex divide");
  return BigComplex(std::move(re), std::move(im));
}

std::string BigComplex::str() const {
  if (im_.is_zero()) return re_.str();
  std::string is = im_.str();
  if (im_.sign() >= 0) return re_.str() + "+" + is + "i";
  return re_.str() + is + "i";
}

}  // namespace strangeq
