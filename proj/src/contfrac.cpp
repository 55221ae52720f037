#include "strangeq/contfrac.hpp"

namespace strangeq {

namespace {

Rat rat_pow(const Rat& q, long e) {
  Rat out(1);
  for (long i = 0; i < e; ++i) out *= q;
  return out;
}

}  // namespace

Rat CFSpec::a_rat(long k, const Rat& q) const {
  if (k < 1) throw std::invalid_argument("partial numerators start at k = 1");
  if (kind == CFKind::strange_F) return Rat(1) - rat_pow(q, k);
  return k == 1 ? Rat(1) : Rat(1) + rat_pow(q, k - 1);
}

Rat CFSpec::b_rat(long k, const Rat& q) const {
  if (k < 0) throw std::invalid_argument("partial denominators start at k = 0");
  return k == 0 ? Rat(1) : rat_pow(q, k);
}

namespace {

BigComplex cx_pow(const BigComplex& q, long e) {
  BigComplex out = BigComplex::from_long(1, Precision(q.prec_bits()));
  for (long i = 0; i < e; ++i) out = out * q;
  return out;
}

}  // namespace

BigComplex CFSpec::a_cx(long k, const BigComplex& q) const {
  if (k < 1) throw std::invalid_argument("partial numerators start at k = 1");
  BigComplex one = BigComplex::from_long(1, Precision(q.prec_bits()));
  if (kind == CFKind::strange_F) return one - cx_pow(q, k);
  return k == 1 ? one : one + cx_pow(q, k - 1);
}

BigComplex CFSpec::b_cx(long k, const BigComplex& q) const {
  if (k < 0) throw std::invalid_argument("partial denominators start at k = 0");
  return cx_pow(q, k);
}

CFSpec cf_strange_F() { return {CFKind::strange_F, "alternating (q;q)_n series"}; }
CFSpec cf_strange_phi() { return {CFKind::strange_phi, "alternating 1/(-q;q)_n series"}; }

std::vector<Convergent<Rat>> convergents_exact(const CFSpec& spec, const Rat& q, long count) {
  if (count < 0) throw std::invalid_argument("negative convergent count");
  std::vector<Convergent<Rat>> out;
  out.reserve(count + 1);
  Rat num_prev2(0), num_prev(1);  // h_{-2}, h_{-1} for num
  Rat den_prev2(1), den_prev(0);  // h_{-2}, h_{-1} for den
  for (long k = 0; k <= count; ++k) {
    Rat a = k == 0 ? Rat(1) : spec.a_rat(k, q);
    Rat b = spec.b_rat(k, q);
    Rat num = b * num_prev + a * num_prev2;
    Rat den = b * den_prev + a * den_prev2;
    if (num.is_zero())
      throw std::domain_error("convergent " + std::to_string(k) + " has zero denominator");
    out.push_back({k, num, den, den / num});
    num_prev2 = num_prev;
    num_prev = num;
    den_prev2 = den_prev;
    den_prev = den;
  }
  return out;
}

namespace {

/* One recurrence step at working precision. */
struct CxState {
  BigComplex num_prev2, num_prev, den_prev2, den_prev, qp, one, q;
};

}  // namespace

std::vector<Convergent<BigComplex>> convergents_numeric(const CFSpec& spec, const BigComplex& q,
                                                        long count) {
  if (count < 0) throw std::invalid_argument("negative convergent count");
  Precision wp(q.prec_bits() + kGuardBits);
  Precision rp(q.prec_bits());
  CxState st{BigComplex(wp), BigComplex::from_long(1, wp), BigComplex::from_long(1, wp),
             BigComplex(wp), BigComplex::from_long(1, wp), BigComplex::from_long(1, wp),
             q.round_to(wp)};
  std::vector<Convergent<BigComplex>> out;
  out.reserve(count + 1);
  for (long k = 0; k <= count; ++k) {
    BigComplex a(wp), b(wp);
    if (k == 0) {
      a = st.one;
      b = st.one;  // b_0 = 1
    } else {
      b = st.qp * st.q;  // q^k (qp holds q^{k-1})
      if (spec.kind == CFKind::strange_F)
        a = st.one - b;  // 1 - q^k
      else
        a = k == 1 ? st.one : st.one + st.qp;  // 1 + q^{k-1}
      st.qp = b;
    }
    BigComplex num = b * st.num_prev + a * st.num_prev2;
    BigComplex den = b * st.den_prev + a * st.den_prev2;
    if (num.is_zero())
      throw std::domain_error("convergent " + std::to_string(k) + " has zero denominator");
    out.push_back({k, num.round_to(rp), den.round_to(rp), (den / num).round_to(rp)});
    st.num_prev2 = st.num_prev;
    st.num_prev = num;
    st.den_prev2 = st.den_prev;
    st.den_prev = den;
  }
  return out;
}

SeriesValue f_via_cf(const BigComplex& q, const BigFloat& tol, CFParity parity) {
  require_unit_disk(q);
  if (q.is_zero()) throw std::domain_error("fraction is only defined for 0 < |q| < 1");
  Precision rp(q.prec_bits());
  Precision wp(q.prec_bits() + kGuardBits);

  /* 1/(-q;q)_inf with its tail pushed through the inversion. */
  BigFloat inner = tol / BigFloat::from_long(8, Precision(64));
  SeriesValue denom = pochhammer_inf(-q.round_to(wp), q.round_to(wp), inner);
  BigComplex one = BigComplex::from_long(1, wp);
  BigFloat dmag = denom.value.abs();
  if (!(denom.tail_bound < dmag))
    throw std::domain_error("companion product too close to zero to invert");
  BigComplex pvalue = one / denom.value;
  BigFloat ptail = denom.tail_bound / (dmag * (dmag - denom.tail_bound));

  /* Walk one parity class of convergents; consecutive differences shrink
   * like |q|^2, so the geometric tail machinery applies to them. */
  long cap = iteration_cap(tol, q);
  GeometricTail tail(inner, cap);

  BigComplex num_prev2(wp), num_prev = one;
  BigComplex den_prev2 = one, den_prev(wp);
  BigComplex qw = q.round_to(wp);
  BigComplex qp = one;  // q^{k-1} for k >= 1
  BigComplex prev_val(wp);
  bool have_prev = false;
  BigComplex limit(wp);
  long step = parity == CFParity::even ? 1 : 0;  // 0-based index parity of the class
  for (long k = 0;; ++k) {
    BigComplex a(wp), b(wp);
    if (k == 0) {
      a = one;
      b = one;
    } else {
      b = qp * qw;
      a = k == 1 ? one : one + qp;
      qp = b;
    }
    BigComplex num = b * num_prev + a * num_prev2;
    BigComplex den = b * den_prev + a * den_prev2;
    num_prev2 = num_prev;
    num_prev = num;
    den_prev2 = den_prev;
    den_prev = den;
    if (k % 2 != step) continue;
    if (num.is_zero())
      throw std::domain_error("convergent " + std::to_string(k) + " has zero denominator");
    BigComplex val = den / num;
    if (!have_prev) {
      prev_val = val;
      have_prev = true;
      continue;
    }
    BigComplex diff = val - prev_val;
    prev_val = val;
    if (tail.done(diff.abs())) {
      limit = val;
      break;
    }
  }

  BigComplex two = BigComplex::from_long(2, wp);
  BigComplex value = parity == CFParity::even ? two * limit + pvalue : two * limit - pvalue;
  BigFloat bound = BigFloat::from_long(2, Precision(64)) * tail.tail_bound() + ptail;
  return {value.round_to(rp), bound, tail.count(), false};
}

}  // namespace strangeq
