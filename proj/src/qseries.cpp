#include "strangeq/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace strangeq {

namespace {

Precision working(const BigComplex& q) { return Precision(q.prec_bits() + kGuardBits); }

BigFloat pole_threshold(long request_bits, Precision wp) {
  return BigFloat::pow2(-(request_bits / 2), wp);
}

BigComplex one_at(Precision p) { return BigComplex::from_long(1, p); }

}  // namespace

void require_unit_disk(const BigComplex& q) {
  BigFloat one = BigFloat::from_long(1, Precision(64));
  if (!(q.abs() < one)) throw std::domain_error("q must lie strictly inside the unit disk");
}

GeometricTail::GeometricTail(BigFloat tol, long cap)
    : tol_(std::move(tol)), bound_(Precision(64)), last_mag_(Precision(64)), cap_(cap) {
  if (tol_.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  if (cap_ < 1) throw std::invalid_argument("iteration cap must be positive");
}

void GeometricTail::mark_truncated() {
  done_ = true;
  bound_ = BigFloat(Precision(64));  // exact zero
}

bool GeometricTail::done(const BigFloat& term_mag) {
  if (done_) return true;
  ++count_;
  if (count_ > cap_) throw NonConvergence(cap_);
  if (term_mag.is_zero()) return false;  // skipped; the streak survives gaps
  if (has_last_) {
    double r = (term_mag / last_mag_).to_double();
    if (r == 0.0) r = 1e-12;  // underflowed ratio; any small stand-in is conservative
    ratio_hist_[streak_ % 3] = r;
    ++streak_;
    if (streak_ >= 3) {
      double rho = std::max({ratio_hist_[0], ratio_hist_[1], ratio_hist_[2]}) * 1.1;
      if (rho > 0.0 && rho < 1.0) {
        BigFloat rb = BigFloat::from_double(rho, Precision(64));
        BigFloat b = term_mag * rb / (BigFloat::from_long(1, Precision(64)) - rb);
        if (b <= tol_) {
          bound_ = b;
          done_ = true;
          return true;
        }
      }
    }
  }
  has_last_ = true;
  last_mag_ = term_mag;
  return false;
}

long iteration_cap(const BigFloat& tol, const BigComplex& q) {
  if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
  double aq = q.abs().to_double();
  if (aq <= 0.0) return 101;
  mpfr_exp_t e = mpfr_get_exp(tol.get());
  double digits = std::max(1.0, -static_cast<double>(e) * 0.30103 + 1.0);
  double l = std::max(-std::log10(aq), 1e-6);
  double cap = 100.0 + std::ceil(10.0 * digits / l);
  return cap > 5e7 ? 50000000L : static_cast<long>(cap);
}

BigComplex pochhammer_finite(const BigComplex& a, const BigComplex& q, long n) {
  if (n < 0) throw std::invalid_argument("negative symbol length");
  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigComplex acc = one;
  BigComplex qp = one;  // q^j
  for (long j = 0; j < n; ++j) {
    acc = acc * (one - a * qp);
    qp = qp * q;
  }
  return acc.round_to(Precision(q.prec_bits()));
}

namespace {

struct InfProduct {
  BigComplex value;
  BigFloat rel_bound;  // relative; exactly zero when the product vanished
  long terms;
  bool exact_zero;
};

/* (a;q)_inf at relative accuracy: stop at factor index n once
 * 1.3 * |a||q|^{n+1} / (1 - |q|) <= rel_target (and the epsilon itself is
 * at most 1/2, which makes the linearized bound sound). A pole_index >= 0
 * turns a vanishing factor into a PoleError for factor exponents >= 1. */
InfProduct poch_inf_rel(const BigComplex& a, const BigComplex& q, const BigFloat& rel_target,
                        long cap, long pole_index) {
  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat fone = BigFloat::from_long(1, wp);
  BigFloat half = BigFloat::from_long(1, wp) / BigFloat::from_long(2, wp);
  BigFloat inflate = BigFloat::from_rat(Rat(13, 10), wp);

  BigFloat absq = q.abs();
  BigFloat absa = a.abs();
  BigFloat geom = fone - absq;  // positive inside the unit disk
  BigFloat thresh = pole_threshold(q.prec_bits(), wp);

  BigComplex acc = one;
  BigComplex qp = one;                 // q^n
  BigFloat qpow = absa;                // |a||q|^n
  for (long n = 0; n <= cap; ++n) {
    BigComplex factor = one - a * qp;
    /* As a denominator (b_j q;q)_inf the n-th factor is 1 - b_j q^{n+1}. */
    if (pole_index >= 0 && factor.abs() < thresh)
      throw PoleError(static_cast<std::size_t>(pole_index), n + 1);
    if (factor.is_zero())
      return {BigComplex(Precision(q.prec_bits())), BigFloat(Precision(64)), n + 1, true};
    acc = acc * factor;
    qp = qp * q;
    qpow = qpow * absq;  // |a||q|^{n+1}
    BigFloat eps = qpow / geom;
    if (eps <= half) {
      BigFloat rel = inflate * eps;
      if (rel <= rel_target) return {acc, rel, n + 1, false};
    }
  }
  throw NonConvergence(cap);
}

}  // namespace

SeriesValue pochhammer_inf(const BigComplex& a, const BigComplex& q, const BigFloat& tol,
                           long max_terms) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  if (q.is_zero()) {
    Precision wp = working(q);
    BigComplex v = one_at(wp) - a.round_to(wp);
    return {v.round_to(rp), BigFloat(Precision(64)), 1, true};
  }
  long cap = max_terms > 0 ? max_terms : iteration_cap(tol, q);

  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat fone = BigFloat::from_long(1, wp);
  BigFloat half = fone / BigFloat::from_long(2, wp);
  BigFloat inflate = BigFloat::from_rat(Rat(13, 10), wp);
  BigFloat absq = q.abs();
  BigFloat geom = fone - absq;

  BigComplex acc = one;
  BigComplex qp = one;
  BigFloat qpow = a.abs();
  for (long n = 0; n <= cap; ++n) {
    BigComplex factor = one - a * qp;
    if (factor.is_zero())
      return {BigComplex(rp), BigFloat(Precision(64)), n + 1, false};
    acc = acc * factor;
    qp = qp * q;
    qpow = qpow * absq;
    BigFloat eps = qpow / geom;
    if (eps <= half) {
      BigFloat bound = inflate * eps * acc.abs();
      if (bound <= tol) return {acc.round_to(rp), bound, n + 1, false};
    }
  }
  throw NonConvergence(cap);
}

SeriesValue product_P(const ParamSet& params, const BigComplex& q, const BigFloat& tol,
                      long max_terms) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  Precision wp = working(q);
  if (q.is_zero())
    return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 1, true};
  long cap = max_terms > 0 ? max_terms : iteration_cap(tol, q);

  long nfac = static_cast<long>(params.a.size() + params.b.size());
  if (nfac == 0) return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 0, false};

  auto run = [&](const BigFloat& rel_each) {
    BigComplex acc = one_at(wp);
    BigFloat rel_total(Precision(64));
    long terms = 0;
    bool zero = false;
    for (std::size_t i = 0; i < params.a.size() && !zero; ++i) {
      auto f = poch_inf_rel(BigComplex::from_gauss(params.a[i], wp) * q, q, rel_each, cap, -1);
      terms = std::max(terms, f.terms);
      if (f.exact_zero) {
        zero = true;
        break;
      }
      acc = acc * f.value;
      rel_total = rel_total + f.rel_bound;
    }
    for (std::size_t j = 0; j < params.b.size() && !zero; ++j) {
      auto f = poch_inf_rel(BigComplex::from_gauss(params.b[j], wp) * q, q, rel_each, cap,
                            static_cast<long>(j + 1));
      terms = std::max(terms, f.terms);
      acc = acc / f.value;
      rel_total = rel_total + f.rel_bound;
    }
    return std::tuple<BigComplex, BigFloat, long, bool>(acc, rel_total, terms, zero);
  };

  /* First pass at a fixed relative target; tighten once if the absolute
   * bound misses tol. */
  BigFloat rel0 = BigFloat::pow2(-64, Precision(64));
  auto [acc, rel_total, terms, zero] = run(rel0);
  if (zero) return {BigComplex(rp), BigFloat(Precision(64)), terms, false};
  BigFloat scale = BigFloat::from_rat(Rat(3, 2), Precision(64));
  BigFloat bound = scale * rel_total * acc.abs();
  if (bound <= tol) return {acc.round_to(rp), bound, terms, false};

  BigFloat mag = acc.abs();
  BigFloat rel_each = tol / (scale * BigFloat::from_long(2 * nfac, Precision(64)) * mag);
  auto [acc2, rel_total2, terms2, zero2] = run(rel_each);
  if (zero2) return {BigComplex(rp), BigFloat(Precision(64)), terms2, false};
  BigFloat bound2 = scale * rel_total2 * acc2.abs();
  return {acc2.round_to(rp), bound2, terms2, false};
}

BigComplex strange_term(const ParamSet& params, const BigComplex& q, long n) {
  if (n < 0) throw std::invalid_argument("negative term index");
  Precision rp(q.prec_bits());
  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat thresh = pole_threshold(q.prec_bits(), wp);

  BigComplex acc = one;
  BigComplex qp = one;  // q^k
  for (long k = 1; k <= n; ++k) {
    qp = qp * q;
    for (const auto& ai : params.a) acc = acc * (one - BigComplex::from_gauss(ai, wp) * qp);
    for (std::size_t j = 0; j < params.b.size(); ++j) {
      BigComplex factor = one - BigComplex::from_gauss(params.b[j], wp) * qp;
      if (factor.abs() < thresh) throw PoleError(j + 1, k);
      acc = acc / factor;
    }
  }
  return acc.round_to(rp);
}

SeriesValue theorem_rhs(const ParamSet& params, const BigComplex& q, const BigFloat& tol,
                        long max_terms) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  if (q.is_zero())
    return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 1, true};

  AlphaPoly alpha = alpha_poly(params.a);
  AlphaPoly beta = alpha_poly(params.b);
  AlphaPoly diff;
  std::size_t dmax = std::max(alpha.coeffs.size(), beta.coeffs.size());
  for (std::size_t d = 0; d < dmax; ++d) diff.coeffs.push_back(alpha.coeff(d) - beta.coeff(d));
  while (!diff.coeffs.empty() && diff.coeffs.back().is_zero()) diff.coeffs.pop_back();
  if (diff.coeffs.empty())
    return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 0, false};

  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat thresh = pole_threshold(q.prec_bits(), wp);
  long cap = max_terms > 0 ? max_terms : iteration_cap(tol, q);
  GeometricTail tail(tol, cap);

  std::vector<BigComplex> as, bs;
  for (const auto& g : params.a) as.push_back(BigComplex::from_gauss(g, wp));
  for (const auto& g : params.b) bs.push_back(BigComplex::from_gauss(g, wp));

  BigComplex acc = one;
  BigComplex pnum = one;  // prod_i (a_i q;q)_{n-1}
  BigComplex pden = one;  // prod_j (b_j q;q)_n
  BigComplex qn = one;    // q^n
  BigComplex qprev = one; // q^{n-1}
  bool num_dead = false;

  for (long n = 1;; ++n) {
    qprev = qn;
    qn = qn * q;
    if (n >= 2 && !num_dead) {
      for (const auto& a : as) pnum = pnum * (one - a * qprev);
      if (pnum.is_zero()) num_dead = true;
    }
    if (num_dead) {
      /* Every later numerator keeps the vanished factor: the series has
       * truncated and the sum so far is exact. */
      tail.mark_truncated();
      return {acc.round_to(rp), tail.tail_bound(), n, false};
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
      BigComplex factor = one - bs[j] * qn;
      if (factor.abs() < thresh) throw PoleError(j + 1, n);
      pden = pden * factor;
    }
    BigComplex term = qn * eval_poly(diff, qn) * pnum / pden;
    if (n % 2 == 1)
      acc = acc + term;
    else
      acc = acc - term;
    if (tail.done(term.abs()))
      return {acc.round_to(rp), tail.tail_bound(), n, false};
  }
}

SeriesValue sigma_eval(const BigComplex& q, const BigFloat& tol, SigmaForm form,
                       long max_terms) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  if (q.is_zero())
    return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 1, true};

  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat thresh = pole_threshold(q.prec_bits(), wp);
  long cap = max_terms > 0 ? max_terms : iteration_cap(tol, q);
  GeometricTail tail(tol, cap);

  if (form == SigmaForm::LostNotebook) {
    /* sum_n q^{n(n+1)/2} / (-q;q)_n */
    BigComplex acc(wp);
    BigComplex qtri = one;  // q^{n(n+1)/2}
    BigComplex den = one;   // (-q;q)_n
    BigComplex qp = one;    // q^n
    for (long n = 0;; ++n) {
      if (n > 0) {
        qp = qp * q;
        qtri = qtri * qp;
        BigComplex factor = one + qp;
        if (factor.abs() < thresh) throw PoleError(1, n);
        den = den * factor;
      }
      BigComplex term = qtri / den;
      acc = acc + term;
      if (tail.done(term.abs()))
        return {acc.round_to(rp), tail.tail_bound(), n + 1, false};
    }
  }

  /* 1 + sum_n (-1)^n q^{n+1} (q;q)_n */
  BigComplex acc = one;
  BigComplex poch = one;  // (q;q)_n
  BigComplex qp = one;    // q^n
  BigComplex qpow = q.round_to(wp);  // q^{n+1}
  for (long n = 0;; ++n) {
    if (n > 0) {
      qp = qp * q;
      poch = poch * (one - qp);
      qpow = qpow * q;
    }
    BigComplex term = qpow * poch;
    if (n % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
    if (tail.done(term.abs()))
      return {acc.round_to(rp), tail.tail_bound(), n + 1, false};
  }
}

SeriesValue f_eval(const BigComplex& q, const BigFloat& tol, FForm form, long max_terms) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  if (q.is_zero())
    return {BigComplex::from_long(1, rp), BigFloat(Precision(64)), 1, true};

  Precision wp = working(q);
  BigComplex one = one_at(wp);
  BigFloat thresh = pole_threshold(q.prec_bits(), wp);
  long cap = max_terms > 0 ? max_terms : iteration_cap(tol, q);
  GeometricTail tail(tol, cap);

  if (form == FForm::Ramanujan) {
    /* sum_n q^{n^2} / (-q;q)_n^2 */
    BigComplex acc(wp);
    BigComplex qsq = one;  // q^{n^2}
    BigComplex qodd = q.round_to(wp);  // q^{2n-1}
    BigComplex den = one;  // (-q;q)_n
    BigComplex qp = one;   // q^n
    for (long n = 0;; ++n) {
      if (n > 0) {
        qsq = qsq * qodd;        // q^{(n-1)^2} * q^{2n-1} = q^{n^2}
        qodd = qodd * q * q;
        qp = qp * q;
        BigComplex factor = one + qp;
        if (factor.abs() < thresh) throw PoleError(1, n);
        den = den * factor;
      }
      BigComplex term = qsq / (den * den);
      acc = acc + term;
      if (tail.done(term.abs()))
        return {acc.round_to(rp), tail.tail_bound(), n + 1, false};
    }
  }

  /* 1 - sum_{n>=1} (-1)^n q^n / (-q;q)_n */
  BigComplex acc = one;
  BigComplex den = one;
  BigComplex qp = one;
  for (long n = 1;; ++n) {
    qp = qp * q;
    BigComplex factor = one + qp;
    if (factor.abs() < thresh) throw PoleError(1, n);
    den = den * factor;
    BigComplex term = qp / den;
    if (n % 2 == 1)
      acc = acc + term;
    else
      acc = acc - term;
    if (tail.done(term.abs()))
      return {acc.round_to(rp), tail.tail_bound(), n, false};
  }
}

SeriesValue eval_series_at(const TruncatedSeries& s, const BigComplex& q) {
  require_unit_disk(q);
  Precision rp(q.prec_bits());
  Precision wp = working(q);
  BigComplex acc(wp);
  BigComplex qp = one_at(wp);
  BigFloat last_mag(Precision(64));
  double hist[3] = {0, 0, 0};
  int streak = 0;
  for (long k = 0; k <= s.order(); ++k) {
    if (k > 0) qp = qp * q;
    if (s.coeff(k).is_zero()) continue;
    BigComplex term = BigComplex::from_gauss(GaussRat(s.coeff(k)), wp) * qp;
    acc = acc + term;
    BigFloat mag = term.abs();
    if (!last_mag.is_zero()) {
      double r = (mag / last_mag).to_double();
      hist[streak % 3] = r == 0.0 ? 1e-12 : r;
      ++streak;
    }
    last_mag = mag;
  }
  /* Extrapolated bound on the untracked tail beyond the truncation order. */
  BigFloat bound(Precision(64));
  if (!last_mag.is_zero()) {
    double rho = q.abs().to_double();
    if (streak >= 3) rho = std::max({hist[0], hist[1], hist[2], rho});
    rho *= 1.1;
    if (rho >= 1.0) rho = 0.99;
    BigFloat rb = BigFloat::from_double(rho, Precision(64));
    bound = last_mag * rb / (BigFloat::from_long(1, Precision(64)) - rb);
  }
  return {acc.round_to(rp), bound, s.order() + 1, false};
}

BigComplex eval_poly(const AlphaPoly& p, const BigComplex& x) {
  Precision wp(x.prec_bits());
  BigComplex acc(wp);
  for (std::size_t d = p.coeffs.size(); d-- > 0;)
    acc = acc * x + BigComplex::from_gauss(p.coeffs[d], wp);
  return acc;
}

}  // namespace strangeq
