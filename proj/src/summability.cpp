#include "strangeq/summability.hpp"

#include <cmath>
#include <memory>

namespace strangeq {

std::vector<BigComplex> PartialSumRecord::parity_sums(int parity) const {
  std::vector<BigComplex> out;
  for (std::size_t k = parity == 0 ? 0 : 1; k < sums.size(); k += 2) out.push_back(sums[k]);
  return out;
}

PartialSumRecord partial_sums(const TermGen& gen, bool alternating, long count) {
  if (count < 1) throw std::invalid_argument("need at least one partial sum");
  PartialSumRecord rec;
  rec.alternating = alternating;
  rec.terms.reserve(count);
  rec.sums.reserve(count);
  rec.cesaro.reserve(count);
  BigComplex running;
  BigComplex cesaro_acc;
  bool first = true;
  for (long n = 0; n < count; ++n) {
    BigComplex t = gen(n);
    rec.terms.push_back(t);
    BigComplex signed_t = (alternating && n % 2 == 1) ? -t : t;
    running = first ? signed_t : running + signed_t;
    first = false;
    rec.sums.push_back(running);
    cesaro_acc = n == 0 ? running : cesaro_acc + running;
    rec.cesaro.push_back(cesaro_acc / BigComplex::from_long(n + 1, Precision(running.prec_bits())));
  }
  return rec;
}

TermGen strange_term_gen(const ParamSet& params, const BigComplex& q) {
  Precision wp(q.prec_bits() + kGuardBits);
  struct State {
    BigComplex cur, qp, one, q;
    BigFloat thresh;
    std::vector<BigComplex> as, bs;
    long next = 0;
  };
  auto st = std::make_shared<State>(State{
      BigComplex::from_long(1, wp), BigComplex::from_long(1, wp),
      BigComplex::from_long(1, wp), q.round_to(wp),
      BigFloat::pow2(-(q.prec_bits() / 2), wp), {}, {}, 0});
  for (const auto& g : params.a) st->as.push_back(BigComplex::from_gauss(g, wp));
  for (const auto& g : params.b) st->bs.push_back(BigComplex::from_gauss(g, wp));
  Precision rp(q.prec_bits());
  return [st, rp](long n) -> BigComplex {
    if (n != st->next)
      throw std::logic_error("terms must be requested once each, in order");
    ++st->next;
    if (n == 0) return st->cur.round_to(rp);
    st->qp = st->qp * st->q;
    if (!st->cur.is_zero()) {
      for (const auto& a : st->as) st->cur = st->cur * (st->one - a * st->qp);
      for (std::size_t j = 0; j < st->bs.size(); ++j) {
        BigComplex factor = st->one - st->bs[j] * st->qp;
        if (factor.abs() < st->thresh) throw PoleError(j + 1, n);
        st->cur = st->cur / factor;
      }
    }
    return st->cur.round_to(rp);
  };
}

const char* behavior_name(Behavior b) {
  switch (b) {
    case Behavior::convergent: return "convergent";
    case Behavior::two_limit_oscillatory: return "two-limit-oscillatory";
    case Behavior::divergent: return "divergent";
    case Behavior::truncating: return "truncating";
  }
  return "?";
}

namespace {

/* |x_{k+1} - x_k| <= tol * max(1, |x_k|) for four consecutive k; the limit
 * is the final element. */
std::optional<BigComplex> subsequence_limit(const std::vector<BigComplex>& xs,
                                            const BigFloat& tol) {
  if (xs.size() < 5) return std::nullopt;
  BigFloat one = BigFloat::from_long(1, Precision(64));
  int streak = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    BigFloat gap = (xs[k + 1] - xs[k]).abs();
    if (gap <= tol * BigFloat::max(one, xs[k].abs()))
      ++streak;
    else
      streak = 0;
  }
  if (streak >= 4) return xs.back();
  return std::nullopt;
}

}  // namespace

BehaviorClass parity_limits(const PartialSumRecord& rec, const BigFloat& tol) {
  if (rec.count() < 8) throw std::invalid_argument("need at least 8 partial sums");

  /* Exactly-zero trailing terms mean the series became a polynomial. */
  long zeros = 0;
  for (std::size_t k = rec.terms.size(); k-- > 0 && rec.terms[k].is_zero();) ++zeros;
  if (zeros >= 4) {
    BehaviorClass out{Behavior::truncating, rec.sums.back(), rec.sums.back()};
    return out;
  }

  auto odd = subsequence_limit(rec.parity_sums(1), tol);
  auto even = subsequence_limit(rec.parity_sums(0), tol);
  if (!odd || !even) return {Behavior::divergent, odd, even};
  BigFloat one = BigFloat::from_long(1, Precision(64));
  BigFloat split = (*odd - *even).abs();
  BigFloat scale = BigFloat::max(one, BigFloat::max(odd->abs(), even->abs()));
  /* The detector certifies each subsequence to about tol; separations of a
   * few tol are real. */
  BigFloat margin = BigFloat::from_long(8, Precision(64)) * tol * scale;
  if (split <= margin) return {Behavior::convergent, odd, even};
  return {Behavior::two_limit_oscillatory, odd, even};
}

std::optional<BigComplex> cesaro_limit(const PartialSumRecord& rec, const BigFloat& tol) {
  if (rec.count() < 8) throw std::invalid_argument("need at least 8 partial sums");
  auto detected = subsequence_limit(rec.cesaro, tol);
  if (!detected) return std::nullopt;

  BehaviorClass bc = parity_limits(rec, tol);
  if (bc.odd_limit && bc.even_limit) {
    BigComplex two = BigComplex::from_long(2, Precision(detected->prec_bits()));
    BigComplex avg = (*bc.odd_limit + *bc.even_limit) / two;
    /* c_N - avg = (parity imbalance + accumulated defects) / (N+1); both
     * pieces are measurable from the record. */
    BigComplex half_split = (*bc.even_limit - *bc.odd_limit) / two;
    BigFloat defects(Precision(64));
    for (std::size_t k = 0; k < rec.sums.size(); ++k) {
      BigComplex expected = k % 2 == 0 ? avg + half_split : avg - half_split;
      defects = defects + (rec.sums[k] - expected).abs();
    }
    BigFloat n1 = BigFloat::from_long(rec.count(), Precision(64));
    BigFloat bound = (defects + half_split.abs()) / n1 +
                     BigFloat::from_long(4, Precision(64)) * tol;
    if ((*detected - avg).abs() > bound) return std::nullopt;
  }
  return detected;
}

std::pair<SeriesValue, SeriesValue> closed_form_limits(const ParamSet& params,
                                                       const BigComplex& q,
                                                       const BigFloat& tol) {
  SeriesValue rhs = theorem_rhs(params, q, tol);
  SeriesValue prod = product_P(params, q, tol);
  Precision p(q.prec_bits());
  BigComplex two = BigComplex::from_long(2, p);
  BigFloat htail = (rhs.tail_bound + prod.tail_bound) / BigFloat::from_long(2, Precision(64));
  SeriesValue odd{(rhs.value - prod.value) / two, htail,
                  std::max(rhs.terms_used, prod.terms_used), rhs.trivial_point};
  SeriesValue even{(rhs.value + prod.value) / two, htail,
                   std::max(rhs.terms_used, prod.terms_used), rhs.trivial_point};
  return {odd, even};
}

EnvelopeReport oscillation_envelope_check(const ParamSet& params, const BigComplex& q,
                                          long last_index, const BigFloat& tol) {
  if (last_index < 16) throw std::invalid_argument("need at least 16 partial sums");
  /* Tight inner tolerance so the closed forms do not pollute the residuals. */
  BigFloat inner = tol / BigFloat::from_long(1000000, Precision(64));
  EnvelopeReport rep{{}, BigFloat(Precision(64)), false, false, false,
                     theorem_rhs(params, q, inner), product_P(params, q, inner)};

  auto rec = partial_sums(strange_term_gen(params, q), true, last_index + 1);
  Precision p(q.prec_bits());
  BigComplex two = BigComplex::from_long(2, p);
  rep.nonincreasing = true;
  BigFloat prev(Precision(64));
  bool have_prev = false;
  for (long N = std::max(0L, last_index - 9); N <= last_index; ++N) {
    BigComplex target = N % 2 == 0 ? (rep.rhs.value + rep.product.value) / two
                                   : (rep.rhs.value - rep.product.value) / two;
    BigFloat r = (rec.sums[static_cast<std::size_t>(N)] - target).abs();
    if (have_prev && r > prev + tol) rep.nonincreasing = false;
    prev = r;
    have_prev = true;
    rep.residuals.push_back(r);
    if (r > rep.max_residual) rep.max_residual = r;
  }
  rep.final_below_tol = rep.residuals.back() <= tol;
  rep.ok = rep.final_below_tol && rep.nonincreasing;
  return rep;
}

long default_term_count(const BigComplex& q) {
  double aq = q.abs().to_double();
  if (aq <= 0.0) return 64;
  double l2 = -std::log2(aq);
  if (l2 <= 0.0) l2 = 1e-6;
  double n = std::ceil(120.0 / l2);
  if (n < 64) return 64;
  if (n > 2e7) return 20000000L;
  return static_cast<long>(n);
}

}  // namespace strangeq
