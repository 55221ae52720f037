#include "strangeq/exact.hpp"

#include <algorithm>

namespace strangeq {

namespace {

void require_rational(const ParamSet& params) {
  if (!params.all_rational())
    throw std::invalid_argument("formal series operations need rational parameters");
}

std::vector<Rat> rational_coeffs(const AlphaPoly& p) {
  std::vector<Rat> out;
  out.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) {
    if (!c.is_real()) throw std::invalid_argument("formal series operations need rational parameters");
    out.push_back(c.re);
  }
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries(long order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  c_.assign(static_cast<std::size_t>(order) + 1, Rat(0));
}

TruncatedSeries TruncatedSeries::constant(const Rat& c, long order) {
  TruncatedSeries s(order);
  s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Rat& c, long k, long order) {
  TruncatedSeries s(order);
  if (k < 0) throw std::invalid_argument("negative monomial degree");
  if (k <= order) s.c_[static_cast<std::size_t>(k)] = c;
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.is_zero(); });
}

TruncatedSeries TruncatedSeries::truncate(long order) const {
  if (order >= this->order()) return *this;
  TruncatedSeries s(order);
  std::copy(c_.begin(), c_.begin() + order + 1, s.c_.begin());
  return s;
}

void TruncatedSeries::mul_one_minus(const Rat& a, long j) {
  if (j < 1) throw std::invalid_argument("factor exponent must be >= 1");
  if (a.is_zero()) return;
  for (long t = order(); t >= j; --t)
    c_[static_cast<std::size_t>(t)] -= a * c_[static_cast<std::size_t>(t - j)];
}

void TruncatedSeries::div_one_minus(const Rat& a, long j) {
  if (j < 1) throw std::invalid_argument("factor exponent must be >= 1");
  if (a.is_zero()) return;
  for (long t = j; t <= order(); ++t)
    c_[static_cast<std::size_t>(t)] += a * c_[static_cast<std::size_t>(t - j)];
}

void TruncatedSeries::shift_scale(const Rat& c, long k) {
  if (k < 0) throw std::invalid_argument("negative shift");
  for (long t = order(); t >= k; --t)
    c_[static_cast<std::size_t>(t)] = c * c_[static_cast<std::size_t>(t - k)];
  for (long t = 0; t < k && t <= order(); ++t) c_[static_cast<std::size_t>(t)] = Rat(0);
}

TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
  long n = std::min(x.order(), y.order());
  TruncatedSeries s(n);
  for (long t = 0; t <= n; ++t) s.c_[t] = x.c_[t] + y.c_[t];
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) {
  long n = std::min(x.order(), y.order());
  TruncatedSeries s(n);
  for (long t = 0; t <= n; ++t) s.c_[t] = x.c_[t] - y.c_[t];
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
  long n = std::min(x.order(), y.order());
  TruncatedSeries s(n);
  for (long i = 0; i <= n; ++i) {
    if (x.c_[i].is_zero()) continue;
    for (long j = 0; i + j <= n; ++j) {
      if (y.c_[j].is_zero()) continue;
      s.c_[i + j] += x.c_[i] * y.c_[j];
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s(order());
  for (long t = 0; t <= order(); ++t) s.c_[t] = -c_[t];
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& y) {
  *this = *this + y;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& y) {
  *this = *this - y;
  return *this;
}

std::optional<long> first_mismatch(const TruncatedSeries& x, const TruncatedSeries& y) {
  long n = std::min(x.order(), y.order());
  for (long t = 0; t <= n; ++t)
    if (x.coeff(t) != y.coeff(t)) return t;
  return std::nullopt;
}

TruncatedSeries ps_inv(const TruncatedSeries& x) {
  if (x.coeff(0).is_zero())
    throw std::domain_error("series with zero constant term has no inverse");
  long n = x.order();
  TruncatedSeries s(n);
  Rat inv0 = Rat(1) / x.coeff(0);
  s.set_coeff(0, inv0);
  for (long t = 1; t <= n; ++t) {
    Rat acc(0);
    for (long k = 1; k <= t; ++k) acc += x.coeff(k) * s.coeff(t - k);
    s.set_coeff(t, -inv0 * acc);
  }
  return s;
}

TruncatedSeries ps_pochhammer(const Rat& a, long order) {
  TruncatedSeries s = TruncatedSeries::constant(Rat(1), order);
  for (long j = 1; j <= order; ++j) s.mul_one_minus(a, j);
  return s;
}

TruncatedSeries ps_pochhammer_finite(const Rat& a, long n, long order) {
  if (n < 0) throw std::invalid_argument("negative symbol length");
  TruncatedSeries s = TruncatedSeries::constant(Rat(1), order);
  for (long j = 1; j <= std::min(n, order); ++j) s.mul_one_minus(a, j);
  return s;
}

namespace {

/* Advance T_{k-1} -> T_k = T_{k-1} * prod_i (1 - a_i q^k) / prod_j (1 - b_j q^k). */
void advance_term(TruncatedSeries& t, const ParamSet& params, long k) {
  if (k > t.order()) return;  // no effect within the truncation window
  for (const auto& ai : params.a) t.mul_one_minus(ai.re, k);
  for (const auto& bj : params.b) t.div_one_minus(bj.re, k);
}

/* acc += sign * q^shift * term, clipping at the order of acc. */
void add_shifted(TruncatedSeries& acc, const TruncatedSeries& term, long shift, const Rat& sign) {
  for (long t = 0; t <= term.order() && t + shift <= acc.order(); ++t) {
    if (term.coeff(t).is_zero()) continue;
    acc.set_coeff(t + shift, acc.coeff(t + shift) + sign * term.coeff(t));
  }
}

}  // namespace

TruncatedSeries ps_phi_plus(const ParamSet& params, long order) {
  require_rational(params);
  TruncatedSeries acc(order);
  TruncatedSeries t = TruncatedSeries::constant(Rat(1), order);
  /* acc += T_{2n} - T_{2n+1}; the grouped term has valuation >= 2n+1, so the
   * loop stops once 2n+1 exceeds the order. */
  for (long n = 0; 2 * n + 1 <= order; ++n) {
    acc += t;                               // T_{2n}
    advance_term(t, params, 2 * n + 1);
    acc -= t;                               // T_{2n+1}
    advance_term(t, params, 2 * n + 2);
  }
  return acc;
}

TruncatedSeries ps_product(const ParamSet& params, long order) {
  require_rational(params);
  TruncatedSeries s = TruncatedSeries::constant(Rat(1), order);
  for (const auto& ai : params.a)
    for (long j = 1; j <= order; ++j) s.mul_one_minus(ai.re, j);
  for (const auto& bj : params.b)
    for (long j = 1; j <= order; ++j) s.div_one_minus(bj.re, j);
  return s;
}

TruncatedSeries ps_theorem_lhs(const ParamSet& params, long order) {
  TruncatedSeries s = ps_phi_plus(params, order);
  s.shift_scale(Rat(2), 0);
  return s + ps_product(params, order);
}

TruncatedSeries ps_theorem_rhs(const ParamSet& params, long order) {
  require_rational(params);
  std::vector<Rat> alpha = rational_coeffs(alpha_poly(params.a));
  std::vector<Rat> beta = rational_coeffs(alpha_poly(params.b));
  std::vector<Rat> diff(std::max(alpha.size(), beta.size()), Rat(0));
  for (std::size_t d = 0; d < diff.size(); ++d) {
    if (d < alpha.size()) diff[d] += alpha[d];
    if (d < beta.size()) diff[d] -= beta[d];
  }
  while (!diff.empty() && diff.back().is_zero()) diff.pop_back();

  TruncatedSeries acc = TruncatedSeries::constant(Rat(1), order);
  if (diff.empty()) return acc;  // alpha == beta kills every summand

  TruncatedSeries pnum = TruncatedSeries::constant(Rat(1), order);     // prod (a_i q;q)_{n-1}
  TruncatedSeries pdeninv = TruncatedSeries::constant(Rat(1), order);  // prod 1/(b_j q;q)_n
  for (long n = 1; n <= order; ++n) {
    for (const auto& bj : params.b) pdeninv.div_one_minus(bj.re, n);
    if (n >= 2)
      for (const auto& ai : params.a) pnum.mul_one_minus(ai.re, n - 1);

    /* The n-th summand is (-1)^n q^n (alpha - beta)(q^n) * pnum * pdeninv;
     * only coefficients up to order - n survive the shift. */
    long room = order - n;
    TruncatedSeries base = pnum.truncate(room) * pdeninv.truncate(room);
    TruncatedSeries poly(room);
    for (std::size_t d = 0; d < diff.size(); ++d) {
      long e = n * static_cast<long>(d);
      if (e > room) break;
      poly.set_coeff(e, poly.coeff(e) + diff[d]);
    }
    /* acc = 1 - sum (-1)^n (...), so the folded sign is (-1)^{n+1}. */
    add_shifted(acc, base * poly, n, Rat(n % 2 == 0 ? -1 : 1));
  }
  return acc;
}

ExactCheck ps_theorem_check(const ParamSet& params, long order) {
  TruncatedSeries lhs = ps_theorem_lhs(params, order);
  TruncatedSeries rhs = ps_theorem_rhs(params, order);
  auto miss = first_mismatch(lhs, rhs);
  if (!miss) return {true, -1, Rat(0), Rat(0)};
  return {false, *miss, lhs.coeff(*miss), rhs.coeff(*miss)};
}

SigmaSeries ps_sigma(long order) {
  /* sum q^{n(n+1)/2} / (-q;q)_n; the exponent jump keeps the loop short. */
  TruncatedSeries ln(order);
  TruncatedSeries invden = TruncatedSeries::constant(Rat(1), order);
  long tri = 0;
  for (long n = 0; tri <= order; ++n) {
    add_shifted(ln, invden.truncate(order - tri), tri, Rat(1));
    tri += n + 1;
    if (tri <= order) invden.div_one_minus(Rat(-1), n + 1);
  }

  /* 1 + sum (-1)^n q^{n+1} (q;q)_n */
  TruncatedSeries an = TruncatedSeries::constant(Rat(1), order);
  TruncatedSeries poch = TruncatedSeries::constant(Rat(1), order);
  for (long n = 0; n + 1 <= order; ++n) {
    add_shifted(an, poch.truncate(order - (n + 1)), n + 1, Rat(n % 2 == 0 ? 1 : -1));
    poch.mul_one_minus(Rat(1), n + 1);
  }
  return {ln, an};
}

FSeries ps_f(long order) {
  /* sum q^{n^2} / (-q;q)_n^2 */
  TruncatedSeries ram(order);
  TruncatedSeries invden = TruncatedSeries::constant(Rat(1), order);
  for (long n = 0; n * n <= order; ++n) {
    TruncatedSeries cut = invden.truncate(order - n * n);
    add_shifted(ram, cut * cut, n * n, Rat(1));
    invden.div_one_minus(Rat(-1), n + 1);
  }

  /* 1 - sum_{n>=1} (-1)^n q^n / (-q;q)_n */
  TruncatedSeries fine = TruncatedSeries::constant(Rat(1), order);
  TruncatedSeries inv2 = TruncatedSeries::constant(Rat(1), order);
  for (long n = 1; n <= order; ++n) {
    inv2.div_one_minus(Rat(-1), n);
    add_shifted(fine, inv2.truncate(order - n), n, Rat(n % 2 == 0 ? -1 : 1));
  }
  return {ram, fine};
}

}  // namespace strangeq
