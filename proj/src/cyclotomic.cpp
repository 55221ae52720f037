#include "strangeq/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace strangeq {

namespace {

long poly_degree(const ZPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<long>(i);
  return -1;
}

ZPoly poly_mul(const ZPoly& x, const ZPoly& y) {
  if (x.empty() || y.empty()) return {};
  ZPoly out(x.size() + y.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

/* Long division by a monic divisor; remainder must vanish. */
ZPoly poly_divexact(ZPoly num, const ZPoly& den) {
  long dd = poly_degree(den);
  long dn = poly_degree(num);
  if (dd < 0 || den[static_cast<std::size_t>(dd)] != 1)
    throw std::logic_error("divisor must be monic");
  if (dn < dd) throw std::logic_error("inexact polynomial division");
  ZPoly quot(static_cast<std::size_t>(dn - dd) + 1, mpz_class(0));
  for (long k = dn - dd; k >= 0; --k) {
    mpz_class c = num[static_cast<std::size_t>(k + dd)];
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (long j = 0; j <= dd; ++j) num[static_cast<std::size_t>(k + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  if (poly_degree(num) >= 0) throw std::logic_error("inexact polynomial division");
  return quot;
}

std::map<long, ZPoly> g_cyclo_cache;
std::mutex g_cyclo_mutex;

ZPoly compute_cyclo(long m) {
  ZPoly num(static_cast<std::size_t>(m) + 1, mpz_class(0));
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;  // x^m - 1
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = poly_divexact(std::move(num), cyclo_poly(d));
  }
  return num;
}

/* Residue of p mod cyclo_poly(m), padded to length phi(m). */
std::vector<mpz_class> reduce_mod_cyclo(ZPoly p, long m) {
  const ZPoly& phi = cyclo_poly(m);
  long dphi = poly_degree(phi);
  for (long k = poly_degree(p); k >= dphi; k = poly_degree(p)) {
    mpz_class c = p[static_cast<std::size_t>(k)];
    for (long j = 0; j <= dphi; ++j)
      p[static_cast<std::size_t>(k - dphi + j)] -= c * phi[static_cast<std::size_t>(j)];
  }
  p.resize(static_cast<std::size_t>(dphi), mpz_class(0));
  return p;
}

}  // namespace

long euler_phi(long m) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const ZPoly& cyclo_poly(long m) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(m);
    if (it != g_cyclo_cache.end()) return it->second;
  }
  if (m == 1) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    return g_cyclo_cache.emplace(1, ZPoly{mpz_class(-1), mpz_class(1)}).first->second;
  }
  ZPoly val = compute_cyclo(m);
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  return g_cyclo_cache.emplace(m, std::move(val)).first->second;
}

CycloInt::CycloInt(long m) : m_(m) {
  c_.assign(static_cast<std::size_t>(euler_phi(m)), mpz_class(0));
}

CycloInt CycloInt::from_int(long m, const mpz_class& v) {
  CycloInt out(m);
  out.c_[0] = v;
  return out;
}

CycloInt CycloInt::zeta(long m, long power) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  long e = ((power % m) + m) % m;
  ZPoly p(static_cast<std::size_t>(e) + 1, mpz_class(0));
  p[static_cast<std::size_t>(e)] = 1;
  return from_poly(m, p);
}

CycloInt CycloInt::from_poly(long m, const ZPoly& p) {
  CycloInt out(m);
  auto r = reduce_mod_cyclo(p, m);
  for (std::size_t i = 0; i < r.size() && i < out.c_.size(); ++i) out.c_[i] = r[i];
  return out;
}

bool CycloInt::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

std::string CycloInt::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].get_str();
  }
  os << "] mod Phi_" << m_;
  return os.str();
}

namespace {

void require_same_ring(const CycloInt& x, const CycloInt& y) {
  if (x.conductor() != y.conductor())
    throw std::invalid_argument("mixed cyclotomic conductors");
}

}  // namespace

CycloInt operator+(const CycloInt& x, const CycloInt& y) {
  require_same_ring(x, y);
  ZPoly p(x.coeffs().size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = x.coeffs()[i] + y.coeffs()[i];
  return CycloInt::from_poly(x.conductor(), p);
}

CycloInt operator-(const CycloInt& x, const CycloInt& y) {
  require_same_ring(x, y);
  ZPoly p(x.coeffs().size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = x.coeffs()[i] - y.coeffs()[i];
  return CycloInt::from_poly(x.conductor(), p);
}

CycloInt operator*(const CycloInt& x, const CycloInt& y) {
  require_same_ring(x, y);
  return CycloInt::from_poly(x.conductor(), poly_mul(x.coeffs(), y.coeffs()));
}

CycloInt CycloInt::operator-() const {
  CycloInt out(m_);
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
  return out;
}

CycloInt strange_at_root(StrangeKind kind, long m) {
  /* (zeta;zeta)_n vanishes from n = m on, so the sum is finite. */
  CycloInt acc = CycloInt::from_int(m, 1);
  CycloInt term = CycloInt::from_int(m, 1);
  CycloInt one = CycloInt::from_int(m, 1);
  for (long n = 1; n < m; ++n) {
    term = term * (one - CycloInt::zeta(m, n));
    if (kind == StrangeKind::Ftilde && n % 2 == 1)
      acc = acc - term;
    else
      acc = acc + term;
  }
  return acc;
}

namespace {

/* Elements of Q(zeta_m) for the generalized evaluation: rational coefficient
 * vectors mod the cyclotomic polynomial, with exact inversion through the
 * extended Euclidean algorithm (the modulus is irreducible over Q). */
struct QCyclo {
  long m;
  std::vector<Rat> c;  // length phi(m)
};

using QPoly = std::vector<Rat>;

long qdeg(const QPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<long>(i);
  return -1;
}

QPoly qmul(const QPoly& x, const QPoly& y) {
  if (x.empty() || y.empty()) return {};
  QPoly out(x.size() + y.size() - 1, Rat(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

QPoly qcyclo(long m) {
  const ZPoly& phi = cyclo_poly(m);
  QPoly out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = Rat(phi[i]);
  return out;
}

/* Remainder of x mod y (y nonzero), plus the quotient for the Euclidean
 * bookkeeping. */
std::pair<QPoly, QPoly> qdivmod(QPoly num, const QPoly& den) {
  long dd = qdeg(den);
  if (dd < 0) throw std::logic_error("division by zero polynomial");
  Rat lead = den[static_cast<std::size_t>(dd)];
  long dn = qdeg(num);
  if (dn < dd) return {QPoly{}, std::move(num)};
  QPoly quot(static_cast<std::size_t>(dn - dd) + 1, Rat(0));
  for (long k = dn - dd; k >= 0; --k) {
    Rat c = num[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (long j = 0; j <= dd; ++j)
      num[static_cast<std::size_t>(k + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  num.resize(static_cast<std::size_t>(dd) > 0 ? static_cast<std::size_t>(dd) : 1, Rat(0));
  return {std::move(quot), std::move(num)};
}

QCyclo qc_make(long m) {
  QCyclo out{m, {}};
  out.c.assign(static_cast<std::size_t>(euler_phi(m)), Rat(0));
  return out;
}

QCyclo qc_reduce(long m, QPoly p) {
  QCyclo out = qc_make(m);
  auto [quot, rem] = qdivmod(std::move(p), qcyclo(m));
  (void)quot;
  for (std::size_t i = 0; i < rem.size() && i < out.c.size(); ++i) out.c[i] = rem[i];
  return out;
}

QCyclo qc_from_cyclo(const CycloInt& x) {
  QCyclo out = qc_make(x.conductor());
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = Rat(x.coeffs()[i]);
  return out;
}

bool qc_is_zero(const QCyclo& x) {
  for (const auto& c : x.c)
    if (!c.is_zero()) return false;
  return true;
}

QCyclo qc_add(const QCyclo& x, const QCyclo& y) {
  QCyclo out = qc_make(x.m);
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = x.c[i] + y.c[i];
  return out;
}

QCyclo qc_sub(const QCyclo& x, const QCyclo& y) {
  QCyclo out = qc_make(x.m);
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = x.c[i] - y.c[i];
  return out;
}

QCyclo qc_mul(const QCyclo& x, const QCyclo& y) {
  return qc_reduce(x.m, qmul(x.c, y.c));
}

/* Inverse in Q(zeta_m): extended Euclid against the (irreducible) modulus. */
QCyclo qc_inv(const QCyclo& x) {
  if (qc_is_zero(x)) throw std::domain_error("inverse of zero in Q(zeta_m)");
  QPoly r0 = qcyclo(x.m), r1(x.c.begin(), x.c.end());
  QPoly t0{Rat(0)}, t1{Rat(1)};
  while (qdeg(r1) > 0) {
    auto [quot, rem] = qdivmod(r0, r1);
    QPoly t2 = t0;
    QPoly qt = qmul(quot, t1);
    if (t2.size() < qt.size()) t2.resize(qt.size(), Rat(0));
    for (std::size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (qdeg(r1) != 0) throw std::logic_error("modulus not coprime to element");
  Rat scale = Rat(1) / r1[0];
  for (auto& c : t1) c *= scale;
  return qc_reduce(x.m, std::move(t1));
}

/* Parameter as an element of Z[zeta_m]: integer real part, and an integer
 * imaginary part riding on zeta^{m/4} when 4 | m. */
QCyclo param_to_qcyclo(const GaussRat& g, long m) {
  if (!g.re.is_integer() || !g.im.is_integer())
    throw std::domain_error("parameter " + g.str() + " does not lie in Z[zeta_" +
                            std::to_string(m) + "]");
  QCyclo out = qc_make(m);
  out.c[0] = g.re;
  if (!g.im.is_zero()) {
    if (m % 4 != 0)
      throw std::domain_error("imaginary parameter " + g.str() + " needs 4 | m");
    QCyclo i_unit = qc_from_cyclo(CycloInt::zeta(m, m / 4));
    QCyclo im_part = qc_make(m);
    im_part.c[0] = g.im;
    out = qc_add(out, qc_mul(im_part, i_unit));
  }
  return out;
}

}  // namespace

CycloInt strange_at_root(const ParamSet& params, long m) {
  std::vector<QCyclo> as, bs;
  as.reserve(params.a.size());
  bs.reserve(params.b.size());
  for (const auto& g : params.a) as.push_back(param_to_qcyclo(g, m));
  for (const auto& g : params.b) bs.push_back(param_to_qcyclo(g, m));

  QCyclo one = qc_make(m);
  one.c[0] = Rat(1);

  /* Truncation scan: the first j with some numerator factor 1 - a_i zeta^j
   * equal to zero caps the sum at j terms. */
  const long scan_bound = 4 * m;
  long cutoff = -1;
  for (long j = 1; j <= scan_bound && cutoff < 0; ++j) {
    for (const auto& ai : as) {
      QCyclo factor = qc_sub(one, qc_mul(ai, qc_from_cyclo(CycloInt::zeta(m, j))));
      if (qc_is_zero(factor)) {
        cutoff = j;
        break;
      }
    }
  }
  if (cutoff < 0)
    throw std::domain_error("series does not truncate at this root of unity (no a_i zeta^j = 1 for j <= " +
                            std::to_string(scan_bound) + ")");

  QCyclo acc = one;
  QCyclo term = one;
  for (long n = 1; n < cutoff; ++n) {
    QCyclo zn = qc_from_cyclo(CycloInt::zeta(m, n));
    for (const auto& ai : as) term = qc_mul(term, qc_sub(one, qc_mul(ai, zn)));
    for (std::size_t j = 0; j < bs.size(); ++j) {
      QCyclo factor = qc_sub(one, qc_mul(bs[j], zn));
      if (qc_is_zero(factor))
        throw std::domain_error("denominator pole: b_" + std::to_string(j + 1) +
                                " zeta^" + std::to_string(n) + " = 1");
      term = qc_mul(term, qc_inv(factor));
    }
    if (n % 2 == 1)
      acc = qc_sub(acc, term);
    else
      acc = qc_add(acc, term);
  }

  CycloInt out(m);
  ZPoly p(acc.c.size());
  for (std::size_t i = 0; i < acc.c.size(); ++i) {
    if (!acc.c[i].is_integer())
      throw std::domain_error("value lies in Q(zeta_m) but not in Z[zeta_m]");
    p[i] = acc.c[i].num();
  }
  return CycloInt::from_poly(m, p);
}

BigComplex embed_numeric(const CycloInt& x, Precision p) {
  Precision wide(p.bits + kGuardBits);
  BigFloat tau(wide);  // 2 pi
  mpfr_const_pi(tau.get(), MPFR_RNDN);
  BigFloat two = BigFloat::from_long(2, wide);
  tau = tau * two;

  long m = x.conductor();
  BigComplex acc(wide);
  for (std::size_t t = 0; t < x.coeffs().size(); ++t) {
    if (x.coeffs()[t] == 0) continue;
    long e = static_cast<long>(t) % m;
    BigFloat angle = tau * BigFloat::from_long(e, wide) / BigFloat::from_long(m, wide);
    BigFloat c(wide), s(wide);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    BigFloat coef(wide);
    mpfr_set_z(coef.get(), x.coeffs()[t].get_mpz_t(), MPFR_RNDN);
    acc = acc + BigComplex(coef * c, coef * s);
  }
  return acc.round_to(p);
}

}  // namespace strangeq
