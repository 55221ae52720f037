#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <strangeq/contfrac.hpp>
#include <strangeq/cyclotomic.hpp>
#include <strangeq/exact.hpp>
#include <strangeq/qseries.hpp>
#include <strangeq/rational.hpp>
#include <strangeq/summability.hpp>

using namespace strangeq;

namespace {

const Precision p256(256);
const Precision p64(64);

BigFloat dec(const char* s) { return BigFloat::from_decimal(s, p256); }
BigFloat frat(const Rat& r) { return BigFloat::from_rat(r, p256); }

BigComplex cx_rat(const Rat& re, const Rat& im = Rat(0)) {
  return BigComplex(frat(re), frat(im));
}

BigFloat abs_diff(const BigComplex& x, const BigComplex& y) { return (x - y).abs(); }

std::string fail_note(const std::string& where, const BigFloat& got, const char* bound) {
  return where + " residual " + got.str() + " not below " + bound;
}

/* Same draw protocol the CLI uses for its randomized suite. */
const std::array<Rat, 7> kDrawSet = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1),
                                     Rat(2)};

ParamSet draw_params(std::mt19937_64& rng) {
  ParamSet p;
  long r = static_cast<long>(rng() % 4);
  long s = static_cast<long>(rng() % 4);
  for (long i = 0; i < r; ++i) p.a.push_back(GaussRat(kDrawSet[rng() % kDrawSet.size()]));
  for (long j = 0; j < s; ++j) p.b.push_back(GaussRat(kDrawSet[rng() % kDrawSet.size()]));
  return p;
}

/* 1: the randomized coefficientwise identity check through the CLI. */
bool run_randomized_exact(std::string& detail) {
  std::string cmd = std::string(STRANGEQ_CLI_PATH) +
                    " verify thm3 --mode exact --order 40 --trials 25 --seed 1 >/dev/null";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) {
    detail = "CLI exited with code " + std::to_string(code);
    return false;
  }
  return true;
}

/* 2: the two classical specializations, coefficientwise to order 100. */
bool run_special_cases_exact(std::string& detail) {
  ExactCheck first = ps_theorem_check(ParamSet::parse("1", ""), 100);
  if (!first.ok) {
    detail = "a=(1) mismatch at index " + std::to_string(first.index);
    return false;
  }
  ExactCheck second = ps_theorem_check(ParamSet::parse("", "-1"), 100);
  if (!second.ok) {
    detail = "b=(-1) mismatch at index " + std::to_string(second.index);
    return false;
  }
  return true;
}

/* 3: both series of each classical function share one expansion to order 200. */
bool run_forms_exact(std::string& detail) {
  SigmaSeries s = ps_sigma(200);
  if (auto idx = first_mismatch(s.lost_notebook, s.andrews)) {
    detail = "sigma forms differ at index " + std::to_string(*idx);
    return false;
  }
  FSeries f = ps_f(200);
  if (auto idx = first_mismatch(f.ramanujan, f.fine)) {
    detail = "f forms differ at index " + std::to_string(*idx);
    return false;
  }
  return true;
}

/* 4: closed parity limits recombine to the classical values at four points. */
bool run_numeric_closed_forms(std::string& detail) {
  const BigFloat outer = dec("1e-60");
  const BigFloat inner = dec("1e-62");
  const char* points[] = {"0.5", "-0.4", "0.3+0.4i", "0.7i"};
  for (const char* text : points) {
    BigComplex q = cx(GaussRat::parse(text), p256);
    for (int which = 0; which < 2; ++which) {
      ParamSet params = which == 0 ? ParamSet::parse("1", "") : ParamSet::parse("", "-1");
      SeriesValue target = which == 0 ? sigma_eval(q, inner, SigmaForm::LostNotebook)
                                      : f_eval(q, inner, FForm::Ramanujan);
      SeriesValue prod = product_P(params, q, inner);
      auto [sp, sm] = closed_form_limits(params, q, inner);
      BigComplex two = BigComplex::from_long(2, p256);
      BigFloat up = abs_diff(two * sp.value + prod.value, target.value);
      BigFloat down = abs_diff(two * sm.value - prod.value, target.value);
      std::string where = std::string(which == 0 ? "sigma" : "f") + " at q=" + text;
      if (!(up < outer)) {
        detail = fail_note(where + " (odd side)", up, "1e-60");
        return false;
      }
      if (!(down < outer)) {
        detail = fail_note(where + " (even side)", down, "1e-60");
        return false;
      }
    }
  }
  return true;
}

/* 5: empirical parity limits against the closed forms at q = 1/2. */
bool run_empirical_limits(std::string& detail) {
  const BigFloat outer = dec("1e-30");
  const BigFloat inner = dec("1e-40");
  BigComplex q = cx_rat(Rat(1, 2));

  std::vector<std::pair<std::string, ParamSet>> cases;
  cases.emplace_back("a=(1)", ParamSet::parse("1", ""));
  cases.emplace_back("b=(-1)", ParamSet::parse("", "-1"));
  std::mt19937_64 rng(1);
  while (cases.size() < 12) {
    ParamSet p = draw_params(rng);
    try {
      product_P(p, q, inner);
    } catch (const PoleError&) {
      continue;
    }
    cases.emplace_back("random " + p.str(), p);
  }

  for (const auto& [label, params] : cases) {
    SeriesValue prod = product_P(params, q, inner);
    auto [sp, sm] = closed_form_limits(params, q, inner);
    PartialSumRecord rec = partial_sums(strange_term_gen(params, q), true, 200);
    BehaviorClass bc = parity_limits(rec, outer);
    if (!bc.odd_limit || !bc.even_limit) {
      detail = label + ": no parity limits detected in 200 sums";
      return false;
    }
    BigFloat r1 = abs_diff(*bc.odd_limit, sp.value);
    BigFloat r2 = abs_diff(*bc.even_limit - *bc.odd_limit, prod.value);
    if (!(r1 < outer)) {
      detail = fail_note(label + " odd limit", r1, "1e-30");
      return false;
    }
    if (!(r2 < outer)) {
      detail = fail_note(label + " parity gap vs product", r2, "1e-30");
      return false;
    }
  }
  return true;
}

/* 6: the mean trajectory halves the two-sided value and decays like 1/N. */
bool run_cesaro_means(std::string& detail) {
  BigComplex q = cx_rat(Rat(1, 2));
  const BigFloat inner = dec("1e-40");
  for (int which = 0; which < 2; ++which) {
    ParamSet params = which == 0 ? ParamSet::parse("1", "") : ParamSet::parse("", "-1");
    SeriesValue target = which == 0 ? sigma_eval(q, inner, SigmaForm::LostNotebook)
                                    : f_eval(q, inner, FForm::Ramanujan);
    BigComplex half = target.value / BigComplex::from_long(2, p256);
    PartialSumRecord rec = partial_sums(strange_term_gen(params, q), true, 1000);
    BigFloat gap_1000 = abs_diff(rec.cesaro[999], half);
    BigFloat gap_500 = abs_diff(rec.cesaro[499], half);
    std::string label = which == 0 ? "a=(1)" : "b=(-1)";
    if (!(gap_1000 < dec("1e-2"))) {
      detail = fail_note(label + " mean gap at 1000 sums", gap_1000, "1e-2");
      return false;
    }
    BigFloat ratio = gap_500 / gap_1000;
    if (!(ratio > dec("1.8")) || !(ratio < dec("2.2"))) {
      detail = label + " gap ratio " + ratio.str() + " outside [1.8, 2.2]";
      return false;
    }
  }
  return true;
}

/* 7: exact root-of-unity values match direct summation at every order <= 24. */
bool run_roots_of_unity(std::string& detail) {
  const BigFloat bound = BigFloat::pow2(-128, p64);
  for (long m = 1; m <= 24; ++m) {
    for (StrangeKind kind : {StrangeKind::F, StrangeKind::Ftilde}) {
      CycloInt exact = strange_at_root(kind, m);
      BigComplex embedded = embed_numeric(exact, p256);
      BigComplex zeta = embed_numeric(CycloInt::zeta(m, 1), p256);
      BigComplex one = BigComplex::from_long(1, p256);
      BigComplex poch = one, direct = BigComplex(p256), zp = one, sign = one;
      for (long n = 0; n < m; ++n) {
        direct = direct + sign * poch;
        zp = zp * zeta;
        poch = poch * (one - zp);
        if (kind == StrangeKind::Ftilde) sign = -sign;
      }
      BigFloat residual = (embedded - direct).abs();
      if (!(residual < bound)) {
        detail = fail_note("m=" + std::to_string(m), residual, "2^-128");
        return false;
      }
    }
  }
  CycloInt f2 = strange_at_root(StrangeKind::F, 2);
  if (f2.coeffs() != std::vector<mpz_class>{mpz_class(3)}) {
    detail = "F at the square root of unity is " + f2.str() + ", expected 3";
    return false;
  }
  CycloInt ft2 = strange_at_root(StrangeKind::Ftilde, 2);
  if (ft2.coeffs() != std::vector<mpz_class>{mpz_class(-1)}) {
    detail = "alternating F at the square root of unity is " + ft2.str() + ", expected -1";
    return false;
  }
  return true;
}

/* 8: convergents reproduce partial sums exactly; the fraction recovers f. */
bool run_cf_correspondence(std::string& detail) {
  const Rat points[] = {Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(-1, 2)};
  for (const CFSpec& spec : {cf_strange_F(), cf_strange_phi()}) {
    for (const Rat& q : points) {
      auto conv = convergents_exact(spec, q, 100);
      Rat term(1), qn(1), sum(0);
      for (long n = 0; n <= 100; ++n) {
        if (n > 0) {
          qn *= q;
          if (spec.kind == CFKind::strange_F)
            term *= Rat(1) - qn;
          else
            term /= Rat(1) + qn;
        }
        sum = (n % 2 == 0) ? sum + term : sum - term;
        if (conv[n].value != sum) {
          detail = std::string(spec.description) + " at q=" + q.str() + ": convergent " +
                   std::to_string(n) + " is " + conv[n].value.str() + ", partial sum is " +
                   sum.str();
          return false;
        }
      }
    }
  }

  BigComplex q = cx_rat(Rat(1, 2));
  BigFloat tol = dec("1e-32");
  SeriesValue direct = f_eval(q, tol, FForm::Ramanujan);
  for (CFParity parity : {CFParity::even, CFParity::odd}) {
    SeriesValue via = f_via_cf(q, tol, parity);
    BigFloat r = abs_diff(via.value, direct.value);
    if (!(r < dec("1e-30"))) {
      detail = fail_note(parity == CFParity::even ? "even parity" : "odd parity", r, "1e-30");
      return false;
    }
  }
  return true;
}

/* 9: partial sums 50..60 hug the oscillation envelope to 1e-15. */
bool run_envelope(std::string& detail) {
  ParamSet params = ParamSet::parse("1", "");
  BigComplex q = cx_rat(Rat(1, 2));
  const BigFloat bound = dec("1e-15");
  for (long last : {59L, 60L}) {
    EnvelopeReport rep = oscillation_envelope_check(params, q, last, bound);
    if (!rep.ok) {
      detail = "envelope check through index " + std::to_string(last) + " failed, max residual " +
               rep.max_residual.str();
      return false;
    }
    if (!(rep.max_residual < bound)) {
      detail = fail_note("window ending at " + std::to_string(last), rep.max_residual, "1e-15");
      return false;
    }
  }
  return true;
}

struct Criterion {
  int id;
  const char* label;
  double time_limit_s;
  bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "randomized coefficientwise identity through the CLI", 60.0, run_randomized_exact},
    {2, "classical specializations exact to order 100", 10.0, run_special_cases_exact},
    {3, "paired series forms exact to order 200", 30.0, run_forms_exact},
    {4, "closed parity limits recombine to sigma and f", 10.0, run_numeric_closed_forms},
    {5, "empirical parity limits match closed forms", 30.0, run_empirical_limits},
    {6, "mean trajectory halves the two-sided value", 10.0, run_cesaro_means},
    {7, "root of unity values embed consistently", 5.0, run_roots_of_unity},
    {8, "convergents equal partial sums and recover f", 10.0, run_cf_correspondence},
    {9, "oscillation envelope tight over indices 50..60", 5.0, run_envelope},
};

bool execute(const Criterion& c) {
  std::string detail;
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.time_limit_s);
  if (ok && secs >= c.time_limit_s) {
    ok = false;
    detail = "over time budget";
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.label << " ("
            << timing << ")";
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 9) {
      std::cerr << "usage: " << argv[0] << " [criterion 1..9]\n";
      return 2;
    }
  }
  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    all_ok = execute(c) && all_ok;
  }
  return all_ok ? 0 : 1;
}
