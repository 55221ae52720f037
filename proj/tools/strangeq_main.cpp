#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
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

using nlohmann::ordered_json;
using namespace strangeq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct Config {
  long prec = 256;
  std::string tol_text = "1e-30";
  long seed = 1;
  std::string format;  // resolved per subcommand when left empty
  std::string q_text;
  std::string a_text;
  std::string b_text;
  long order = 40;
  long terms = 0;  // 0 means pick from q and tol
  long count = 30;
  long trials = 25;
  long m = 0;
  std::string mode;
};

BigFloat parse_tol(const Config& cfg) {
  BigFloat tol = BigFloat::from_decimal(cfg.tol_text, Precision(96));
  if (!(tol > BigFloat(Precision(64)))) throw std::invalid_argument("tolerance must be positive");
  return tol;
}

GaussRat parse_q(const Config& cfg) {
  if (cfg.q_text.empty()) throw std::invalid_argument("--q is required for this command");
  return GaussRat::parse(cfg.q_text);
}

/* Enough partial sums that the geometric residual sits well under tol. */
long term_count_for(const BigComplex& q, const BigFloat& tol) {
  long base = default_term_count(q);
  double mag = q.abs().to_double();
  if (mag <= 0.0 || mag >= 1.0) return base;
  double digits = -std::log10(tol.to_double());
  if (!(digits > 0.0)) digits = 30.0;
  long scaled = static_cast<long>(std::ceil((digits + 6.0) / -std::log10(mag)));
  return std::max(base, scaled);
}

std::string big_str(const BigFloat& x) { return x.str(); }

ordered_json value_json(const SeriesValue& v) {
  ordered_json j;
  j["re"] = v.value.re().str();
  j["im"] = v.value.im().str();
  j["tail_bound"] = v.tail_bound.str();
  j["terms"] = v.terms_used;
  if (v.trivial_point) j["trivial_point"] = true;
  return j;
}

ordered_json series_json(const TruncatedSeries& s) {
  ordered_json j;
  j["order"] = s.order();
  ordered_json cs = ordered_json::array();
  for (const Rat& c : s.coeffs()) cs.push_back(c.str());
  j["coeffs"] = cs;
  return j;
}

ordered_json params_json(const ParamSet& p) {
  ordered_json j;
  ordered_json as = ordered_json::array();
  for (const auto& g : p.a) as.push_back(g.str());
  ordered_json bs = ordered_json::array();
  for (const auto& g : p.b) bs.push_back(g.str());
  j["a"] = as;
  j["b"] = bs;
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ParamSet params_for(const std::string& which, const Config& cfg) {
  if (which == "Fstrange") return ParamSet::parse("1", "");
  if (which == "phistrange") return ParamSet::parse("", "-1");
  return ParamSet::parse(cfg.a_text, cfg.b_text);
}

/* ---------------- eval ---------------- */

int run_eval_sigma_f(const std::string& which, const Config& cfg) {
  GaussRat qg = parse_q(cfg);
  BigComplex q = cx(qg, Precision(cfg.prec));
  BigFloat tol = parse_tol(cfg);
  bool is_sigma = which == "sigma";
  const char* first_name = is_sigma ? "lost_notebook" : "ramanujan";
  const char* second_name = is_sigma ? "andrews" : "fine";
  SeriesValue first = is_sigma ? sigma_eval(q, tol, SigmaForm::LostNotebook, cfg.terms)
                               : f_eval(q, tol, FForm::Ramanujan, cfg.terms);
  SeriesValue second = is_sigma ? sigma_eval(q, tol, SigmaForm::Andrews, cfg.terms)
                                : f_eval(q, tol, FForm::Fine, cfg.terms);
  BigFloat split = (first.value - second.value).abs();
  bool agree = split <= first.tail_bound + second.tail_bound;
  ordered_json j;
  j["which"] = which;
  j["q"] = qg.str();
  j[first_name] = value_json(first);
  j[second_name] = value_json(second);
  j["difference"] = big_str(split);
  j["agree"] = agree;
  emit(j);
  return kExitOk;
}

int run_eval_strange(const std::string& which, const Config& cfg) {
  GaussRat qg = parse_q(cfg);
  Precision prec(cfg.prec);
  BigComplex q = cx(qg, prec);
  require_unit_disk(q);
  BigFloat tol = parse_tol(cfg);
  ParamSet params = params_for(which, cfg);

  BigFloat inner = tol / BigFloat::from_long(32, Precision(64));
  SeriesValue rhs = theorem_rhs(params, q, inner);
  SeriesValue prod = product_P(params, q, inner);
  auto [sp, sm] = closed_form_limits(params, q, inner);

  long nterms = cfg.terms > 0 ? cfg.terms : term_count_for(q, tol);
  PartialSumRecord rec = partial_sums(strange_term_gen(params, q), true, nterms);
  BehaviorClass bc = parity_limits(rec, tol);

  SeriesValue half{(sp.value + sm.value) / BigComplex::from_long(2, Precision(q.prec_bits())),
                   (sp.tail_bound + sm.tail_bound) / BigFloat::from_long(2, Precision(64)),
                   rhs.terms_used, rhs.trivial_point};

  ordered_json j;
  j["class"] = behavior_name(bc.tag);
  j["S_plus"] = value_json(sp);
  j["S_minus"] = value_json(sm);
  j["cesaro"] = value_json(half);
  ordered_json residuals = ordered_json::array();
  if (bc.tag == Behavior::two_limit_oscillatory && nterms > 20) {
    EnvelopeReport er = oscillation_envelope_check(params, q, std::min<long>(nterms - 1, 60), tol);
    for (const BigFloat& r : er.residuals) residuals.push_back(big_str(r));
  }
  j["residuals"] = residuals;
  j["which"] = which;
  j["q"] = qg.str();
  j["params"] = params_json(params);
  j["rhs"] = value_json(rhs);
  j["product"] = value_json(prod);
  if (bc.odd_limit) j["S_plus_empirical"] = bc.odd_limit->str();
  if (bc.even_limit) j["S_minus_empirical"] = bc.even_limit->str();
  j["partial_sum_count"] = nterms;
  emit(j);
  return kExitOk;
}

int run_eval(const std::string& which, const Config& cfg) {
  if (which == "sigma" || which == "f") return run_eval_sigma_f(which, cfg);
  if (which == "Fstrange" || which == "phistrange" || which == "Phi")
    return run_eval_strange(which, cfg);
  throw std::invalid_argument("unknown eval target: " + which);
}

/* ---------------- verify ---------------- */

struct CheckRow {
  std::string name;
  bool ok;
  std::string residual;  // empty for exact checks
  ordered_json extra;
};

ordered_json check_json(const CheckRow& row) {
  ordered_json j;
  j["name"] = row.name;
  j["ok"] = row.ok;
  if (!row.residual.empty()) j["residual"] = row.residual;
  if (!row.extra.is_null()) j.update(row.extra);
  return j;
}

ordered_json mismatch_json(const ExactCheck& c) {
  ordered_json j;
  j["first_mismatch_index"] = c.index;
  j["lhs_coeff"] = c.lhs_coeff.str();
  j["rhs_coeff"] = c.rhs_coeff.str();
  return j;
}

int finish_verify(ordered_json& j, const std::vector<CheckRow>& rows) {
  bool all = true;
  ordered_json checks = ordered_json::array();
  for (const CheckRow& r : rows) {
    all = all && r.ok;
    checks.push_back(check_json(r));
  }
  j["checks"] = checks;
  j["ok"] = all;
  emit(j);
  return all ? kExitOk : kExitVerifyFailed;
}

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

int run_verify_exact_theorem(const std::string& which, const Config& cfg) {
  ordered_json j;
  j["which"] = which;
  j["mode"] = "exact";
  j["order"] = cfg.order;
  std::vector<CheckRow> rows;
  if (which == "thm3") {
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
    for (long t = 0; t < cfg.trials; ++t) {
      ParamSet p = draw_params(rng);
      ExactCheck c = ps_theorem_check(p, cfg.order);
      CheckRow row{"trial " + std::to_string(t) + " params " + p.str(), c.ok, "", nullptr};
      if (!c.ok) row.extra = mismatch_json(c);
      rows.push_back(std::move(row));
    }
  } else {
    ParamSet p = which == "thm1" ? ParamSet::parse("1", "") : ParamSet::parse("", "-1");
    ExactCheck c = ps_theorem_check(p, cfg.order);
    CheckRow row{"series identity for params " + p.str(), c.ok, "", nullptr};
    if (!c.ok) row.extra = mismatch_json(c);
    rows.push_back(std::move(row));
  }
  return finish_verify(j, rows);
}

int run_verify_numeric_theorem(const std::string& which, const Config& cfg) {
  GaussRat qg = parse_q(cfg);
  Precision prec(cfg.prec);
  BigComplex q = cx(qg, prec);
  require_unit_disk(q);
  BigFloat tol = parse_tol(cfg);
  BigFloat inner = tol / BigFloat::from_long(32, Precision(64));
  BigComplex two = BigComplex::from_long(2, prec);

  ordered_json j;
  j["which"] = which;
  j["mode"] = "numeric";
  j["q"] = qg.str();
  j["tol"] = cfg.tol_text;
  std::vector<CheckRow> rows;

  auto push_residual = [&](const std::string& name, const BigFloat& r) {
    rows.push_back({name, r < tol, big_str(r), nullptr});
  };

  if (which == "thm1" || which == "thm2") {
    ParamSet p = which == "thm1" ? ParamSet::parse("1", "") : ParamSet::parse("", "-1");
    SeriesValue target1 = which == "thm1" ? sigma_eval(q, tol / BigFloat::from_long(8, Precision(64)), SigmaForm::LostNotebook)
                                          : f_eval(q, tol / BigFloat::from_long(8, Precision(64)), FForm::Ramanujan);
    SeriesValue target2 = which == "thm1" ? sigma_eval(q, tol / BigFloat::from_long(8, Precision(64)), SigmaForm::Andrews)
                                          : f_eval(q, tol / BigFloat::from_long(8, Precision(64)), FForm::Fine);
    SeriesValue rhs = theorem_rhs(p, q, inner);
    SeriesValue prod = product_P(p, q, inner);
    auto [sp, sm] = closed_form_limits(p, q, inner);
    const char* tname = which == "thm1" ? "sigma" : "f";
    push_residual(std::string("rhs matches ") + tname + " (first form)",
                  (rhs.value - target1.value).abs());
    push_residual(std::string("rhs matches ") + tname + " (second form)",
                  (rhs.value - target2.value).abs());
    push_residual(std::string("2 S_plus + P matches ") + tname,
                  (two * sp.value + prod.value - target1.value).abs());
    push_residual(std::string("2 S_minus - P matches ") + tname,
                  (two * sm.value - prod.value - target1.value).abs());
    push_residual("parity limit split equals product",
                  (sm.value - sp.value - prod.value).abs());
    return finish_verify(j, rows);
  }

  /* thm3: randomized parameter sets compared against empirical limits. */
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
  long nterms = cfg.terms > 0 ? cfg.terms : term_count_for(q, tol);
  for (long t = 0; t < cfg.trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      ParamSet p = draw_params(rng);
      try {
        SeriesValue prod = product_P(p, q, inner);
        auto [sp, sm] = closed_form_limits(p, q, inner);
        PartialSumRecord rec = partial_sums(strange_term_gen(p, q), true, nterms);
        BehaviorClass bc = parity_limits(rec, tol);
        std::string label = "trial " + std::to_string(t) + " params " + p.str();
        if (!bc.odd_limit || !bc.even_limit) {
          rows.push_back({label + ": no parity limits detected", false, "", nullptr});
          break;
        }
        BigFloat r1 = (*bc.odd_limit - sp.value).abs();
        BigFloat r2 = (*bc.even_limit - sm.value).abs();
        BigFloat r3 = (sm.value - sp.value - prod.value).abs();
        BigFloat worst = BigFloat::max(r1, BigFloat::max(r2, r3));
        rows.push_back({label, worst < tol, big_str(worst), nullptr});
        break;
      } catch (const PoleError&) {
        if (attempt > 200) throw;
      }
    }
  }
  return finish_verify(j, rows);
}

int run_verify_forms(const std::string& which, const Config& cfg) {
  bool numeric = cfg.mode == "numeric";
  ordered_json j;
  j["which"] = which;
  j["mode"] = numeric ? "numeric" : "exact";
  std::vector<CheckRow> rows;
  if (!numeric) {
    j["order"] = cfg.order;
    if (which == "andrews") {
      SigmaSeries s = ps_sigma(cfg.order);
      long idx = first_mismatch(s.lost_notebook, s.andrews).value_or(-1);
      CheckRow row{"sigma forms agree coefficientwise", idx < 0, "", nullptr};
      if (idx >= 0) {
        ordered_json w;
        w["first_mismatch_index"] = idx;
        w["lhs_coeff"] = s.lost_notebook.coeff(idx).str();
        w["rhs_coeff"] = s.andrews.coeff(idx).str();
        row.extra = w;
      }
      rows.push_back(std::move(row));
    } else {
      FSeries s = ps_f(cfg.order);
      long idx = first_mismatch(s.ramanujan, s.fine).value_or(-1);
      CheckRow row{"f forms agree coefficientwise", idx < 0, "", nullptr};
      if (idx >= 0) {
        ordered_json w;
        w["first_mismatch_index"] = idx;
        w["lhs_coeff"] = s.ramanujan.coeff(idx).str();
        w["rhs_coeff"] = s.fine.coeff(idx).str();
        row.extra = w;
      }
      rows.push_back(std::move(row));
    }
    return finish_verify(j, rows);
  }
  GaussRat qg = parse_q(cfg);
  BigComplex q = cx(qg, Precision(cfg.prec));
  BigFloat tol = parse_tol(cfg);
  BigFloat inner = tol / BigFloat::from_long(8, Precision(64));
  j["q"] = qg.str();
  j["tol"] = cfg.tol_text;
  SeriesValue v1 = which == "andrews" ? sigma_eval(q, inner, SigmaForm::LostNotebook)
                                      : f_eval(q, inner, FForm::Ramanujan);
  SeriesValue v2 = which == "andrews" ? sigma_eval(q, inner, SigmaForm::Andrews)
                                      : f_eval(q, inner, FForm::Fine);
  BigFloat r = (v1.value - v2.value).abs();
  rows.push_back({"both forms agree", r < tol, big_str(r), nullptr});
  return finish_verify(j, rows);
}

int run_verify(const std::string& which, const Config& cfg) {
  std::string mode = cfg.mode.empty() ? "exact" : cfg.mode;
  if (mode != "exact" && mode != "numeric")
    throw std::invalid_argument("--mode must be exact or numeric");
  if (which == "andrews" || which == "fine") return run_verify_forms(which, cfg);
  if (which == "thm1" || which == "thm2" || which == "thm3") {
    return mode == "exact" ? run_verify_exact_theorem(which, cfg)
                           : run_verify_numeric_theorem(which, cfg);
  }
  throw std::invalid_argument("unknown verify target: " + which);
}

/* ---------------- expand ---------------- */

int run_expand(const std::string& which, const Config& cfg) {
  long order = cfg.order;
  ordered_json j;
  j["which"] = which;
  if (which == "sigma") {
    j.update(series_json(ps_sigma(order).lost_notebook));
  } else if (which == "f") {
    j.update(series_json(ps_f(order).ramanujan));
  } else if (which == "phiplus") {
    ParamSet p = ParamSet::parse(cfg.a_text, cfg.b_text);
    j["params"] = params_json(p);
    j.update(series_json(ps_phi_plus(p, order)));
  } else if (which == "pochhammer") {
    ParamSet p = ParamSet::parse(cfg.a_text, "");
    if (p.a.size() != 1)
      throw std::invalid_argument("expand pochhammer takes exactly one --a entry");
    if (!p.a[0].is_real())
      throw std::invalid_argument("expand pochhammer takes a rational --a entry");
    j["params"] = params_json(p);
    j.update(series_json(ps_pochhammer(p.a[0].re, order)));
  } else if (which == "thm3") {
    ParamSet p = ParamSet::parse(cfg.a_text, cfg.b_text);
    j["params"] = params_json(p);
    j.update(series_json(ps_theorem_rhs(p, order)));
  } else {
    throw std::invalid_argument("unknown expand target: " + which);
  }
  emit(j);
  return kExitOk;
}

/* ---------------- roots ---------------- */

int run_roots(const std::string& which, const Config& cfg) {
  if (which != "F" && which != "Ftilde")
    throw std::invalid_argument("unknown roots target: " + which);
  if (cfg.m < 1) throw std::invalid_argument("--m must be a positive integer");
  StrangeKind kind = which == "F" ? StrangeKind::F : StrangeKind::Ftilde;
  CycloInt exact = strange_at_root(kind, cfg.m);
  Precision prec(cfg.prec);
  BigComplex embedded = embed_numeric(exact, prec);

  /* Direct m-term numeric sum at exp(2 pi i / m) as a cross-check. */
  BigComplex zeta = embed_numeric(CycloInt::zeta(cfg.m, 1), prec);
  BigComplex one = BigComplex::from_long(1, prec);
  BigComplex poch = one, direct = BigComplex(prec), zp = one, sign = one;
  for (long n = 0; n < cfg.m; ++n) {
    direct = direct + sign * poch;
    zp = zp * zeta;
    poch = poch * (one - zp);
    if (kind == StrangeKind::Ftilde) sign = -sign;
  }
  BigFloat residual = (embedded - direct).abs();

  ordered_json j;
  j["m"] = cfg.m;
  ordered_json cs = ordered_json::array();
  for (const mpz_class& c : exact.coeffs()) {
    if (c.fits_slong_p())
      cs.push_back(c.get_si());
    else
      cs.push_back(c.get_str());
  }
  j["coeffs"] = cs;
  j["which"] = which;
  j["embedding"] = ordered_json{{"re", embedded.re().str()}, {"im", embedded.im().str()}};
  j["residual"] = big_str(residual);
  emit(j);
  return kExitOk;
}

/* ---------------- cesaro ---------------- */

int run_cesaro(const std::string& which, const Config& cfg) {
  if (which != "Fstrange" && which != "phistrange" && which != "Phi")
    throw std::invalid_argument("unknown cesaro target: " + which);
  GaussRat qg = parse_q(cfg);
  Precision prec(cfg.prec);
  BigComplex q = cx(qg, prec);
  require_unit_disk(q);
  BigFloat tol = parse_tol(cfg);
  ParamSet params = params_for(which, cfg);
  long nterms = cfg.terms > 0 ? cfg.terms : 1000;

  BigFloat inner = tol / BigFloat::from_long(16, Precision(64));
  SeriesValue rhs = theorem_rhs(params, q, inner);
  BigComplex target = rhs.value / BigComplex::from_long(2, prec);

  PartialSumRecord rec = partial_sums(strange_term_gen(params, q), true, nterms);
  if (cfg.format == "csv") {
    std::cout << "index,mean,target,gap\n";
    for (long i = 0; i < rec.count(); ++i) {
      BigFloat gap = (rec.cesaro[i] - target).abs();
      std::cout << i << "," << rec.cesaro[i].str() << "," << target.str() << "," << big_str(gap)
                << "\n";
    }
    return kExitOk;
  }
  ordered_json j;
  j["which"] = which;
  j["q"] = qg.str();
  j["params"] = params_json(params);
  j["target"] = ordered_json{{"re", target.re().str()}, {"im", target.im().str()}};
  ordered_json rows = ordered_json::array();
  for (long i = 0; i < rec.count(); ++i) {
    ordered_json row;
    row["index"] = i;
    row["mean"] = rec.cesaro[i].str();
    row["gap"] = big_str((rec.cesaro[i] - target).abs());
    rows.push_back(row);
  }
  j["rows"] = rows;
  emit(j);
  return kExitOk;
}

/* ---------------- cf ---------------- */

int run_cf(const std::string& which, const Config& cfg) {
  if (which != "Fstrange" && which != "phistrange")
    throw std::invalid_argument("unknown cf target: " + which);
  GaussRat qg = parse_q(cfg);
  CFSpec spec = which == "Fstrange" ? cf_strange_F() : cf_strange_phi();
  std::string mode = cfg.mode.empty() ? "exact" : cfg.mode;

  struct Row {
    long index;
    std::string value;
    std::string correspondence;
  };
  std::vector<Row> rows;

  if (mode == "exact") {
    if (!qg.is_real()) throw std::invalid_argument("exact mode needs a real rational --q");
    Rat q = qg.re;
    if (q.is_zero() || !(q.abs() < Rat(1)))
      throw std::invalid_argument("exact mode needs 0 < |q| < 1");
    auto convs = convergents_exact(spec, q, cfg.count);
    /* Exact partial sums of the matching strange series. */
    Rat poch(1), term(1), sum(0), qpow(1);
    int sign = 1;
    for (long k = 0; k <= cfg.count; ++k) {
      if (k > 0) {
        qpow = qpow * q;
        if (which == "Fstrange") {
          poch = poch * (Rat(1) - qpow);
          term = poch;
        } else {
          poch = poch * (Rat(1) + qpow);
          term = Rat(1) / poch;
        }
        sign = -sign;
      }
      sum = sum + (sign > 0 ? term : -term);
      Rat diff = (convs[k].value - sum).abs();
      rows.push_back({k, convs[k].value.str(), diff.str()});
    }
  } else if (mode == "numeric") {
    Precision prec(cfg.prec);
    BigComplex q = cx(qg, prec);
    require_unit_disk(q);
    if (q.is_zero()) throw std::invalid_argument("numeric mode needs 0 < |q| < 1");
    auto convs = convergents_numeric(spec, q, cfg.count);
    ParamSet params = which == "Fstrange" ? ParamSet::parse("1", "") : ParamSet::parse("", "-1");
    PartialSumRecord rec = partial_sums(strange_term_gen(params, q), true, cfg.count + 1);
    for (long k = 0; k <= cfg.count; ++k) {
      BigFloat diff = (convs[k].value - rec.sums[k]).abs();
      rows.push_back({k, convs[k].value.str(), big_str(diff)});
    }
  } else {
    throw std::invalid_argument("--mode must be exact or numeric");
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["which"] = which;
    j["q"] = qg.str();
    j["mode"] = mode;
    ordered_json out = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json row;
      row["index"] = r.index;
      row["value"] = r.value;
      row["correspondence"] = r.correspondence;
      out.push_back(row);
    }
    j["rows"] = out;
    emit(j);
    return kExitOk;
  }
  std::cout << "index,value,correspondence\n";
  for (const Row& r : rows) std::cout << r.index << "," << r.value << "," << r.correspondence << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"strange q-series calculator"};
  app.require_subcommand(1);

  app.add_option("--prec", cfg.prec, "working precision in bits")->capture_default_str();
  app.add_option("--tol", cfg.tol_text, "tolerance as a decimal string")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--format", cfg.format, "output format: json or csv");
  app.add_option("--q", cfg.q_text, "evaluation point, e.g. 0.5, 1/3, 0.3+0.4i");
  app.add_option("--a", cfg.a_text, "comma-separated numerator parameters");
  app.add_option("--b", cfg.b_text, "comma-separated denominator parameters");
  app.add_option("--order", cfg.order, "truncation order for exact series")->capture_default_str();
  app.add_option("--terms", cfg.terms, "number of partial sums (0 = automatic)");
  app.add_option("--count", cfg.count, "number of continued-fraction convergents")
      ->capture_default_str();
  app.add_option("--trials", cfg.trials, "number of randomized trials")->capture_default_str();
  app.add_option("--m", cfg.m, "order of the root of unity");
  app.add_option("--mode", cfg.mode, "exact or numeric");

  std::string eval_which, verify_which, expand_which, roots_which, cesaro_which, cf_which;
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a series at a point");
  c_eval->add_option("which", eval_which, "sigma | f | Fstrange | phistrange | Phi")->required();
  CLI::App* c_verify = app.add_subcommand("verify", "verify an identity");
  c_verify->add_option("which", verify_which, "thm1 | thm2 | thm3 | andrews | fine")->required();
  CLI::App* c_expand = app.add_subcommand("expand", "dump truncated series coefficients");
  c_expand->add_option("which", expand_which, "sigma | f | phiplus | pochhammer | thm3")
      ->required();
  CLI::App* c_roots = app.add_subcommand("roots", "evaluate exactly at a root of unity");
  c_roots->add_option("which", roots_which, "F | Ftilde")->required();
  CLI::App* c_cesaro = app.add_subcommand("cesaro", "Cesaro mean trajectory with target");
  c_cesaro->add_option("which", cesaro_which, "Fstrange | phistrange | Phi")->required();
  CLI::App* c_cf = app.add_subcommand("cf", "continued-fraction convergent table");
  c_cf->add_option("which", cf_which, "Fstrange | phistrange")->required();
  for (CLI::App* sub : {c_eval, c_verify, c_expand, c_roots, c_cesaro, c_cf}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cfg.prec < 64) throw std::invalid_argument("--prec must be at least 64");
    if (cfg.format.empty()) cfg.format = (c_cesaro->parsed() || c_cf->parsed()) ? "csv" : "json";
    if (cfg.format != "json" && cfg.format != "csv")
      throw std::invalid_argument("--format must be json or csv");
    if (cfg.format == "csv" && !(c_cesaro->parsed() || c_cf->parsed()))
      throw std::invalid_argument("csv output is only available for cesaro and cf");
    if (c_eval->parsed()) return run_eval(eval_which, cfg);
    if (c_verify->parsed()) return run_verify(verify_which, cfg);
    if (c_expand->parsed()) return run_expand(expand_which, cfg);
    if (c_roots->parsed()) return run_roots(roots_which, cfg);
    if (c_cesaro->parsed()) return run_cesaro(cesaro_which, cfg);
    if (c_cf->parsed()) return run_cf(cf_which, cfg);
    return kExitUsage;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
