#include "strangeq/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace strangeq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("cannot parse number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

/* Unsigned magnitude: "123", "12/34" or "1.25". Sign is handled by the caller. */
Rat parse_magnitude(std::string_view s, std::string_view whole) {
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos && dot != std::string_view::npos) bad_number(whole);
  if (slash != std::string_view::npos) {
    auto ns = s.substr(0, slash);
    auto ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) bad_number(whole);
    mpz_class n(std::string(ns), 10);
    mpz_class d(std::string(ds), 10);
    if (d == 0) bad_number(whole);
    return Rat(n, d);
  }
  if (dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad_number(whole);
    if (!ip.empty() && !all_digits(ip)) bad_number(whole);
    if (!fp.empty() && !all_digits(fp)) bad_number(whole);
    mpz_class n(ip.empty() ? std::string("0") : std::string(ip), 10);
    mpz_class scale(1);
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp), 10);
    return Rat(n * scale + frac, scale);
  }
  if (!all_digits(s)) bad_number(whole);
  return Rat(mpz_class(std::string(s), 10));
}

}  // namespace

Rat::Rat(long n, long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(mpz_class n, mpz_class d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(std::move(n)) / mpq_class(std::move(d));
}

Rat Rat::parse(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) bad_number(text);
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rat mag = parse_magnitude(s, text);
  return neg ? -mag : mag;
}

Rat operator/(const Rat& x, const Rat& y) {
  if (y.is_zero()) throw std::domain_error("rational division by zero");
  return Rat(mpq_class(x.v_ / y.v_));
}

Rat& Rat::operator/=(const Rat& y) {
  if (y.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= y.v_;
  return *this;
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

GaussRat GaussRat::parse(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  /* Split at the last top-level sign; tokens carry no inner signs because
   * exponent notation is not part of the literal syntax. */
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }

  auto parse_imag_coeff = [&](std::string_view part) -> Rat {
    // part includes the trailing 'i'; an absent coefficient means 1.
    part.remove_suffix(1);
    part = trim(part);
    if (part.empty() || part == "+") return Rat(1);
    if (part == "-") return Rat(-1);
    return Rat::parse(part);
  };

  if (split == std::string_view::npos) {
    if (s.back() == 'i') return GaussRat(Rat(0), parse_imag_coeff(s));
    return GaussRat(Rat::parse(s));
  }

  auto first = s.substr(0, split);
  auto second = s.substr(split);  // keeps the sign
  if (second.back() == 'i') {
    if (first.back() == 'i') throw std::invalid_argument("two imaginary parts in: '" + std::string(text) + "'");
    return GaussRat(Rat::parse(first), parse_imag_coeff(second));
  }
  if (first.back() == 'i') {
    // imaginary part written first, e.g. "2i+1"
    return GaussRat(Rat::parse(second), parse_imag_coeff(first));
  }
  throw std::invalid_argument("cannot parse complex literal: '" + std::string(text) + "'");
}

std::string GaussRat::str() const {
  if (im.is_zero()) return re.str();
  std::string is = im.str();
  std::string tail = (is == "1" ? "i" : is == "-1" ? "-i" : is + "i");
  if (re.is_zero()) return tail;
  if (im.sign() > 0) return re.str() + "+" + tail;
  return re.str() + tail;
}

ParamSet ParamSet::parse(std::string_view a_csv, std::string_view b_csv) {
  auto parse_list = [](std::string_view csv) {
    std::vector<GaussRat> out;
    csv = trim(csv);
    if (csv.empty()) return out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
      auto comma = csv.find(',', pos);
      auto piece = comma == std::string_view::npos ? csv.substr(pos) : csv.substr(pos, comma - pos);
      out.push_back(GaussRat::parse(piece));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  return ParamSet{parse_list(a_csv), parse_list(b_csv)};
}

bool ParamSet::all_rational() const {
  auto real = [](const GaussRat& g) { return g.is_real(); };
  return std::all_of(a.begin(), a.end(), real) && std::all_of(b.begin(), b.end(), real);
}

std::string ParamSet::str() const {
  std::ostringstream os;
  auto list = [&](const std::vector<GaussRat>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << v[i].str();
    }
  };
  os << "a=(";
  list(a);
  os << ") b=(";
  list(b);
  os << ")";
  return os.str();
}

bool AlphaPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const GaussRat& c) { return c.is_zero(); });
}

std::vector<GaussRat> linear_product_poly(const std::vector<GaussRat>& cs) {
  std::vector<GaussRat> p{GaussRat(Rat(1))};
  for (const auto& c : cs) {
    // multiply p by (1 - c X)
    std::vector<GaussRat> next(p.size() + 1);
    for (std::size_t t = 0; t < p.size(); ++t) {
      next[t] = next[t] + p[t];
      next[t + 1] = next[t + 1] - c * p[t];
    }
    p = std::move(next);
  }
  return p;
}

AlphaPoly alpha_poly(const std::vector<GaussRat>& cs) {
  /* prod (1 - c_i X) = 1 - alpha(X) X, so alpha_d = -p_{d+1} where p is the
   * expanded product. */
  auto p = linear_product_poly(cs);
  AlphaPoly out;
  if (p.size() > 1) {
    out.coeffs.assign(p.begin() + 1, p.end());
    for (auto& c : out.coeffs) c = -c;
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

}  // namespace strangeq
