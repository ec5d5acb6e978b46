// Copyright 2026 The epsmult Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epsmult/ideal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "epsmult/error.hpp"

namespace epsmult {

AmbientRing::AmbientRing(std::size_t d) : d_(d) {
  if (d == 0) throw PreconditionError("ambient dimension must be positive");
}

Monomial::Monomial(std::vector<Natural> exponents) : exps_(std::move(exponents)) {
  for (const auto& e : exps_) {
    if (e < 0) throw PreconditionError("negative exponent in monomial");
  }
}

Monomial::Monomial(std::initializer_list<long long> exponents) {
  exps_.reserve(exponents.size());
  for (long long e : exponents) {
    if (e < 0) throw PreconditionError("negative exponent in monomial");
    exps_.emplace_back(e);
  }
}

Monomial Monomial::one(std::size_t d) { return Monomial(std::vector<Natural>(d, Natural(0))); }

Monomial Monomial::variable(std::size_t d, std::size_t var, Natural power) {
  if (var >= d) throw PreconditionError("variable index out of range");
  std::vector<Natural> e(d, Natural(0));
  e[var] = std::move(power);
  return Monomial(std::move(e));
}

Natural Monomial::degree() const {
  Natural deg = 0;
  for (const auto& e : exps_) deg += e;
  return deg;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](const Natural& e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("monomials of different dimension");
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("monomials of different dimension");
  Monomial out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

Monomial Monomial::with_zeroed(std::span<const std::size_t> vars) const {
  Monomial out = *this;
  for (std::size_t v : vars) {
    if (v >= dim()) throw PreconditionError("variable index out of range");
    out.exps_[v] = 0;
  }
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("monomials of different dimension");
  Monomial out = a;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    if (b.exps_[i] > out.exps_[i]) out.exps_[i] = b.exps_[i];
  }
  return out;
}

MonomialIdeal::MonomialIdeal(std::size_t d, std::vector<Monomial> generators)
    : MonomialIdeal(minimalize(d, std::move(generators))) {}

MonomialIdeal::MonomialIdeal(std::size_t d,
                             std::initializer_list<std::initializer_list<long long>> generators)
    : MonomialIdeal(d, [&] {
        std::vector<Monomial> g;
        for (const auto& e : generators) g.emplace_back(e);
        return g;
      }()) {}

MonomialIdeal MonomialIdeal::zero(std::size_t d) { return minimalize(d, {}); }

MonomialIdeal MonomialIdeal::unit(std::size_t d) { return minimalize(d, {Monomial::one(d)}); }

MonomialIdeal MonomialIdeal::principal(Monomial m) {
  const std::size_t d = m.dim();
  return minimalize(d, {std::move(m)});
}

Monomial MonomialIdeal::generator_max() const {
  Monomial out = Monomial::one(d_);
  for (const auto& g : gens_) out = lcm(out, g);
  return out;
}

MonomialIdeal minimalize(std::size_t d, std::vector<Monomial> gens) {
  AmbientRing ring(d);
  for (const auto& g : gens) {
    if (g.dim() != d) throw DimensionMismatch("generator dimension differs from ambient dimension");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // A proper divisor always precedes its multiple in lex order, so each
  // candidate only needs checking against the survivors before it.
  std::vector<Monomial> kept;
  if (d == 1) {
    if (!gens.empty()) kept.push_back(std::move(gens.front()));
  } else if (d == 2) {
    // Sorted by x ascending; keep a strictly decreasing y staircase.
    for (auto& g : gens) {
      if (kept.empty() || g[1] < kept.back()[1]) kept.push_back(std::move(g));
    }
  } else {
    for (auto& g : gens) {
      bool divisible = std::any_of(kept.begin(), kept.end(),
                                   [&](const Monomial& k) { return k.divides(g); });
      if (!divisible) kept.push_back(std::move(g));
    }
  }
  return MonomialIdeal(MonomialIdeal::Minimal{}, d, std::move(kept));
}

namespace {

void require_same_dim(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ideals live in rings of different dimension");
}

void require_nonzero(const MonomialIdeal& ideal, const char* op) {
  if (ideal.is_zero()) {
    throw UndefinedSaturation(std::string(op) + " is undefined for the zero ideal");
  }
}

}  // namespace

bool contains(const MonomialIdeal& ideal, const Monomial& m) {
  if (m.dim() != ideal.dim()) throw DimensionMismatch("monomial dimension differs from ideal");
  return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const Monomial& g) { return g.divides(m); });
}

bool is_subset(const MonomialIdeal& small, const MonomialIdeal& big) {
  require_same_dim(small, big);
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const Monomial& g) { return contains(big, g); });
}

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<Monomial> prods;
  prods.reserve(a.size() * b.size());
  for (const auto& g : a.generators()) {
    for (const auto& h : b.generators()) prods.push_back(g * h);
  }
  return minimalize(a.dim(), std::move(prods));
}

MonomialIdeal multiply(const MonomialIdeal& a, const Monomial& m) {
  return multiply(a, MonomialIdeal::principal(m));
}

MonomialIdeal power(const MonomialIdeal& ideal, std::uint64_t n) {
  MonomialIdeal result = MonomialIdeal::unit(ideal.dim());
  for (std::uint64_t i = 0; i < n; ++i) result = multiply(result, ideal);
  return result;
}

MonomialIdeal add(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<Monomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return minimalize(a.dim(), std::move(gens));
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a, b);
  std::vector<Monomial> lcms;
  lcms.reserve(a.size() * b.size());
  for (const auto& g : a.generators()) {
    for (const auto& h : b.generators()) lcms.push_back(lcm(g, h));
  }
  return minimalize(a.dim(), std::move(lcms));
}

MonomialIdeal colon_var_sat(const MonomialIdeal& ideal, std::size_t var) {
  require_nonzero(ideal, "saturation");
  if (var >= ideal.dim()) throw PreconditionError("variable index out of range");
  const std::size_t vars[] = {var};
  std::vector<Monomial> gens;
  gens.reserve(ideal.size());
  for (const auto& g : ideal.generators()) gens.push_back(g.with_zeroed(vars));
  return minimalize(ideal.dim(), std::move(gens));
}

MonomialIdeal saturate(const MonomialIdeal& ideal) {
  require_nonzero(ideal, "saturation");
  MonomialIdeal result = colon_var_sat(ideal, 0);
  for (std::size_t i = 1; i < ideal.dim(); ++i) result = intersect(result, colon_var_sat(ideal, i));
  return result;
}

MonomialIdeal localize(const MonomialIdeal& ideal, std::span<const std::size_t> vars) {
  require_nonzero(ideal, "localization");
  std::vector<Monomial> gens;
  gens.reserve(ideal.size());
  for (const auto& g : ideal.generators()) gens.push_back(g.with_zeroed(vars));
  return minimalize(ideal.dim(), std::move(gens));
}

namespace {

std::string variable_name(std::size_t d, std::size_t i) {
  if (d <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

}  // namespace

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += variable_name(m.dim(), i);
    if (m[i] != 1) out += "^" + m[i].str();
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) return "0";
  std::string out;
  for (const auto& g : ideal.generators()) {
    if (!out.empty()) out += ", ";
    out += to_string(g);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << to_string(m); }

std::ostream& operator<<(std::ostream& os, const MonomialIdeal& ideal) {
  return os << "(" << to_string(ideal) << ")";
}

namespace {

Natural json_natural(const nlohmann::json& v) {
  if (v.is_number_unsigned()) return Natural(v.get<std::uint64_t>());
  if (v.is_number_integer()) {
    auto x = v.get<std::int64_t>();
    if (x < 0) throw ParseError("negative exponent in ideal");
    return Natural(x);
  }
  if (v.is_string()) {
    Natural n = parse_natural(v.get<std::string>());
    if (n < 0) throw ParseError("negative exponent in ideal");
    return n;
  }
  throw ParseError("exponent must be an integer");
}

MonomialIdeal parse_json_ideal(std::string_view text, std::optional<std::size_t> dim) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON ideal: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("JSON ideal must be an array of exponent arrays");
  std::vector<Monomial> gens;
  std::optional<std::size_t> d = dim;
  for (const auto& row : doc) {
    if (!row.is_array()) throw ParseError("JSON ideal must be an array of exponent arrays");
    if (!d) d = row.size();
    if (row.size() != *d) throw ParseError("exponent arrays of differing length");
    std::vector<Natural> e;
    for (const auto& v : row) e.push_back(json_natural(v));
    gens.emplace_back(std::move(e));
  }
  if (!d) throw ParseError("cannot infer the dimension of an empty ideal; pass it explicitly");
  if (*d == 0) throw ParseError("ambient dimension must be positive");
  return MonomialIdeal(*d, std::move(gens));
}

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  // Each term is a map var -> exponent (zero-based); "1" yields an empty map.
  std::vector<std::vector<std::pair<std::size_t, Natural>>> parse() {
    std::vector<std::vector<std::pair<std::size_t, Natural>>> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty ideal text");
    while (true) {
      terms.push_back(term());
      skip_ws();
      if (at_end()) break;
      expect(',');
    }
    return terms;
  }

  bool used_letters() const { return letters_; }
  std::size_t max_var() const { return max_var_; }

 private:
  std::vector<std::pair<std::size_t, Natural>> term() {
    std::vector<std::pair<std::size_t, Natural>> factors;
    skip_ws();
    if (peek() == '1' && !next_is_digit(1)) {
      ++pos_;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
      } else {
        return factors;
      }
    }
    while (true) {
      skip_ws();
      std::size_t var = variable();
      Natural e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        e = number();
      }
      factors.emplace_back(var, std::move(e));
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      if (peek() == 'x' || peek() == 'y' || peek() == 'z') continue;
      return factors;
    }
  }

  std::size_t variable() {
    char c = peek();
    if (c == 'y' || c == 'z') {
      ++pos_;
      letters_ = true;
      return track(c == 'y' ? 1 : 2);
    }
    if (c != 'x') fail("expected a variable");
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      letters_ = true;
      return track(0);
    }
    Natural idx = number();
    if (idx < 1 || idx > 4096) fail("variable index out of range");
    return track(idx.convert_to<std::size_t>() - 1);
  }

  Natural number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_natural(s_.substr(start, pos_ - start));
  }

  std::size_t track(std::size_t v) {
    max_var_ = std::max(max_var_, v + 1);
    return v;
  }

  bool next_is_digit(std::size_t off) const {
    return pos_ + off < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + off]));
  }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  bool letters_ = false;
  std::size_t max_var_ = 0;
};

}  // namespace

MonomialIdeal parse_ideal(std::string_view text, std::optional<std::size_t> dim) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') return parse_json_ideal(text, dim);

  std::string_view trimmed = text;
  if (first != std::string_view::npos) trimmed.remove_prefix(first);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) {
    trimmed.remove_suffix(1);
  }
  if (trimmed == "0") {
    if (!dim) throw ParseError("cannot infer the dimension of the zero ideal; pass it explicitly");
    return MonomialIdeal::zero(*dim);
  }

  TermParser parser(text);
  auto terms = parser.parse();
  std::size_t d = dim.value_or(std::max<std::size_t>(parser.max_var(), 1));
  if (!dim && parser.max_var() == 0) {
    throw ParseError("cannot infer the dimension of a constant ideal; pass it explicitly");
  }
  if (parser.max_var() > d) throw ParseError("variable index exceeds the ambient dimension");
  if (parser.used_letters() && d > 3) {
    throw ParseError("x, y, z aliases are only accepted when the dimension is at most 3");
  }
  std::vector<Monomial> gens;
  for (const auto& factors : terms) {
    std::vector<Natural> e(d, Natural(0));
    for (const auto& [var, pow] : factors) e[var] += pow;
    gens.emplace_back(std::move(e));
  }
  return MonomialIdeal(d, std::move(gens));
}

}  // namespace epsmult
