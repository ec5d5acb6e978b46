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

#include "epsmult/asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "epsmult/cohomology.hpp"
#include "epsmult/error.hpp"

namespace epsmult {

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
  if (s.empty() || s.size() > 19) throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

Rational power(std::uint64_t base, std::size_t e) {
  Natural b = base;
  Natural out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= b;
  return Rational(out);
}

Rational monomial_value(const Index& n, const Exponents& e) {
  Rational v = 1;
  for (std::size_t i = 0; i < n.size(); ++i) v *= power(n[i], e[i]);
  return v;
}

std::size_t total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), std::size_t{0}); }

// (sum, lex) order, so the holdout is the far end of each class.
bool by_size(const Index& a, const Index& b) {
  const auto sa = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto sb = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  return sa != sb ? sa < sb : a < b;
}

void for_each_residue(std::size_t arity, std::size_t period, const std::function<void(const Index&)>& f) {
  Index r(arity, 0);
  while (true) {
    f(r);
    std::size_t i = arity;
    while (i > 0 && r[i - 1] + 1 == period) r[--i] = 0;
    if (i == 0) return;
    ++r[i - 1];
  }
}

struct ClassFit {
  bool enough = true;
  std::optional<Index> failing;
  std::map<Exponents, Rational> coeffs;
};

ClassFit fit_class(const std::vector<Index>& pts, const LengthTable& table, const std::vector<Exponents>& basis,
                   std::size_t holdout) {
  ClassFit out;
  const std::size_t m = basis.size();
  if (pts.size() < m + holdout) {
    out.enough = false;
    return out;
  }
  auto row_of = [&](const Index& n) {
    RationalVector row;
    row.reserve(m);
    for (const auto& e : basis) row.push_back(monomial_value(n, e));
    return row;
  };
  RationalMatrix chosen;
  RationalVector values;
  for (std::size_t i = 0; i + holdout < pts.size() && chosen.size() < m; ++i) {
    auto row = row_of(pts[i]);
    chosen.push_back(row);
    if (rank(chosen) < chosen.size()) {
      chosen.pop_back();
      continue;
    }
    values.push_back(Rational(table.entries.at(pts[i])));
  }
  if (chosen.size() < m) {
    out.enough = false;
    return out;
  }
  auto solution = solve_square(chosen, values);
  if (!solution) {
    out.enough = false;
    return out;
  }
  for (const auto& n : pts) {
    const auto row = row_of(n);
    Rational v = 0;
    for (std::size_t k = 0; k < m; ++k) v += row[k] * (*solution)[k];
    if (v != Rational(table.entries.at(n))) {
      out.failing = n;
      return out;
    }
  }
  for (std::size_t k = 0; k < m; ++k) out.coeffs[basis[k]] = (*solution)[k];
  return out;
}

std::string exponent_text(const Rational& p) {
  if (denominator(p) == 1) return to_string(numerator(p));
  return "(" + to_string(numerator(p)) + "/" + to_string(denominator(p)) + ")";
}

}  // namespace

IndexRange IndexRange::parse(std::string_view text, std::size_t arity) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("range must look like a:b");
  const auto lo = parse_u64(text.substr(0, colon), "range bound");
  const auto hi = parse_u64(text.substr(colon + 1), "range bound");
  if (lo > hi) throw PreconditionError("empty range " + std::string(text));
  if (arity == 0) throw PreconditionError("range arity must be positive");
  return IndexRange{Index(arity, lo), Index(arity, hi)};
}

std::vector<Index> IndexRange::indices() const {
  if (lo.size() != hi.size() || lo.empty()) throw PreconditionError("malformed index range");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw PreconditionError("empty index range");
  }
  std::vector<Index> out;
  Index n = lo;
  while (true) {
    out.push_back(n);
    std::size_t i = n.size();
    while (i > 0 && n[i - 1] == hi[i - 1]) {
      n[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++n[i - 1];
  }
}

LengthTable length_table(const FamilySpec& spec, const IndexRange& range, const TableOptions& options) {
  if (range.lo.size() != spec.arity()) throw DimensionMismatch("range arity differs from the family");
  const auto indices = range.indices();
  const H0Method method = spec.dim() == 2 ? H0Method::staircase : H0Method::box;
  std::vector<Natural> lengths(indices.size());
  std::vector<std::exception_ptr> errors(indices.size());

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < indices.size(); i += stride) {
      try {
        const auto ideal = eval_family(spec, indices[i]);
        if (ideal.is_zero()) throw UndefinedSaturation("the family has a zero ideal in the range");
        H0Options opts;
        opts.method = method;
        lengths[i] = h0_length(ideal, opts).length;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, indices.size());
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  LengthTable table;
  table.arity = spec.arity();
  table.ambient_dim = spec.dim();
  table.spec_hash = spec.hash();
  table.methods = {to_string(method)};
  for (std::size_t i = 0; i < indices.size(); ++i) table.entries.emplace(indices[i], std::move(lengths[i]));
  return table;
}

std::vector<Exponents> monomial_basis(std::size_t arity, std::size_t degree) {
  if (arity == 0) throw PreconditionError("arity must be positive");
  std::vector<Exponents> out;
  Exponents e(arity, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == arity) {
      for (std::size_t k = 0; k <= left; ++k) {
        e[pos] = k;
        out.push_back(e);
      }
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      e[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    const auto ta = total(a), tb = total(b);
    return ta != tb ? ta > tb : a > b;
  });
  return out;
}

QuasiPolynomial::QuasiPolynomial(std::size_t arity, std::size_t period, std::size_t degree, std::uint64_t start,
                                 Coefficients coefficients)
    : arity_(arity), period_(period), degree_(degree), start_(start), coeffs_(std::move(coefficients)) {
  if (arity_ == 0 || period_ == 0) throw PreconditionError("quasi-polynomial needs positive arity and period");
  for (const auto& [residue, terms] : coeffs_) {
    if (residue.size() != arity_) throw PreconditionError("residue arity differs from the quasi-polynomial");
    for (auto r : residue) {
      if (r >= period_) throw PreconditionError("residue out of range");
    }
    for (const auto& [e, c] : terms) {
      if (e.size() != arity_ || total(e) > degree_) throw PreconditionError("monomial outside the degree bound");
    }
  }
}

Rational QuasiPolynomial::coefficient(const Index& residue, const Exponents& e) const {
  auto it = coeffs_.find(residue);
  if (it == coeffs_.end()) return 0;
  auto jt = it->second.find(e);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

Rational QuasiPolynomial::evaluate(const Index& n) const {
  if (n.size() != arity_) throw DimensionMismatch("index arity differs from the quasi-polynomial");
  Index residue(arity_);
  for (std::size_t i = 0; i < arity_; ++i) residue[i] = n[i] % period_;
  auto it = coeffs_.find(residue);
  if (it == coeffs_.end()) return 0;
  Rational v = 0;
  for (const auto& [e, c] : it->second) v += c * monomial_value(n, e);
  return v;
}

QuasiPolynomial fit_quasi_polynomial(const LengthTable& table, const FitOptions& options) {
  if (options.max_period == 0) throw PreconditionError("the period bound must be positive");
  const std::uint64_t start = options.start.value_or(table.ambient_dim + 1);
  const auto basis = monomial_basis(table.arity, options.degree);

  std::vector<Index> window;
  for (const auto& [n, len] : table.entries) {
    if (n.size() != table.arity) throw DimensionMismatch("table index arity differs from the table");
    if (std::all_of(n.begin(), n.end(), [&](std::uint64_t x) { return x >= start; })) window.push_back(n);
  }

  std::vector<NoFitError::Attempt> attempts;
  for (std::size_t a = 1; a <= options.max_period; ++a) {
    std::map<Index, std::vector<Index>> classes;
    for (const auto& n : window) {
      Index r(n.size());
      for (std::size_t i = 0; i < n.size(); ++i) r[i] = n[i] % a;
      classes[r].push_back(n);
    }
    QuasiPolynomial::Coefficients coeffs;
    bool enough = true;
    std::optional<Index> failing;
    for_each_residue(table.arity, a, [&](const Index& r) {
      if (!enough) return;
      auto& pts = classes[r];
      std::sort(pts.begin(), pts.end(), by_size);
      auto fit = fit_class(pts, table, basis, options.holdout);
      if (!fit.enough) {
        enough = false;
      } else if (fit.failing) {
        if (!failing || by_size(*fit.failing, *failing)) failing = fit.failing;
      } else {
        coeffs[r] = std::move(fit.coeffs);
      }
    });
    if (!enough) {
      if (a == 1) {
        throw InsufficientDataError("need at least " + std::to_string(basis.size() + options.holdout) +
                                    " table entries from index " + std::to_string(start) + " on");
      }
      attempts.push_back({a, {}});
      break;
    }
    if (!failing) return QuasiPolynomial(table.arity, a, options.degree, start, std::move(coeffs));
    attempts.push_back({a, *failing});
  }
  std::string what = "no quasi-polynomial of degree <= " + std::to_string(options.degree) + " and period <= " +
                     std::to_string(options.max_period) + " reproduces the table";
  throw NoFitError(what, std::move(attempts));
}

EpsilonReport extract_epsilons(const QuasiPolynomial& q, std::size_t d) {
  if (q.degree() < d) throw PreconditionError("the fitted degree bound is below the ambient dimension");
  const auto basis = monomial_basis(q.arity(), q.degree());
  EpsilonReport report;
  for (const auto& e : basis) {
    const auto t = total(e);
    if (t < d) continue;
    std::optional<Rational> common;
    for_each_residue(q.arity(), q.period(), [&](const Index& r) {
      const Rational c = q.coefficient(r, e);
      if (t > d && c != 0) throw TheoremViolation("a coefficient above the ambient dimension is nonzero");
      if (common && *common != c) throw TheoremViolation("a top-degree coefficient depends on the residue class");
      common = c;
    });
    if (t > d) continue;
    Natural weight = 1;
    for (auto k : e) weight *= factorial(k);
    report.mixed[e] = *common * Rational(weight);
    report.raw_limit += *common;
  }
  report.epsilon = report.raw_limit * Rational(factorial(d));
  return report;
}

Normalizer Normalizer::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  Normalizer out;
  auto strip_log = [&](std::string& body) {
    for (const char* suffix : {"*ln(n)", "*log(n)"}) {
      const std::string_view sv(suffix);
      if (body.size() >= sv.size() && body.compare(body.size() - sv.size(), sv.size(), sv) == 0) {
        body.resize(body.size() - sv.size());
        return true;
      }
    }
    return false;
  };
  if (s == "ln(n)" || s == "log(n)") return Normalizer{0, true};
  out.log_factor = strip_log(s);
  if (s == "1") {
    out.exponent = 0;
  } else if (s == "n") {
    out.exponent = 1;
  } else if (s.rfind("n^", 0) == 0) {
    std::string p = s.substr(2);
    if (p.size() >= 2 && p.front() == '(' && p.back() == ')') p = p.substr(1, p.size() - 2);
    try {
      out.exponent = parse_rational(p);
    } catch (const Error&) {
      throw ParseError("bad normalizer exponent in '" + std::string(text) + "'");
    }
  } else {
    throw ParseError("normalizer must be n^p or n^p*ln(n), got '" + std::string(text) + "'");
  }
  return out;
}

std::string Normalizer::to_string() const {
  std::string base = exponent == 0 ? "" : "n^" + exponent_text(exponent);
  if (!log_factor) return base.empty() ? "1" : base;
  return base.empty() ? "ln(n)" : base + "*ln(n)";
}

double Normalizer::operator()(double n) const {
  double v = std::pow(n, to_double(exponent));
  if (log_factor) v *= std::log(n);
  return v;
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::oscillating: return "oscillating";
    case Trend::constant: return "constant";
  }
  return "constant";
}

Trend parse_trend(std::string_view s) {
  for (Trend t : {Trend::increasing, Trend::decreasing, Trend::oscillating, Trend::constant}) {
    if (s == to_string(t)) return t;
  }
  throw ParseError("unknown trend '" + std::string(s) + "'");
}

ConvergenceReport convergence_report(const LengthTable& table, const Normalizer& normalizer, std::size_t window) {
  if (table.arity != 1) throw PreconditionError("convergence reports need a single-index table");
  ConvergenceReport report;
  report.normalizer = normalizer;
  for (const auto& [n, len] : table.entries) {
    const double scale = normalizer(static_cast<double>(n[0]));
    if (scale == 0 || !std::isfinite(scale)) continue;
    report.points.push_back(ConvergencePoint{n[0], len, to_double(Rational(len)) / scale});
  }
  if (report.points.empty()) return report;
  const std::size_t size = report.points.size();
  report.window = window == 0 ? std::max<std::size_t>(1, (size + 1) / 2) : std::min(window, size);
  report.window_max = -INFINITY;
  for (std::size_t i = size - report.window; i < size; ++i) {
    report.window_max = std::max(report.window_max, report.points[i].value);
  }
  bool up = false, down = false;
  for (std::size_t i = 1; i < size; ++i) {
    const double a = report.points[i - 1].value, b = report.points[i].value;
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (b > a + tol) up = true;
    if (b < a - tol) down = true;
  }
  report.trend = up && down ? Trend::oscillating : up ? Trend::increasing : down ? Trend::decreasing : Trend::constant;
  return report;
}

}  // namespace epsmult
