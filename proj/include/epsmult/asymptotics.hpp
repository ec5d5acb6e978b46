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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epsmult/families.hpp"
#include "epsmult/numeric.hpp"

namespace epsmult {

// Inclusive box lo <= n <= hi of indices.
struct IndexRange {
  Index lo;
  Index hi;

  // "a:b", applied to every coordinate.
  static IndexRange parse(std::string_view text, std::size_t arity = 1);
  std::vector<Index> indices() const;  // lexicographic
};

struct LengthTable {
  std::size_t arity = 1;
  std::size_t ambient_dim = 1;
  std::map<Index, Natural> entries;
  std::string spec_hash;             // empty for hand-built tables
  std::vector<std::string> methods;  // sorted, distinct

  friend bool operator==(const LengthTable&, const LengthTable&) = default;
};

struct TableOptions {
  unsigned threads = 1;
};

// l(H^0_m(R/I_n)) for every n in the range; staircase path when d = 2.
LengthTable length_table(const FamilySpec& spec, const IndexRange& range, const TableOptions& options = {});

// Exponent tuple (i_1, ..., i_r) of a monomial n_1^i_1 ... n_r^i_r.
using Exponents = std::vector<std::size_t>;

// Monomials of total degree <= degree in `arity` variables, by descending
// total degree and then descending lexicographic order.
std::vector<Exponents> monomial_basis(std::size_t arity, std::size_t degree);

// sum_e sigma_e(n mod period) n^e, valid for n >= start coordinatewise.
class QuasiPolynomial {
 public:
  using Coefficients = std::map<Index, std::map<Exponents, Rational>>;

  QuasiPolynomial(std::size_t arity, std::size_t period, std::size_t degree, std::uint64_t start,
                  Coefficients coefficients);

  std::size_t arity() const { return arity_; }
  std::size_t period() const { return period_; }
  std::size_t degree() const { return degree_; }
  std::uint64_t start() const { return start_; }
  const Coefficients& coefficients() const { return coeffs_; }

  // Zero for monomials not stored.
  Rational coefficient(const Index& residue, const Exponents& e) const;
  Rational evaluate(const Index& n) const;

  friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;

 private:
  std::size_t arity_;
  std::size_t period_;
  std::size_t degree_;
  std::uint64_t start_;
  Coefficients coeffs_;
};

struct FitOptions {
  std::size_t degree = 2;
  std::size_t max_period = 6;
  std::size_t holdout = 2;
  // First index used in every coordinate; defaults to ambient_dim + 1.
  std::optional<std::uint64_t> start;
};

// Smallest period whose per-residue exact interpolation reproduces every
// table entry from the start index on, the last `holdout` points of each
// class included. Throws InsufficientDataError or NoFitError.
QuasiPolynomial fit_quasi_polynomial(const LengthTable& table, const FitOptions& options);

struct EpsilonReport {
  Rational raw_limit;  // sum of the top-degree coefficients
  Rational epsilon;    // d! * raw_limit
  std::map<Exponents, Rational> mixed;

  friend bool operator==(const EpsilonReport&, const EpsilonReport&) = default;
};

// Reads the degree-d part. Throws TheoremViolation when it depends on the
// residue class or a higher-degree coefficient is nonzero.
EpsilonReport extract_epsilons(const QuasiPolynomial& q, std::size_t d);

// n^p or n^p * ln(n) with rational p.
struct Normalizer {
  Rational exponent = 1;
  bool log_factor = false;

  static Normalizer parse(std::string_view text);
  std::string to_string() const;
  double operator()(double n) const;

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

enum class Trend { increasing, decreasing, oscillating, constant };
std::string to_string(Trend t);
Trend parse_trend(std::string_view s);

struct ConvergencePoint {
  std::uint64_t n = 0;
  Natural length;
  double value = 0;

  friend bool operator==(const ConvergencePoint&, const ConvergencePoint&) = default;
};

struct ConvergenceReport {
  Normalizer normalizer;
  std::vector<ConvergencePoint> points;  // indices with a nonzero normalizer
  std::size_t window = 0;
  double window_max = 0;  // max over the trailing window
  Trend trend = Trend::constant;

  friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

// window = 0 uses the trailing half of the sequence.
ConvergenceReport convergence_report(const LengthTable& table, const Normalizer& normalizer,
                                     std::size_t window = 0);

}  // namespace epsmult
