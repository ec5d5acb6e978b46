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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epsmult/numeric.hpp"

namespace epsmult {

// K[X_1, ..., X_d] with maximal ideal (X_1, ..., X_d).
class AmbientRing {
 public:
  explicit AmbientRing(std::size_t d);

  std::size_t dim() const { return d_; }

  friend bool operator==(const AmbientRing&, const AmbientRing&) = default;

 private:
  std::size_t d_;
};

// X^a for an exponent vector a in N^d.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Natural> exponents);
  Monomial(std::initializer_list<long long> exponents);

  static Monomial one(std::size_t d);
  static Monomial variable(std::size_t d, std::size_t var, Natural power = 1);

  std::size_t dim() const { return exps_.size(); }
  const Natural& operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Natural> exponents() const { return exps_; }

  Natural degree() const;
  bool is_one() const;

  // Componentwise <=.
  bool divides(const Monomial& other) const;

  // Exponent-wise sum.
  Monomial operator*(const Monomial& other) const;

  // Copy with the listed coordinates set to zero.
  Monomial with_zeroed(std::span<const std::size_t> vars) const;

  friend Monomial lcm(const Monomial& a, const Monomial& b);

  // Lexicographic on exponent vectors.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::vector<Natural> exps_;
};

// A monomial ideal stored by its minimal generators, sorted lexicographically.
// No generators encodes the zero ideal; the single generator 1 the unit ideal.
class MonomialIdeal {
 public:
  // Minimalizes; every generator must have dimension d.
  MonomialIdeal(std::size_t d, std::vector<Monomial> generators);
  MonomialIdeal(std::size_t d, std::initializer_list<std::initializer_list<long long>> generators);

  static MonomialIdeal zero(std::size_t d);
  static MonomialIdeal unit(std::size_t d);
  static MonomialIdeal principal(Monomial m);

  std::size_t dim() const { return d_; }
  AmbientRing ring() const { return AmbientRing(d_); }
  const std::vector<Monomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_one(); }

  // Componentwise maximum over the minimal generators.
  Monomial generator_max() const;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.d_ == b.d_ && a.gens_ == b.gens_;
  }
  friend bool operator!=(const MonomialIdeal& a, const MonomialIdeal& b) { return !(a == b); }

 private:
  struct Minimal {};
  MonomialIdeal(Minimal, std::size_t d, std::vector<Monomial> sorted_antichain)
      : d_(d), gens_(std::move(sorted_antichain)) {}

  friend MonomialIdeal minimalize(std::size_t d, std::vector<Monomial> gens);

  std::size_t d_;
  std::vector<Monomial> gens_;
};

// The antichain of <=-minimal elements. Throws DimensionMismatch.
MonomialIdeal minimalize(std::size_t d, std::vector<Monomial> gens);

bool contains(const MonomialIdeal& ideal, const Monomial& m);

// Generator-wise containment test for small ⊆ big.
bool is_subset(const MonomialIdeal& small, const MonomialIdeal& big);

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal multiply(const MonomialIdeal& a, const Monomial& m);
MonomialIdeal power(const MonomialIdeal& ideal, std::uint64_t n);
MonomialIdeal add(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);

// I : x_var^inf, with var zero-based.
MonomialIdeal colon_var_sat(const MonomialIdeal& ideal, std::size_t var);

// I : m^inf as the intersection of the single-variable saturations.
MonomialIdeal saturate(const MonomialIdeal& ideal);

// Image of I after inverting the variables in `vars` (zero-based).
MonomialIdeal localize(const MonomialIdeal& ideal, std::span<const std::size_t> vars);

// Text forms. Variables print as x,y,z when d <= 3, else x1..xd.
std::string to_string(const Monomial& m);
std::string to_string(const MonomialIdeal& ideal);
std::ostream& operator<<(std::ostream& os, const Monomial& m);
std::ostream& operator<<(std::ostream& os, const MonomialIdeal& ideal);

// Parses "x1*x2^2, x1^2", "x*y^2, x^2" or a JSON array "[[1,2],[2,0]]".
// "0" is the zero ideal and "1" the unit ideal. Without `dim` the
// dimension is inferred from the highest variable (or the JSON row length).
MonomialIdeal parse_ideal(std::string_view text, std::optional<std::size_t> dim = std::nullopt);

}  // namespace epsmult
