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
#include <shared_mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epsmult/ideal.hpp"
#include "epsmult/numeric.hpp"

namespace epsmult {

// An index n, or a tuple (n_1, ..., n_r) for product grids.
using Index = std::vector<std::uint64_t>;

enum class SequenceFormula { square, cube, power_of_two };
enum class HyperbolaVariant { lower, upper, sum };

// I_n = I^n.
struct PowerRule {
  MonomialIdeal ideal;
};

// I_(n_1..n_r) = I_1^n_1 ... I_r^n_r.
struct ProductGridRule {
  std::vector<MonomialIdeal> ideals;
};

// d = 2, I_n = (x y^a_n, x^2) for n >= 1.
struct CounterRule {
  std::variant<std::vector<Natural>, SequenceFormula> sequence;

  // a_n for n >= 1; explicit lists are 1-based.
  Natural term(std::uint64_t n) const;
};

// d = 1, I_n = (x^ceil(n sqrt k)) with k a positive non-square.
struct SqrtPrincipalRule {
  Natural k;
};

// d = 2. lower: <x^a y^b : ab >= n^2, b >= n>; upper: the mirror with
// a >= n; sum: <x^a y^b : ab >= n^2>.
struct HyperbolaRule {
  HyperbolaVariant variant;
};

// d = 2, I_1 = (xy), I_n = (x y^(n^2), x^(n^2) y) + sum_t I_t I_(n-t).
struct LimitRecursiveRule {};

// I_n = sum over compositions of n into seed degrees of products of seeds.
struct NoetherianSeedsRule {
  std::map<std::uint64_t, MonomialIdeal> seeds;
};

// Explicit list starting with I_0, which must be the unit ideal.
struct TableRule {
  std::vector<MonomialIdeal> ideals;
};

using FamilyRule = std::variant<PowerRule, ProductGridRule, CounterRule, SqrtPrincipalRule,
                                HyperbolaRule, LimitRecursiveRule, NoetherianSeedsRule, TableRule>;

// A validated, immutable description of a graded family {I_n}.
class FamilySpec {
 public:
  FamilySpec(std::size_t d, FamilyRule rule);

  static FamilySpec power(MonomialIdeal ideal);
  static FamilySpec product_grid(std::vector<MonomialIdeal> ideals);
  static FamilySpec counter(std::vector<Natural> sequence);
  static FamilySpec counter(SequenceFormula formula);
  static FamilySpec sqrt_principal(Natural k);
  static FamilySpec hyperbola(HyperbolaVariant variant);
  static FamilySpec limit_recursive();
  static FamilySpec noetherian(std::map<std::uint64_t, MonomialIdeal> seeds);
  static FamilySpec table(std::vector<MonomialIdeal> ideals);

  std::size_t dim() const { return d_; }
  const FamilyRule& rule() const { return rule_; }
  // Number of index coordinates: r for product grids, else 1.
  std::size_t arity() const;

  // Canonical JSON text; equal specs have equal keys.
  const std::string& key() const { return key_; }
  // 16 hex digits of the FNV-1a hash of key().
  std::string hash() const;

 private:
  std::size_t d_;
  FamilyRule rule_;
  std::string key_;
};

std::string to_json_text(const FamilySpec& spec);
// {"d": 2, "rule": {"type": "counter", "a": "n^2"}} and friends.
FamilySpec parse_family_spec(std::string_view json_text);

// Memo of evaluated ideals keyed by (spec key, index). Inserts are
// idempotent, so concurrent evaluation of the same entry is harmless.
class FamilyCache {
 public:
  MonomialIdeal eval(const FamilySpec& spec, const Index& n);
  void clear();
  std::size_t size() const;

 private:
  std::optional<MonomialIdeal> lookup(const std::string& key, const Index& n) const;
  void insert(const std::string& key, const Index& n, const MonomialIdeal& ideal);
  MonomialIdeal compute(const FamilySpec& spec, const Index& n);

  mutable std::shared_mutex mu_;
  std::map<std::string, std::map<Index, MonomialIdeal>> memo_;
};

FamilyCache& default_family_cache();

MonomialIdeal eval_family(const FamilySpec& spec, std::uint64_t n);
MonomialIdeal eval_family(const FamilySpec& spec, const Index& n);

enum class StructureMode { graded, filtration };

struct StructureViolation {
  enum class Kind { product, descending };
  Kind kind;
  // product: I_n I_m not in I_(n+m); descending: I_(n+1) not in I_n (m = n+1).
  std::uint64_t n;
  std::uint64_t m;

  friend bool operator==(const StructureViolation&, const StructureViolation&) = default;
};

struct StructureReport {
  bool pass = true;
  StructureMode mode = StructureMode::graded;
  std::uint64_t bound = 0;
  std::optional<StructureViolation> violation;

  friend bool operator==(const StructureReport&, const StructureReport&) = default;
};

// graded: I_n I_m ⊆ I_(n+m) for n, m >= 1, n + m <= N; filtration also
// I_(n+1) ⊆ I_n for n < N. Reports the lexicographically first failure.
StructureReport check_structure(const FamilySpec& spec, std::uint64_t bound, StructureMode mode);

// Smallest a <= max_a with I_(an+r) = I_a^(n-1) I_(a+r) for 1 <= n <= window
// and 0 <= r < a.
std::optional<std::uint64_t> generation_degree(const FamilySpec& spec, std::uint64_t max_a,
                                               std::uint64_t window);

struct GrowthReport {
  std::uint64_t n = 0;
  Natural max_socle_degree;  // 0 when sat(I_n) = I_n
  Natural minimal_c_linear;
  Natural minimal_c_quadratic;

  friend bool operator==(const GrowthReport&, const GrowthReport&) = default;
};

// Smallest c with I_n ∩ m^(cn) = sat(I_n) ∩ m^(cn), and likewise for m^(cn^2).
GrowthReport growth_constants(const FamilySpec& spec, std::uint64_t n);

// The two ideals bracketing the recursive family:
// y^(n-1) J_n + x^(n-1) J'_n  ⊆  I_n  ⊆  J_n + J'_n.
MonomialIdeal limit_sandwich_lower(std::uint64_t n);
MonomialIdeal limit_sandwich_upper(std::uint64_t n);

std::string to_string(SequenceFormula f);
std::string to_string(HyperbolaVariant v);
std::string to_string(StructureMode m);
StructureMode parse_structure_mode(std::string_view s);

}  // namespace epsmult
