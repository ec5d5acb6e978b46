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

#include "epsmult/families.hpp"

#include <functional>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "epsmult/cohomology.hpp"
#include "epsmult/error.hpp"
#include "oracles.hpp"

namespace epsmult {
namespace {

const MonomialIdeal kCounter(2, {{1, 2}, {2, 0}});

// I_n from the defining recursion with the full sum over t.
MonomialIdeal limit_oracle(std::uint64_t n, std::map<std::uint64_t, MonomialIdeal>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  MonomialIdeal acc(2, {{1, 1}});
  if (n > 1) {
    const long long sq = static_cast<long long>(n * n);
    acc = MonomialIdeal(2, {{1, sq}, {sq, 1}});
    for (std::uint64_t t = 1; t < n; ++t) acc = add(acc, multiply(limit_oracle(t, memo), limit_oracle(n - t, memo)));
  }
  return memo.emplace(n, acc).first->second;
}

// Sum over every composition of n into seed degrees.
MonomialIdeal seeds_oracle(const std::map<std::uint64_t, MonomialIdeal>& seeds, std::uint64_t n, std::size_t d) {
  if (n == 0) return MonomialIdeal::unit(d);
  MonomialIdeal acc = MonomialIdeal::zero(d);
  for (const auto& [deg, seed] : seeds) {
    if (deg <= n) acc = add(acc, multiply(seed, seeds_oracle(seeds, n - deg, d)));
  }
  return acc;
}

TEST(FamilySpec, Validation) {
  EXPECT_THROW(FamilySpec(3, CounterRule{SequenceFormula::square}), PreconditionError);
  EXPECT_THROW(FamilySpec::sqrt_principal(4), PreconditionError);
  EXPECT_THROW(FamilySpec::sqrt_principal(0), PreconditionError);
  EXPECT_THROW(FamilySpec::table({kCounter}), PreconditionError);
  EXPECT_THROW(FamilySpec::product_grid({}), PreconditionError);
  EXPECT_THROW(FamilySpec::product_grid({kCounter, MonomialIdeal(3, {{1, 0, 0}})}), DimensionMismatch);
  EXPECT_THROW(FamilySpec::noetherian({{0, kCounter}}), PreconditionError);
  EXPECT_EQ(FamilySpec::product_grid({kCounter, kCounter}).arity(), 2u);
  EXPECT_EQ(FamilySpec::power(kCounter).arity(), 1u);
}

TEST(FamilySpec, KeysAreCanonical) {
  EXPECT_EQ(FamilySpec::power(kCounter).key(), FamilySpec::power(MonomialIdeal(2, {{2, 0}, {1, 2}, {2, 5}})).key());
  EXPECT_NE(FamilySpec::power(kCounter).key(), FamilySpec::counter(SequenceFormula::square).key());
  EXPECT_EQ(FamilySpec::limit_recursive().hash().size(), 16u);
  EXPECT_EQ(FamilySpec::counter(SequenceFormula::square).key(), R"({"d":2,"rule":{"a":"n^2","type":"counter"}})");
}

TEST(EvalFamily, Examples) {
  EXPECT_EQ(eval_family(FamilySpec::counter(SequenceFormula::square), 3), MonomialIdeal(2, {{1, 9}, {2, 0}}));
  EXPECT_EQ(eval_family(FamilySpec::hyperbola(HyperbolaVariant::lower), 2), MonomialIdeal(2, {{1, 4}, {2, 2}}));
  EXPECT_EQ(eval_family(FamilySpec::limit_recursive(), 2), MonomialIdeal(2, {{1, 4}, {4, 1}, {2, 2}}));
  EXPECT_EQ(eval_family(FamilySpec::sqrt_principal(2), 5), MonomialIdeal(1, {{8}}));
  EXPECT_TRUE(eval_family(FamilySpec::limit_recursive(), 0).is_unit());
  EXPECT_TRUE(eval_family(FamilySpec::counter(SequenceFormula::cube), 0).is_unit());
  EXPECT_EQ(eval_family(FamilySpec::counter(SequenceFormula::power_of_two), 4), MonomialIdeal(2, {{1, 16}, {2, 0}}));
  EXPECT_EQ(eval_family(FamilySpec::product_grid({kCounter, kCounter}), Index{1, 1}), power(kCounter, 2));
  EXPECT_THROW(eval_family(FamilySpec::product_grid({kCounter, kCounter}), 1), PreconditionError);
  EXPECT_THROW(eval_family(FamilySpec::counter(std::vector<Natural>{5, 7, 11}), 4), PreconditionError);
  EXPECT_THROW(eval_family(FamilySpec::table({MonomialIdeal::unit(1), MonomialIdeal(1, {{1}})}), 2),
               PreconditionError);
}

TEST(EvalFamily, PowerMatchesRepeatedProduct) {
  const auto spec = FamilySpec::power(kCounter);
  for (std::uint64_t n = 0; n <= 10; ++n) EXPECT_EQ(eval_family(spec, n), power(kCounter, n));
}

TEST(EvalFamily, SqrtPrincipalIsCeiling) {
  for (long long k : {2, 3, 5, 7, 10}) {
    const auto spec = FamilySpec::sqrt_principal(k);
    for (long long n = 1; n <= 60; ++n) {
      // ceil(n sqrt k) is the least e with e^2 >= n^2 k.
      long long e = 0;
      while (e * e < n * n * k) ++e;
      EXPECT_EQ(eval_family(spec, n), MonomialIdeal(1, {{e}}));
    }
  }
}

TEST(EvalFamily, HyperbolaMatchesPredicate) {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    const long long sq = static_cast<long long>(n * n);
    const long long nn = static_cast<long long>(n);
    const auto lower = oracle::gens_of(eval_family(FamilySpec::hyperbola(HyperbolaVariant::lower), n));
    const auto upper = oracle::gens_of(eval_family(FamilySpec::hyperbola(HyperbolaVariant::upper), n));
    const auto sum = oracle::gens_of(eval_family(FamilySpec::hyperbola(HyperbolaVariant::sum), n));
    oracle::for_each_point(2, static_cast<int>(sq) + 2, [&](const oracle::Point& p) {
      const long long a = p[0], b = p[1];
      EXPECT_EQ(oracle::in(lower, p), a * b >= sq && b >= nn);
      EXPECT_EQ(oracle::in(upper, p), a * b >= sq && a >= nn);
      EXPECT_EQ(oracle::in(sum, p), a * b >= sq);
    });
    EXPECT_EQ(limit_sandwich_upper(n), eval_family(FamilySpec::hyperbola(HyperbolaVariant::sum), n));
  }
}

TEST(EvalFamily, LimitRecursiveMatchesFullRecursion) {
  std::map<std::uint64_t, MonomialIdeal> memo;
  for (std::uint64_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(eval_family(FamilySpec::limit_recursive(), n), limit_oracle(n, memo)) << n;
  }
}

TEST(EvalFamily, NoetherianMatchesCompositions) {
  const std::map<std::uint64_t, MonomialIdeal> seeds = {{1, MonomialIdeal(2, {{1, 0}})},
                                                         {2, MonomialIdeal(2, {{1, 0}, {0, 2}})}};
  const auto spec = FamilySpec::noetherian(seeds);
  for (std::uint64_t n = 0; n <= 8; ++n) EXPECT_EQ(eval_family(spec, n), seeds_oracle(seeds, n, 2));
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<std::uint64_t, MonomialIdeal> s = {{1, oracle::random_ideal(rng, 2, 3, 3)},
                                                {3, oracle::random_ideal(rng, 2, 3, 3)}};
    const auto sp = FamilySpec::noetherian(s);
    for (std::uint64_t n = 1; n <= 7; ++n) EXPECT_EQ(eval_family(sp, n), seeds_oracle(s, n, 2));
  }
}

TEST(FamilyCache, MemoizesAndClears) {
  FamilyCache cache;
  const auto spec = FamilySpec::limit_recursive();
  const auto a = cache.eval(spec, {6});
  EXPECT_GE(cache.size(), 6u);
  EXPECT_EQ(cache.eval(spec, {6}), a);
  cache.clear();
  EXPECT_EQ(cache.size(), 0u);
  EXPECT_EQ(cache.eval(spec, {6}), a);
}

TEST(FamilyCache, ConcurrentEvaluationAgrees) {
  FamilyCache cache;
  const auto spec = FamilySpec::limit_recursive();
  std::vector<MonomialIdeal> results(8, MonomialIdeal::zero(2));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < results.size(); ++t) {
    pool.emplace_back([&, t] { results[t] = cache.eval(spec, {14 - t % 3}); });
  }
  for (auto& th : pool) th.join();
  FamilyCache fresh;
  for (std::size_t t = 0; t < results.size(); ++t) EXPECT_EQ(results[t], fresh.eval(spec, {14 - t % 3}));
}

TEST(CheckStructure, Examples) {
  const auto counter = check_structure(FamilySpec::counter(SequenceFormula::square), 20, StructureMode::graded);
  EXPECT_TRUE(counter.pass);
  EXPECT_FALSE(counter.violation);
  EXPECT_TRUE(check_structure(FamilySpec::limit_recursive(), 15, StructureMode::filtration).pass);
  const auto table = FamilySpec::table({MonomialIdeal::unit(1), MonomialIdeal(1, {{1}}), MonomialIdeal(1, {{3}})});
  const auto r = check_structure(table, 2, StructureMode::graded);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(*r.violation, (StructureViolation{StructureViolation::Kind::product, 1, 1}));
  EXPECT_THROW(check_structure(table, 1, StructureMode::graded), PreconditionError);
}

TEST(CheckStructure, FiltrationCatchesAscent) {
  // Graded, but I_3 = (x) is not inside I_2 = (x^2).
  const auto up = FamilySpec::table({MonomialIdeal::unit(1), MonomialIdeal(1, {{1}}), MonomialIdeal(1, {{2}}),
                                     MonomialIdeal(1, {{1}})});
  EXPECT_TRUE(check_structure(up, 3, StructureMode::graded).pass);
  const auto r = check_structure(up, 3, StructureMode::filtration);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(*r.violation, (StructureViolation{StructureViolation::Kind::descending, 2, 3}));
  EXPECT_TRUE(check_structure(FamilySpec::power(kCounter), 8, StructureMode::filtration).pass);
}

TEST(CheckStructure, PowersAlwaysPass) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = FamilySpec::power(oracle::random_ideal(rng, 2, 3, 3));
    EXPECT_TRUE(check_structure(spec, 8, StructureMode::filtration).pass);
  }
}

TEST(GenerationDegree, Examples) {
  EXPECT_EQ(generation_degree(FamilySpec::power(kCounter), 4, 4), 1u);
  EXPECT_FALSE(generation_degree(FamilySpec::counter(SequenceFormula::square), 4, 3));
  const std::map<std::uint64_t, MonomialIdeal> seeds = {{1, MonomialIdeal(2, {{1, 0}})},
                                                         {2, MonomialIdeal(2, {{1, 0}, {0, 2}})}};
  const auto spec = FamilySpec::noetherian(seeds);
  const auto a = generation_degree(spec, 4, 4);
  ASSERT_TRUE(a);
  // Brute force of the defining identity with the composition oracle.
  std::optional<std::uint64_t> expected;
  for (std::uint64_t cand = 1; cand <= 4 && !expected; ++cand) {
    bool ok = true;
    for (std::uint64_t r = 0; r < cand && ok; ++r) {
      for (std::uint64_t n = 1; n <= 4 && ok; ++n) {
        ok = seeds_oracle(seeds, cand * n + r, 2) ==
             multiply(power(seeds_oracle(seeds, cand, 2), n - 1), seeds_oracle(seeds, cand + r, 2));
      }
    }
    if (ok) expected = cand;
  }
  EXPECT_EQ(a, expected);
  EXPECT_EQ(*a, 2u);
}

TEST(GrowthConstants, Examples) {
  const auto p = growth_constants(FamilySpec::power(kCounter), 5);
  EXPECT_EQ(p.max_socle_degree, 14);
  EXPECT_EQ(p.minimal_c_linear, 3);
  const auto c = growth_constants(FamilySpec::counter(SequenceFormula::square), 6);
  EXPECT_EQ(c.max_socle_degree, 36);
  EXPECT_EQ(c.minimal_c_linear, 7);
  const auto s = growth_constants(FamilySpec::power(MonomialIdeal(2, {{1, 0}})), 4);
  EXPECT_EQ(s.max_socle_degree, 0);
  EXPECT_EQ(s.minimal_c_linear, 1);
  EXPECT_EQ(s.minimal_c_quadratic, 1);
}

TEST(GrowthConstants, MatchBruteForceSocleScan) {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (const auto& spec : {FamilySpec::power(kCounter), FamilySpec::counter(SequenceFormula::square),
                             FamilySpec::power(MonomialIdeal(3, {{1, 1, 0}, {0, 1, 1}, {2, 0, 0}}))}) {
      const auto report = growth_constants(spec, n);
      const int deg = oracle::max_socle_degree(eval_family(spec, n));
      EXPECT_EQ(report.max_socle_degree, std::max(deg, 0));
      // The identity holds at threshold t iff t > max socle degree, with an
      // empty socle counted as degree 0.
      const long long t = std::max(deg, 0) + 1;
      const long long nn = static_cast<long long>(n);
      EXPECT_EQ(report.minimal_c_linear, (t + nn - 1) / nn);
      EXPECT_EQ(report.minimal_c_quadratic, (t + nn * nn - 1) / (nn * nn));
    }
  }
}

TEST(Sandwich, ContainmentsAndSaturation) {
  const MonomialIdeal xy(2, {{1, 1}});
  for (std::uint64_t n = 2; n <= 10; ++n) {
    const auto lower = limit_sandwich_lower(n);
    const auto middle = eval_family(FamilySpec::limit_recursive(), n);
    const auto upper = limit_sandwich_upper(n);
    EXPECT_TRUE(is_subset(lower, middle));
    EXPECT_TRUE(is_subset(middle, upper));
    EXPECT_EQ(saturate(lower), xy);
    EXPECT_EQ(saturate(middle), xy);
    EXPECT_EQ(saturate(upper), xy);
  }
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(to_string(SequenceFormula::power_of_two), "2^n");
  EXPECT_EQ(to_string(HyperbolaVariant::upper), "upper");
  EXPECT_EQ(parse_structure_mode(to_string(StructureMode::filtration)), StructureMode::filtration);
  EXPECT_THROW(parse_structure_mode("weird"), ParseError);
}

}  // namespace
}  // namespace epsmult
