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

#include "epsmult/polyhedra.hpp"

#include <random>

#include <gtest/gtest.h>

#include "epsmult/error.hpp"
#include "oracles.hpp"

namespace epsmult {
namespace {

const MonomialIdeal kCounter(2, {{1, 2}, {2, 0}});

Facet facet(std::vector<Natural> normal, Natural offset) { return Facet{std::move(normal), std::move(offset)}; }

RationalVector point(std::initializer_list<long long> v) {
  RationalVector out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

bool satisfies(const Facet& f, const RationalVector& p) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += Rational(f.normal[i]) * p[i];
  return s >= Rational(f.offset);
}

TEST(NewtonPolyhedron, Examples) {
  const auto np = newton_polyhedron(kCounter);
  EXPECT_EQ(np.vertices, (std::vector<RationalVector>{point({1, 2}), point({2, 0})}));
  EXPECT_EQ(np.facets, (std::vector<Facet>{facet({0, 1}, 0), facet({1, 0}, 1), facet({2, 1}, 4)}));

  const auto line = newton_polyhedron(MonomialIdeal(2, {{1, 0}}));
  EXPECT_EQ(line.vertices, (std::vector<RationalVector>{point({1, 0})}));
  EXPECT_EQ(line.facets, (std::vector<Facet>{facet({0, 1}, 0), facet({1, 0}, 1)}));

  const auto simplex = newton_polyhedron(MonomialIdeal(2, {{2, 0}, {0, 2}}));
  EXPECT_EQ(simplex.vertices, (std::vector<RationalVector>{point({0, 2}), point({2, 0})}));
  EXPECT_EQ(simplex.facets, (std::vector<Facet>{facet({0, 1}, 0), facet({1, 0}, 0), facet({1, 1}, 2)}));

  EXPECT_THROW(newton_polyhedron(MonomialIdeal::zero(2)), PreconditionError);
  EXPECT_THROW(newton_polyhedron(MonomialIdeal::unit(2)), PreconditionError);
}

TEST(NewtonPolyhedron, InteriorPointDropsOut) {
  // (2,2) lies above the segment from (0,4) to (4,0).
  const auto np = newton_polyhedron(MonomialIdeal(2, {{0, 4}, {2, 2}, {4, 0}}));
  EXPECT_EQ(np.vertices.size(), 2u);
  const auto bent = newton_polyhedron(MonomialIdeal(2, {{0, 4}, {1, 1}, {4, 0}}));
  EXPECT_EQ(bent.vertices.size(), 3u);
}

TEST(AnalyticSpread, Examples) {
  EXPECT_EQ(analytic_spread(kCounter), 2u);
  EXPECT_EQ(analytic_spread(MonomialIdeal(2, {{1, 0}})), 1u);
  EXPECT_EQ(analytic_spread(MonomialIdeal(2, {{1, 1}})), 1u);
  EXPECT_EQ(analytic_spread(MonomialIdeal(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
  EXPECT_EQ(analytic_spread(MonomialIdeal(3, {{1, 1, 0}, {0, 1, 1}})), 2u);
}

TEST(OutRegion, Examples) {
  const auto a = out_region(kCounter);
  EXPECT_EQ(a.volume, 1);
  EXPECT_EQ(a.epsilon, 2);
  const auto b = out_region(MonomialIdeal(2, {{2, 0}, {0, 2}}));
  EXPECT_EQ(b.volume, 2);
  EXPECT_EQ(b.epsilon, 4);
  const auto c = out_region(MonomialIdeal(2, {{1, 0}}));
  EXPECT_EQ(c.volume, 0);
  EXPECT_EQ(c.epsilon, 0);
  // m-primary in three variables: epsilon is the multiplicity, 2*2*2.
  EXPECT_EQ(out_region(MonomialIdeal(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})).epsilon, 8);
}

TEST(PolytopeVolume, Basics) {
  // Unit square as x >= 0, y >= 0, -x >= -1, -y >= -1.
  std::vector<HalfSpace> square = {{point({1, 0}), 0}, {point({0, 1}), 0}, {point({-1, 0}), -1}, {point({0, -1}), -1}};
  EXPECT_EQ(polytope_volume(2, square), 1);
  // Standard simplex in three variables.
  std::vector<HalfSpace> simplex = {
      {point({1, 0, 0}), 0}, {point({0, 1, 0}), 0}, {point({0, 0, 1}), 0}, {point({-1, -1, -1}), -1}};
  EXPECT_EQ(polytope_volume(3, simplex), Rational(1, 6));
  // Flat: x >= 0, -x >= 0, y in [0, 1].
  std::vector<HalfSpace> flat = {{point({1, 0}), 0}, {point({-1, 0}), 0}, {point({0, 1}), 0}, {point({0, -1}), -1}};
  EXPECT_EQ(polytope_volume(2, flat), 0);
  // Empty.
  std::vector<HalfSpace> empty = {{point({1}), 2}, {point({-1}), -1}};
  EXPECT_EQ(polytope_volume(1, empty), 0);
}

TEST(PolyhedraProperty, FacetsAndVerticesAreConsistent) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const auto ideal = oracle::random_ideal(rng, d, 5, 5);
    const auto np = newton_polyhedron(ideal);
    ASSERT_EQ(np.incidence.size(), np.facets.size());
    for (const auto& f : np.facets) {
      // Primitive and nonnegative; bounded exactly when strictly positive.
      Natural g = 0;
      bool positive = true;
      for (const auto& x : f.normal) {
        EXPECT_GE(x, 0);
        g = boost::multiprecision::gcd(g, x);
        positive = positive && x > 0;
      }
      EXPECT_EQ(g, 1);
      EXPECT_EQ(f.bounded(), positive);
      for (const auto& gen : ideal.generators()) {
        RationalVector p(gen.exponents().begin(), gen.exponents().end());
        EXPECT_TRUE(satisfies(f, p));
      }
    }
    for (std::size_t v = 0; v < np.vertices.size(); ++v) {
      RationalMatrix tight;
      for (std::size_t f = 0; f < np.facets.size(); ++f) {
        if (np.incidence[f][v]) {
          tight.emplace_back(np.facets[f].normal.begin(), np.facets[f].normal.end());
        }
      }
      EXPECT_EQ(rank(tight), d);
    }
  }
}

TEST(PolyhedraProperty, Area2DMatchesHullOracle) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const auto ideal = oracle::random_ideal(rng, 2, 6, 5);
    const auto r = out_region(ideal);
    EXPECT_EQ(r.volume, oracle::out_area_2d(ideal)) << to_string(ideal);
    EXPECT_EQ(r.epsilon, 2 * r.volume);
    EXPECT_GE(r.epsilon, 0);
  }
}

TEST(PolyhedraProperty, PositivityMatchesSpread) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const auto ideal = oracle::random_ideal(rng, d, 4, 5);
    EXPECT_EQ(out_region(ideal).epsilon > 0, analytic_spread(ideal) == d) << to_string(ideal);
  }
}

TEST(PolyhedraProperty, EpsilonScalesWithPowers) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const auto ideal = oracle::random_ideal(rng, d, 3, 4);
    const auto base = out_region(ideal).epsilon;
    for (std::uint64_t k : {2, 3}) {
      Rational scale = 1;
      for (std::size_t i = 0; i < d; ++i) scale *= k;
      EXPECT_EQ(out_region(power(ideal, k)).epsilon, scale * base);
    }
  }
}

TEST(PolyhedraProperty, BoundedFacesHaveNoRays) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ideal = oracle::random_ideal(rng, 3, 4, 5);
    const auto np = newton_polyhedron(ideal);
    for (const auto& f : faces(np)) {
      EXPECT_FALSE(f.vertices.empty());
      EXPECT_LT(f.dimension, 3u);
      if (f.bounded()) EXPECT_LE(f.dimension + 1, f.vertices.size());
    }
  }
}

}  // namespace
}  // namespace epsmult
