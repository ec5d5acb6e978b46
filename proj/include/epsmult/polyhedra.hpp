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
#include <vector>

#include "epsmult/ideal.hpp"
#include "epsmult/numeric.hpp"

namespace epsmult {

// <normal, u> >= offset with a primitive nonnegative integer normal.
struct Facet {
  std::vector<Natural> normal;
  Natural offset;

  // A facet of a Newton polyhedron is bounded iff its normal is strictly positive.
  bool bounded() const;

  friend bool operator==(const Facet&, const Facet&) = default;
};

// conv(exponents) + R^d_{>=0}, in both representations.
struct NewtonPolyhedron {
  std::size_t dim = 0;
  std::vector<RationalVector> vertices;  // lexicographically sorted
  std::vector<Facet> facets;             // sorted by (normal, offset)
  // incidence[f][v]: vertex v lies on facet f.
  std::vector<std::vector<bool>> incidence;

  friend bool operator==(const NewtonPolyhedron&, const NewtonPolyhedron&) = default;
};

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& ideal);

// A face of a Newton polyhedron: the vertices it contains and the
// coordinate rays of its recession cone.
struct PolyhedronFace {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> rays;
  std::size_t dimension = 0;

  bool bounded() const { return rays.empty(); }
};

// Every nonempty proper face, obtained as intersections of facets.
std::vector<PolyhedronFace> faces(const NewtonPolyhedron& np);

// 1 + the largest dimension of a bounded face.
std::size_t analytic_spread(const MonomialIdeal& ideal);

struct OutRegionReport {
  Rational volume;
  Rational epsilon;    // d! * volume
  Rational box_bound;  // M with out(I) inside [0, M)^d

  friend bool operator==(const OutRegionReport&, const OutRegionReport&) = default;
};

// Volume of the region cut out by the facets with a zero normal coordinate
// minus the Newton polyhedron itself.
OutRegionReport out_region(const MonomialIdeal& ideal);

// A polytope {x : <a_i, x> >= b_i}.
struct HalfSpace {
  RationalVector normal;
  Rational offset;
};

// Exact volume of a bounded H-polytope; lower-dimensional or empty gives 0.
Rational polytope_volume(std::size_t d, const std::vector<HalfSpace>& constraints);

}  // namespace epsmult
