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
#include <optional>
#include <string>
#include <vector>

#include "epsmult/ideal.hpp"
#include "epsmult/numeric.hpp"

namespace epsmult {

// A subset of the ground set {0, ..., n-1} as a bitmask.
using Face = std::uint32_t;

// Abstract simplicial complex on {0, ..., n-1}. The void complex has no
// faces; the irrelevant complex {∅} has only the empty face.
class SimplicialComplex {
 public:
  // Throws PreconditionError unless `faces` is downward closed.
  SimplicialComplex(std::size_t ground, std::vector<Face> faces);

  static SimplicialComplex void_complex(std::size_t ground);
  static SimplicialComplex irrelevant(std::size_t ground);
  // Downward closure of the given faces.
  static SimplicialComplex from_facets(std::size_t ground, const std::vector<Face>& facets);

  std::size_t ground_size() const { return ground_; }
  // Sorted by (cardinality, mask).
  const std::vector<Face>& faces() const { return faces_; }
  bool is_void() const { return faces_.empty(); }
  bool is_irrelevant() const { return faces_.size() == 1 && faces_.front() == 0; }
  bool contains(Face f) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  std::size_t ground_;
  std::vector<Face> faces_;
};

std::string to_string(const SimplicialComplex& k);

// Rank over Q of the q-th reduced homology group, q >= -1.
std::size_t reduced_betti(const SimplicialComplex& k, int q);

enum class H0Method { box, staircase, takayama };

std::string to_string(H0Method m);
H0Method parse_h0_method(std::string_view s);

struct H0Count {
  Natural length;
  H0Method method = H0Method::box;
  // Lattice points of sat(I) \ I, lexicographically sorted.
  std::optional<std::vector<Monomial>> witnesses;

  friend bool operator==(const H0Count&, const H0Count&) = default;
};

struct H0Options {
  H0Method method = H0Method::box;
  bool witnesses = false;
  unsigned threads = 1;
  // Upper bound on the number of lattice points a box scan may visit.
  std::uint64_t max_box_points = std::uint64_t{1} << 31;
};

// Length of H^0_m(R/I) = #(sat(I) \ I). The unit ideal has length 0.
H0Count h0_length(const MonomialIdeal& ideal, const H0Options& options = {});

// Length of H^0_m(J/Jsub) = #(sat(Jsub) ∩ J \ Jsub) for Jsub ⊆ J.
H0Count h0_of_quotient(const MonomialIdeal& j, const MonomialIdeal& jsub,
                       const H0Options& options = {});

// {F : X^a ∉ I_F}.
SimplicialComplex delta_complex(const MonomialIdeal& ideal, const Monomial& a);

// dim_K H^t_m(R/I)_a via the reduced homology of the degree-a complex.
std::size_t local_cohomology_graded_dim(const MonomialIdeal& ideal, const Monomial& a, int t);

// Sum over the enumeration box of dim H^0_m(R/I)_a, computed from Δ_a.
H0Count h0_length_takayama(const MonomialIdeal& ideal, const H0Options& options = {});

// Largest total degree of a point of sat(I) \ I; nullopt when that set is empty.
std::optional<Natural> max_socle_degree(const MonomialIdeal& ideal, const H0Options& options = {});

}  // namespace epsmult
