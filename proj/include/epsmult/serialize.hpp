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

#include <optional>

#include "json.hpp"

#include "epsmult/asymptotics.hpp"
#include "epsmult/cohomology.hpp"
#include "epsmult/families.hpp"
#include "epsmult/ideal.hpp"
#include "epsmult/numeric.hpp"
#include "epsmult/polyhedra.hpp"

// JSON forms of every report. Rationals are "p/q" strings; naturals are
// numbers when they fit in 64 bits and decimal strings otherwise. Object
// keys are sorted, so dump() is canonical. Every *_from_json inverts the
// matching to_json exactly and throws ParseError on malformed input.
namespace epsmult {

using Json = nlohmann::json;

Json to_json(const Natural& n);
Natural natural_from_json(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);

// [[1,2],[2,0]]; the zero ideal is [].
Json generators_to_json(const MonomialIdeal& ideal);
// {"d": 2, "generators": [[1,2],[2,0]]}
Json to_json(const MonomialIdeal& ideal);
// Accepts the object form, a generator array, or ideal text.
MonomialIdeal ideal_from_json(const Json& j, std::optional<std::size_t> dim = std::nullopt);

Json to_json(const H0Count& c);
H0Count h0_count_from_json(const Json& j);

Json to_json(const SimplicialComplex& k);
SimplicialComplex simplicial_complex_from_json(const Json& j);

Json to_json(const Facet& f);
Facet facet_from_json(const Json& j);

Json to_json(const NewtonPolyhedron& np);
NewtonPolyhedron newton_polyhedron_from_json(const Json& j);

Json to_json(const OutRegionReport& r);
OutRegionReport out_region_from_json(const Json& j);

Json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);

Json to_json(const StructureReport& r);
StructureReport structure_report_from_json(const Json& j);

Json to_json(const GrowthReport& r);
GrowthReport growth_report_from_json(const Json& j);

Json to_json(const LengthTable& t);
LengthTable length_table_from_json(const Json& j);

Json to_json(const QuasiPolynomial& q);
QuasiPolynomial quasi_polynomial_from_json(const Json& j);

Json to_json(const EpsilonReport& r);
EpsilonReport epsilon_report_from_json(const Json& j);

Json to_json(const ConvergenceReport& r);
ConvergenceReport convergence_report_from_json(const Json& j);

}  // namespace epsmult
