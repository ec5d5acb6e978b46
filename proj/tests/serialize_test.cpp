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

#include "epsmult/serialize.hpp"

#include <random>

#include <gtest/gtest.h>

#include "epsmult/error.hpp"
#include "oracles.hpp"

namespace epsmult {
namespace {

const MonomialIdeal kCounter(2, {{1, 2}, {2, 0}});

// Parsing the dump and dumping again must be byte-identical.
template <class T, class F>
void expect_round_trip(const T& value, F from_json) {
  const std::string text = to_json(value).dump();
  const T back = from_json(Json::parse(text));
  EXPECT_EQ(back, value) << text;
  EXPECT_EQ(to_json(back).dump(), text);
}

TEST(Serialize, Scalars) {
  EXPECT_EQ(to_json(Rational(4)).dump(), "\"4/1\"");
  EXPECT_EQ(to_json(Natural(12)).dump(), "12");
  const Natural big = Natural(1) << 100;
  EXPECT_EQ(to_json(big).dump(), "\"" + to_string(big) + "\"");
  EXPECT_EQ(natural_from_json(to_json(big)), big);
  EXPECT_EQ(rational_from_json(Json("-3/6")), Rational(-1, 2));
  EXPECT_THROW(rational_from_json(Json(1.5)), ParseError);
  EXPECT_THROW(natural_from_json(Json("x")), ParseError);
}

TEST(Serialize, Ideals) {
  EXPECT_EQ(to_json(kCounter).dump(), R"({"d":2,"generators":[[1,2],[2,0]]})");
  EXPECT_EQ(ideal_from_json(Json::parse("[[1,2],[2,0]]")), kCounter);
  EXPECT_EQ(ideal_from_json(Json("x*y^2, x^2")), kCounter);
  EXPECT_TRUE(ideal_from_json(Json::parse(R"({"d":3,"generators":[]})")).is_zero());
  EXPECT_THROW(ideal_from_json(Json::array()), ParseError);
  EXPECT_THROW(ideal_from_json(Json::parse(R"({"d":3,"generators":[]})"), 2), DimensionMismatch);
  std::mt19937_64 rng(83);
  for (int i = 0; i < 50; ++i) expect_round_trip(oracle::random_ideal(rng, 1 + i % 4, 5, 5, false), [](const Json& j) {
    return ideal_from_json(j);
  });
}

TEST(Serialize, CohomologyReports) {
  H0Options o;
  o.witnesses = true;
  expect_round_trip(h0_length(power(kCounter, 3), o), h0_count_from_json);
  expect_round_trip(h0_length(kCounter), h0_count_from_json);
  EXPECT_EQ(to_json(h0_length(kCounter)).dump(), R"({"length":2,"method":"box-enumeration"})");
  expect_round_trip(SimplicialComplex::from_facets(3, {0b011, 0b100}), simplicial_complex_from_json);
  expect_round_trip(SimplicialComplex::void_complex(2), simplicial_complex_from_json);
  EXPECT_THROW(simplicial_complex_from_json(Json::parse(R"({"ground":2,"faces":[[0,1]]})")), ParseError);
}

TEST(Serialize, PolyhedraReports) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 20; ++i) {
    const auto ideal = oracle::random_ideal(rng, 2 + i % 2, 4, 4);
    expect_round_trip(newton_polyhedron(ideal), newton_polyhedron_from_json);
    expect_round_trip(out_region(ideal), out_region_from_json);
  }
  EXPECT_EQ(to_json(out_region(kCounter)).dump(), R"({"box_bound":"5/1","epsilon":"2/1","volume":"1/1"})");
}

TEST(Serialize, FamilySpecs) {
  const std::vector<std::pair<std::string, FamilySpec>> cases = {
      {R"({"d":2,"rule":{"type":"counter","a":"n^2"}})", FamilySpec::counter(SequenceFormula::square)},
      {R"({"rule":{"type":"counter","a":[5,7,11]}})", FamilySpec::counter(std::vector<Natural>{5, 7, 11})},
      {R"({"rule":{"type":"power","ideal":[[1,2],[2,0]]}})", FamilySpec::power(kCounter)},
      {R"({"d":2,"rule":{"type":"power","ideal":"x*y^2, x^2"}})", FamilySpec::power(kCounter)},
      {R"({"rule":{"type":"limit_recursive"}})", FamilySpec::limit_recursive()},
      {R"({"rule":{"type":"hyperbola","variant":"lower"}})", FamilySpec::hyperbola(HyperbolaVariant::lower)},
      {R"({"rule":{"type":"sqrt","k":2}})", FamilySpec::sqrt_principal(2)},
      {R"({"d":2,"rule":{"type":"noetherian","seeds":{"1":[[1,0]],"2":[[1,0],[0,2]]}}})",
       FamilySpec::noetherian({{1, MonomialIdeal(2, {{1, 0}})}, {2, MonomialIdeal(2, {{1, 0}, {0, 2}})}})},
      {R"({"d":1,"rule":{"type":"table","ideals":[[[0]],[[1]],[[3]]]}})",
       FamilySpec::table({MonomialIdeal::unit(1), MonomialIdeal(1, {{1}}), MonomialIdeal(1, {{3}})})},
      {R"({"rule":{"type":"product_grid","ideals":[[[1,2],[2,0]],[[1,0]]]}})",
       FamilySpec::product_grid({kCounter, MonomialIdeal(2, {{1, 0}})})},
  };
  for (const auto& [text, spec] : cases) {
    const auto parsed = parse_family_spec(text);
    EXPECT_EQ(parsed.key(), spec.key()) << text;
    EXPECT_EQ(parse_family_spec(to_json_text(parsed)).key(), spec.key());
  }
  EXPECT_THROW(parse_family_spec("{"), ParseError);
  EXPECT_THROW(parse_family_spec(R"({"rule":{"type":"spiral"}})"), ParseError);
  EXPECT_THROW(parse_family_spec(R"({"d":3,"rule":{"type":"counter","a":"n^2"}})"), PreconditionError);
  EXPECT_THROW(parse_family_spec(R"({"rule":{"type":"counter","a":"n^4"}})"), ParseError);
  EXPECT_THROW(parse_family_spec(R"({"rule":{"type":"sqrt","k":9}})"), PreconditionError);
  EXPECT_THROW(parse_family_spec(R"({"rule":{"type":"noetherian","seeds":{"one":[[1]]}}})"), ParseError);
  EXPECT_THROW(parse_family_spec(R"({"rule":{}})"), ParseError);
}

TEST(Serialize, FamilyReports) {
  expect_round_trip(check_structure(FamilySpec::counter(SequenceFormula::square), 6, StructureMode::graded),
                    structure_report_from_json);
  const auto table = FamilySpec::table({MonomialIdeal::unit(1), MonomialIdeal(1, {{1}}), MonomialIdeal(1, {{3}})});
  const auto fail = check_structure(table, 2, StructureMode::filtration);
  expect_round_trip(fail, structure_report_from_json);
  EXPECT_EQ(to_json(fail).dump(), R"({"N":2,"mode":"filtration","pass":false,"violation":{"kind":"product","m":1,"n":1}})");
  expect_round_trip(growth_constants(FamilySpec::counter(SequenceFormula::square), 6), growth_report_from_json);
}

TEST(Serialize, AsymptoticsReports) {
  const auto t = length_table(FamilySpec::power(kCounter), IndexRange{{1}, {10}});
  expect_round_trip(t, length_table_from_json);
  FitOptions o;
  o.degree = 2;
  const auto q = fit_quasi_polynomial(t, o);
  expect_round_trip(q, quasi_polynomial_from_json);
  expect_round_trip(extract_epsilons(q, 2), epsilon_report_from_json);
  const auto grid = length_table(FamilySpec::product_grid({kCounter, kCounter}), IndexRange::parse("1:5", 2));
  expect_round_trip(grid, length_table_from_json);
  const auto gq = fit_quasi_polynomial(grid, o);
  expect_round_trip(gq, quasi_polynomial_from_json);
  expect_round_trip(extract_epsilons(gq, 2), epsilon_report_from_json);
  // Doubles survive the text form bit for bit.
  const auto sq = length_table(FamilySpec::sqrt_principal(2), IndexRange{{1}, {50}});
  expect_round_trip(convergence_report(sq, Normalizer::parse("n^(3/2)*ln(n)")), convergence_report_from_json);
  expect_round_trip(convergence_report(t, Normalizer::parse("n^2")), convergence_report_from_json);
}

TEST(Serialize, DumpsAreDeterministic) {
  const auto a = to_json(length_table(FamilySpec::limit_recursive(), IndexRange{{1}, {8}})).dump();
  const auto b = to_json(length_table(FamilySpec::limit_recursive(), IndexRange{{1}, {8}}, TableOptions{4})).dump();
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace epsmult
