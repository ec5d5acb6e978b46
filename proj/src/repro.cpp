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

#include "epsmult/repro.hpp"

#include <cmath>

#include "epsmult/cohomology.hpp"
#include "epsmult/error.hpp"
#include "epsmult/families.hpp"
#include "epsmult/polyhedra.hpp"

namespace epsmult {

Natural hyperbola_ceil_sum(std::uint64_t n) {
  const Natural sq = Natural(n) * n;
  Natural sum = 0;
  for (std::uint64_t a = 1; a <= n; ++a) sum += (sq + a - 1) / a;
  return sum;
}

Natural hyperbola_sum_closed_form(std::uint64_t n) {
  const Natural nn = n;
  return 2 * hyperbola_ceil_sum(n) - (nn * nn + 2 * nn - 1);
}

Natural sandwich_lower_closed_form(std::uint64_t n) {
  const Natural nn = n;
  return 2 * hyperbola_ceil_sum(n) + 2 * (nn * nn + 1) - 6 * nn;
}

EpsilonFit fit_epsilon(const MonomialIdeal& ideal, std::uint64_t max_n, unsigned threads) {
  const std::size_t d = ideal.dim();
  const auto table = length_table(FamilySpec::power(ideal), IndexRange{{1}, {max_n}}, TableOptions{threads});
  FitOptions opts;
  opts.degree = d;
  for (std::uint64_t start = d + 1; start <= max_n; ++start) {
    opts.start = start;
    std::optional<QuasiPolynomial> fit;
    try {
      fit = fit_quasi_polynomial(table, opts);
    } catch (const NoFitError&) {
      continue;
    } catch (const InsufficientDataError&) {
      break;
    }
    EpsilonFit out{*fit, extract_epsilons(*fit, d), std::nullopt};
    opts.start = start + 1;
    try {
      out.stable = extract_epsilons(fit_quasi_polynomial(table, opts), d) == out.report;
    } catch (const NoFitError&) {
      out.stable = false;
    } catch (const InsufficientDataError&) {
    }
    return out;
  }
  throw NoFitError("no exact fit of l(R/I^n) for n <= " + std::to_string(max_n), {});
}

MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t d, unsigned max_exp, std::size_t max_gens) {
  std::uniform_int_distribution<std::size_t> count(1, max_gens);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  while (true) {
    std::vector<Monomial> gens;
    const std::size_t k = count(rng);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Natural> e(d);
      for (auto& x : e) x = exp(rng);
      gens.emplace_back(std::move(e));
    }
    MonomialIdeal ideal(d, std::move(gens));
    if (!ideal.is_unit()) return ideal;
  }
}

namespace {

Json counter_case(const ReproOptions& options, bool& pass) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<unsigned> value(0, 60);
  std::vector<Natural> list(30);
  for (auto& a : list) a = value(rng);
  std::vector<FamilySpec> specs = {FamilySpec::counter(SequenceFormula::square), FamilySpec::counter(SequenceFormula::cube),
                                   FamilySpec::counter(list)};
  Json families = Json::array();
  for (const auto& spec : specs) {
    const auto& rule = std::get<CounterRule>(spec.rule());
    const auto table = length_table(spec, IndexRange{{1}, {30}}, TableOptions{options.threads});
    bool ok = true;
    Json lengths = Json::array();
    for (const auto& [n, len] : table.entries) {
      ok = ok && len == rule.term(n[0]);
      lengths.push_back(to_json(len));
    }
    pass = pass && ok;
    families.push_back(Json{{"spec", to_json(spec)}, {"lengths", std::move(lengths)}, {"pass", ok}});
  }
  return Json{{"families", std::move(families)}, {"range", "1:30"}};
}

Json limit_case(const ReproOptions& options, bool& pass) {
  H0Options staircase;
  staircase.method = H0Method::staircase;

  bool closed_ok = true;
  Json closed = Json::array();
  const auto sum_spec = FamilySpec::hyperbola(HyperbolaVariant::sum);
  for (std::uint64_t n = 1; n <= 40; ++n) {
    const auto direct = h0_length(eval_family(sum_spec, n), staircase).length;
    const auto formula = hyperbola_sum_closed_form(n);
    closed_ok = closed_ok && direct == formula;
    closed.push_back(Json{{"n", n}, {"direct", to_json(direct)}, {"formula", to_json(formula)}});
  }

  Json erratum = Json::array();
  for (std::uint64_t n = 1; n <= 6; ++n) {
    const auto direct = h0_length(limit_sandwich_lower(n)).length;
    const auto formula = sandwich_lower_closed_form(n);
    erratum.push_back(Json{{"n", n}, {"direct", to_json(direct)}, {"formula", to_json(formula)},
                           {"flagged", direct != formula}});
  }

  bool sandwich_ok = true;
  Json sandwich = Json::array();
  const auto xy = MonomialIdeal(2, {{1, 1}});
  const auto limit = FamilySpec::limit_recursive();
  for (std::uint64_t n = 2; n <= 25; ++n) {
    const auto lower = limit_sandwich_lower(n);
    const auto middle = eval_family(limit, n);
    const auto upper = limit_sandwich_upper(n);
    const bool contained = is_subset(lower, middle) && is_subset(middle, upper);
    const bool saturated = saturate(lower) == xy && saturate(middle) == xy && saturate(upper) == xy;
    const auto l_lower = h0_length(lower, staircase).length;
    const auto l_middle = h0_length(middle, staircase).length;
    const auto l_upper = h0_length(upper, staircase).length;
    const bool ordered = l_lower >= l_middle && l_middle >= l_upper;
    sandwich_ok = sandwich_ok && contained && saturated && ordered;
    sandwich.push_back(Json{{"n", n},
                            {"contained", contained},
                            {"saturations_xy", saturated},
                            {"lengths", {to_json(l_lower), to_json(l_middle), to_json(l_upper)}}});
  }

  const Normalizer norm = Normalizer::parse("n^2*ln(n)");
  Json trend = Json::array();
  std::vector<double> values;
  for (std::uint64_t n : {25, 50, 100}) {
    const auto len = h0_length(eval_family(limit, n), staircase).length;
    values.push_back(to_double(Rational(len)) / norm(static_cast<double>(n)));
    trend.push_back(Json{{"n", n}, {"length", to_json(len)}, {"value", values.back()}});
  }
  const bool trend_ok = values[0] > values[1] && values[1] > values[2] && values[2] >= 2.0 && values[2] <= 2.6;
  (void)options;

  pass = pass && closed_ok && sandwich_ok && trend_ok;
  return Json{{"closed_form", Json{{"pass", closed_ok}, {"values", std::move(closed)}}},
              {"lower_closed_form_erratum", std::move(erratum)},
              {"sandwich", Json{{"pass", sandwich_ok}, {"values", std::move(sandwich)}}},
              {"normalized", Json{{"normalizer", norm.to_string()}, {"pass", trend_ok}, {"values", std::move(trend)}}}};
}

Json jm_entry(const MonomialIdeal& ideal, const ReproOptions& options, bool& pass) {
  Json entry{{"ideal", to_string(ideal)}};
  const auto volume = out_region(ideal);
  const auto spread = analytic_spread(ideal);
  entry["volume_epsilon"] = to_json(volume.epsilon);
  entry["analytic_spread"] = spread;
  try {
    const auto fit = fit_epsilon(ideal, 12, options.threads);
    const bool agree = fit.report.epsilon == volume.epsilon;
    const bool positive = (volume.epsilon > 0) == (spread == ideal.dim());
    entry["fit_epsilon"] = to_json(fit.report.epsilon);
    entry["fit_start"] = fit.fit.start();
    entry["fit_period"] = fit.fit.period();
    entry["stable"] = fit.stable ? Json(*fit.stable) : Json(nullptr);
    entry["pass"] = agree && positive && fit.stable.value_or(true);
  } catch (const NoFitError&) {
    entry["fit_epsilon"] = nullptr;
    entry["pass"] = false;
  }
  pass = pass && entry["pass"].get<bool>();
  return entry;
}

Json jm_case(const ReproOptions& options, bool& pass) {
  Json fixed = Json::array();
  for (const auto& ideal : {MonomialIdeal(2, {{1, 2}, {2, 0}}), MonomialIdeal(2, {{2, 0}, {0, 2}}), MonomialIdeal(2, {{1, 0}})}) {
    fixed.push_back(jm_entry(ideal, options, pass));
  }
  std::mt19937_64 rng(options.seed);
  Json random = Json::array();
  for (int i = 0; i < 25; ++i) random.push_back(jm_entry(random_ideal(rng, 2, 5, 4), options, pass));
  return Json{{"fixed", std::move(fixed)}, {"random", std::move(random)}, {"seed", options.seed}};
}

Json mixed_case(const ReproOptions& options, bool& pass) {
  const MonomialIdeal ideal(2, {{1, 2}, {2, 0}});
  const auto table = length_table(FamilySpec::product_grid({ideal, ideal}), IndexRange{{1, 1}, {8, 8}},
                                  TableOptions{options.threads});
  FitOptions opts;
  opts.degree = 2;
  const auto fit = fit_quasi_polynomial(table, opts);
  const auto report = extract_epsilons(fit, 2);
  const std::map<Exponents, Rational> expected = {{{2, 0}, 2}, {{1, 1}, 2}, {{0, 2}, 2}};
  bool top_ok = true;
  for (std::uint64_t r1 = 0; r1 < fit.period(); ++r1) {
    for (std::uint64_t r2 = 0; r2 < fit.period(); ++r2) {
      top_ok = top_ok && fit.coefficient({r1, r2}, {2, 0}) == 1 && fit.coefficient({r1, r2}, {1, 1}) == 2 &&
               fit.coefficient({r1, r2}, {0, 2}) == 1;
    }
  }
  const bool ok = top_ok && report.mixed == expected;
  pass = pass && ok;
  return Json{{"fit", to_json(fit)}, {"epsilons", to_json(report)}, {"top_form_is_square", top_ok}, {"pass", ok}};
}

Json irrational_case(const ReproOptions& options, bool& pass) {
  const auto spec = FamilySpec::sqrt_principal(2);
  const std::uint64_t n = 10000;
  const Natural len = h0_length(eval_family(spec, n)).length;
  const Natural two_n2 = 2 * Natural(n) * n;
  const bool below = len <= 2 || (len - 2) * (len - 2) <= two_n2;
  const bool above = two_n2 <= (len + 2) * (len + 2);
  const auto table = length_table(spec, IndexRange{{1}, {200}}, TableOptions{options.threads});
  const auto report = convergence_report(table, Normalizer::parse("n"));
  const bool ok = below && above;
  pass = pass && ok;
  return Json{{"n", n},
              {"length", to_json(len)},
              {"bound", "(l-2)^2 <= 2n^2 <= (l+2)^2"},
              {"pass", ok},
              {"convergence", to_json(report)}};
}

}  // namespace

const std::vector<std::string>& repro_cases() {
  static const std::vector<std::string> cases = {"example-counter", "example-limit", "jm-volume", "mixed-grid",
                                                 "irrational"};
  return cases;
}

ReproResult run_repro(std::string_view name, const ReproOptions& options) {
  ReproResult result{std::string(name), true, {}};
  if (name == "example-counter") {
    result.report = counter_case(options, result.pass);
  } else if (name == "example-limit") {
    result.report = limit_case(options, result.pass);
  } else if (name == "jm-volume") {
    result.report = jm_case(options, result.pass);
  } else if (name == "mixed-grid") {
    result.report = mixed_case(options, result.pass);
  } else if (name == "irrational") {
    result.report = irrational_case(options, result.pass);
  } else {
    throw PreconditionError("unknown repro case '" + std::string(name) + "'");
  }
  result.report["case"] = result.name;
  result.report["pass"] = result.pass;
  return result;
}

}  // namespace epsmult
