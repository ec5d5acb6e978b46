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

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <utility>

#include "epsmult/cohomology.hpp"
#include "epsmult/error.hpp"
#include "epsmult/serialize.hpp"

namespace epsmult {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Natural ceil_div(const Natural& a, const Natural& b) { return (a + b - 1) / b; }

void require_dim(std::size_t d, std::size_t want, const char* rule) {
  if (d != want) {
    throw PreconditionError(std::string(rule) + " families live in " + std::to_string(want) +
                            " variables");
  }
}

void require_ideal_dim(const MonomialIdeal& ideal, std::size_t d) {
  if (ideal.dim() != d) throw DimensionMismatch("family ideal dimension differs from the family");
}

}  // namespace

Natural CounterRule::term(std::uint64_t n) const {
  if (n == 0) throw PreconditionError("the counter sequence starts at n = 1");
  if (const auto* list = std::get_if<std::vector<Natural>>(&sequence)) {
    if (n > list->size()) {
      throw PreconditionError("counter sequence has only " + std::to_string(list->size()) +
                              " terms, index " + std::to_string(n) + " requested");
    }
    return (*list)[n - 1];
  }
  Natural nn = n;
  switch (std::get<SequenceFormula>(sequence)) {
    case SequenceFormula::square: return nn * nn;
    case SequenceFormula::cube: return nn * nn * nn;
    case SequenceFormula::power_of_two: return Natural(1) << n;
  }
  throw PreconditionError("unknown sequence formula");
}

FamilySpec::FamilySpec(std::size_t d, FamilyRule rule) : d_(d), rule_(std::move(rule)) {
  AmbientRing ring(d);
  std::visit(overloaded{
                 [&](const PowerRule& r) { require_ideal_dim(r.ideal, d); },
                 [&](const ProductGridRule& r) {
                   if (r.ideals.empty()) throw PreconditionError("product grid needs at least one ideal");
                   for (const auto& i : r.ideals) require_ideal_dim(i, d);
                 },
                 [&](const CounterRule& r) {
                   require_dim(d, 2, "counter");
                   if (const auto* list = std::get_if<std::vector<Natural>>(&r.sequence)) {
                     for (const auto& a : *list) {
                       if (a < 0) throw PreconditionError("counter sequence must be nonnegative");
                     }
                   }
                 },
                 [&](const SqrtPrincipalRule& r) {
                   require_dim(d, 1, "sqrt-principal");
                   if (r.k <= 0 || is_perfect_square(r.k)) {
                     throw PreconditionError("sqrt-principal needs a positive non-square k");
                   }
                 },
                 [&](const HyperbolaRule&) { require_dim(d, 2, "hyperbola"); },
                 [&](const LimitRecursiveRule&) { require_dim(d, 2, "limit-recursive"); },
                 [&](const NoetherianSeedsRule& r) {
                   if (r.seeds.empty()) throw PreconditionError("noetherian family needs seeds");
                   for (const auto& [deg, ideal] : r.seeds) {
                     if (deg == 0) throw PreconditionError("seed degrees must be positive");
                     require_ideal_dim(ideal, d);
                   }
                 },
                 [&](const TableRule& r) {
                   if (r.ideals.empty() || !r.ideals.front().is_unit()) {
                     throw PreconditionError("a family table must start with I_0 = R");
                   }
                   for (const auto& i : r.ideals) require_ideal_dim(i, d);
                 },
             },
             rule_);
  key_ = to_json(*this).dump();
}

FamilySpec FamilySpec::power(MonomialIdeal ideal) {
  const std::size_t d = ideal.dim();
  return FamilySpec(d, PowerRule{std::move(ideal)});
}

FamilySpec FamilySpec::product_grid(std::vector<MonomialIdeal> ideals) {
  if (ideals.empty()) throw PreconditionError("product grid needs at least one ideal");
  const std::size_t d = ideals.front().dim();
  return FamilySpec(d, ProductGridRule{std::move(ideals)});
}

FamilySpec FamilySpec::counter(std::vector<Natural> sequence) {
  return FamilySpec(2, CounterRule{std::move(sequence)});
}

FamilySpec FamilySpec::counter(SequenceFormula formula) { return FamilySpec(2, CounterRule{formula}); }

FamilySpec FamilySpec::sqrt_principal(Natural k) { return FamilySpec(1, SqrtPrincipalRule{std::move(k)}); }

FamilySpec FamilySpec::hyperbola(HyperbolaVariant variant) { return FamilySpec(2, HyperbolaRule{variant}); }

FamilySpec FamilySpec::limit_recursive() { return FamilySpec(2, LimitRecursiveRule{}); }

FamilySpec FamilySpec::noetherian(std::map<std::uint64_t, MonomialIdeal> seeds) {
  if (seeds.empty()) throw PreconditionError("noetherian family needs seeds");
  const std::size_t d = seeds.begin()->second.dim();
  return FamilySpec(d, NoetherianSeedsRule{std::move(seeds)});
}

FamilySpec FamilySpec::table(std::vector<MonomialIdeal> ideals) {
  if (ideals.empty()) throw PreconditionError("a family table must start with I_0 = R");
  const std::size_t d = ideals.front().dim();
  return FamilySpec(d, TableRule{std::move(ideals)});
}

std::size_t FamilySpec::arity() const {
  if (const auto* grid = std::get_if<ProductGridRule>(&rule_)) return grid->ideals.size();
  return 1;
}

std::string FamilySpec::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key_) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_json_text(const FamilySpec& spec) { return spec.key(); }

FamilySpec parse_family_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed family spec: ") + e.what());
  }
  return family_spec_from_json(doc);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

MonomialIdeal hyperbola_ideal(HyperbolaVariant variant, std::uint64_t n) {
  if (n == 0) return MonomialIdeal::unit(2);
  const Natural sq = Natural(n) * n;
  const Natural last = variant == HyperbolaVariant::sum ? sq : Natural(n);
  std::vector<Monomial> gens;
  for (Natural a = 1; a <= last; ++a) {
    Natural b = ceil_div(sq, a);
    if (variant == HyperbolaVariant::upper) {
      gens.push_back(Monomial({b, a}));
    } else {
      gens.push_back(Monomial({a, b}));
    }
  }
  return MonomialIdeal(2, std::move(gens));
}

}  // namespace

FamilyCache& default_family_cache() {
  static FamilyCache cache;
  return cache;
}

void FamilyCache::clear() {
  std::unique_lock lock(mu_);
  memo_.clear();
}

std::size_t FamilyCache::size() const {
  std::shared_lock lock(mu_);
  std::size_t n = 0;
  for (const auto& [key, entries] : memo_) n += entries.size();
  return n;
}

std::optional<MonomialIdeal> FamilyCache::lookup(const std::string& key, const Index& n) const {
  std::shared_lock lock(mu_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  auto jt = it->second.find(n);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

void FamilyCache::insert(const std::string& key, const Index& n, const MonomialIdeal& ideal) {
  std::unique_lock lock(mu_);
  memo_[key].emplace(n, ideal);
}

MonomialIdeal FamilyCache::eval(const FamilySpec& spec, const Index& n) {
  if (n.size() != spec.arity()) {
    throw PreconditionError("index arity " + std::to_string(n.size()) + " does not match family arity " +
                            std::to_string(spec.arity()));
  }
  if (auto hit = lookup(spec.key(), n)) return *hit;
  MonomialIdeal ideal = compute(spec, n);
  insert(spec.key(), n, ideal);
  return ideal;
}

MonomialIdeal FamilyCache::compute(const FamilySpec& spec, const Index& idx) {
  const std::size_t d = spec.dim();
  if (std::all_of(idx.begin(), idx.end(), [](std::uint64_t v) { return v == 0; })) {
    if (const auto* table = std::get_if<TableRule>(&spec.rule())) return table->ideals.front();
    return MonomialIdeal::unit(d);
  }
  const std::uint64_t n = idx.front();

  // Rules defined through lower indices are filled in ascending order so the
  // recursion depth stays constant.
  auto ascend = [&](auto step) {
    for (std::uint64_t m = 1; m < n; ++m) {
      if (!lookup(spec.key(), {m})) insert(spec.key(), {m}, step(m));
    }
    return step(n);
  };
  auto below = [&](std::uint64_t m) { return eval(spec, Index{m}); };

  return std::visit(
      overloaded{
          [&](const PowerRule& r) -> MonomialIdeal {
            return ascend([&](std::uint64_t m) { return multiply(below(m - 1), r.ideal); });
          },
          [&](const ProductGridRule& r) -> MonomialIdeal {
            MonomialIdeal result = MonomialIdeal::unit(d);
            for (std::size_t k = 0; k < r.ideals.size(); ++k) {
              result = multiply(result, eval(FamilySpec::power(r.ideals[k]), Index{idx[k]}));
            }
            return result;
          },
          [&](const CounterRule& r) -> MonomialIdeal {
            return MonomialIdeal(2, {Monomial({Natural(1), r.term(n)}), Monomial({2, 0})});
          },
          [&](const SqrtPrincipalRule& r) -> MonomialIdeal {
            const Natural target = Natural(n) * n * r.k;
            Natural e = isqrt(target);
            if (e * e != target) ++e;
            return MonomialIdeal::principal(Monomial(std::vector<Natural>{e}));
          },
          [&](const HyperbolaRule& r) -> MonomialIdeal { return hyperbola_ideal(r.variant, n); },
          [&](const LimitRecursiveRule&) -> MonomialIdeal {
            return ascend([&](std::uint64_t m) {
              if (m == 1) return MonomialIdeal(2, {{1, 1}});
              const Natural sq = Natural(m) * m;
              MonomialIdeal acc(2, {Monomial({Natural(1), sq}), Monomial({sq, Natural(1)})});
              // I_t I_(m-t) = I_(m-t) I_t, so half the range suffices.
              for (std::uint64_t t = 1; 2 * t <= m; ++t) acc = add(acc, multiply(below(t), below(m - t)));
              return acc;
            });
          },
          [&](const NoetherianSeedsRule& r) -> MonomialIdeal {
            return ascend([&](std::uint64_t m) {
              MonomialIdeal acc = MonomialIdeal::zero(d);
              for (const auto& [deg, seed] : r.seeds) {
                if (deg > m) break;
                acc = add(acc, multiply(seed, below(m - deg)));
              }
              return acc;
            });
          },
          [&](const TableRule& r) -> MonomialIdeal {
            if (n >= r.ideals.size()) {
              throw PreconditionError("family table has no entry for index " + std::to_string(n));
            }
            return r.ideals[n];
          },
      },
      spec.rule());
}

MonomialIdeal eval_family(const FamilySpec& spec, std::uint64_t n) { return eval_family(spec, Index{n}); }

MonomialIdeal eval_family(const FamilySpec& spec, const Index& n) {
  return default_family_cache().eval(spec, n);
}

// ---------------------------------------------------------------------------
// Structure checks

StructureReport check_structure(const FamilySpec& spec, std::uint64_t bound, StructureMode mode) {
  if (bound < 2) throw PreconditionError("structure checks need N >= 2");
  if (spec.arity() != 1) throw PreconditionError("structure checks apply to single-index families");
  StructureReport report;
  report.mode = mode;
  report.bound = bound;
  for (std::uint64_t n = 1; n < bound && !report.violation; ++n) {
    for (std::uint64_t m = 1; n + m <= bound; ++m) {
      if (!is_subset(multiply(eval_family(spec, n), eval_family(spec, m)), eval_family(spec, n + m))) {
        report.violation = StructureViolation{StructureViolation::Kind::product, n, m};
        break;
      }
    }
  }
  if (!report.violation && mode == StructureMode::filtration) {
    for (std::uint64_t n = 0; n < bound; ++n) {
      if (!is_subset(eval_family(spec, n + 1), eval_family(spec, n))) {
        report.violation = StructureViolation{StructureViolation::Kind::descending, n, n + 1};
        break;
      }
    }
  }
  report.pass = !report.violation;
  return report;
}

std::optional<std::uint64_t> generation_degree(const FamilySpec& spec, std::uint64_t max_a,
                                               std::uint64_t window) {
  if (max_a < 1) throw PreconditionError("generation degree search needs A_max >= 1");
  if (window < 2) throw PreconditionError("generation degree search needs window >= 2");
  if (spec.arity() != 1) throw PreconditionError("generation degree applies to single-index families");
  for (std::uint64_t a = 1; a <= max_a; ++a) {
    const MonomialIdeal ia = eval_family(spec, a);
    bool ok = true;
    for (std::uint64_t r = 0; r < a && ok; ++r) {
      MonomialIdeal expected = eval_family(spec, a + r);
      for (std::uint64_t n = 2; n <= window && ok; ++n) {
        expected = multiply(expected, ia);
        ok = eval_family(spec, a * n + r) == expected;
      }
    }
    if (ok) return a;
  }
  return std::nullopt;
}

GrowthReport growth_constants(const FamilySpec& spec, std::uint64_t n) {
  if (n == 0) throw PreconditionError("growth constants need n >= 1");
  if (spec.arity() != 1) throw PreconditionError("growth constants apply to single-index families");
  const MonomialIdeal ideal = eval_family(spec, n);
  H0Options opts;
  opts.method = ideal.dim() == 2 ? H0Method::staircase : H0Method::box;
  GrowthReport report;
  report.n = n;
  report.max_socle_degree = max_socle_degree(ideal, opts).value_or(Natural(0));
  const Natural threshold = report.max_socle_degree + 1;
  const Natural nn = n;
  report.minimal_c_linear = ceil_div(threshold, nn);
  report.minimal_c_quadratic = ceil_div(threshold, nn * nn);
  return report;
}

MonomialIdeal limit_sandwich_lower(std::uint64_t n) {
  if (n == 0) return MonomialIdeal::unit(2);
  const Natural shift = n - 1;
  return add(multiply(eval_family(FamilySpec::hyperbola(HyperbolaVariant::lower), n), Monomial({Natural(0), shift})),
             multiply(eval_family(FamilySpec::hyperbola(HyperbolaVariant::upper), n), Monomial({shift, Natural(0)})));
}

MonomialIdeal limit_sandwich_upper(std::uint64_t n) {
  return add(eval_family(FamilySpec::hyperbola(HyperbolaVariant::lower), n),
             eval_family(FamilySpec::hyperbola(HyperbolaVariant::upper), n));
}

std::string to_string(SequenceFormula f) {
  switch (f) {
    case SequenceFormula::square: return "n^2";
    case SequenceFormula::cube: return "n^3";
    case SequenceFormula::power_of_two: return "2^n";
  }
  return "?";
}

std::string to_string(HyperbolaVariant v) {
  switch (v) {
    case HyperbolaVariant::lower: return "lower";
    case HyperbolaVariant::upper: return "upper";
    case HyperbolaVariant::sum: return "sum";
  }
  return "?";
}

std::string to_string(StructureMode m) { return m == StructureMode::graded ? "graded" : "filtration"; }

StructureMode parse_structure_mode(std::string_view s) {
  if (s == "graded") return StructureMode::graded;
  if (s == "filtration") return StructureMode::filtration;
  throw ParseError("unknown structure mode '" + std::string(s) + "'");
}

}  // namespace epsmult
