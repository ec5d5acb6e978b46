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

#include <limits>
#include <string>
#include <utility>

#include "epsmult/error.hpp"

namespace epsmult {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("bad value for ") + what);
  }
}

std::string get_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

Index index_from_json(const Json& j) { return get<Index>(array(j, "index"), "index"); }

Json rational_vector(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

RationalVector rational_vector_from_json(const Json& j) {
  RationalVector v;
  for (const auto& x : array(j, "rational vector")) v.push_back(rational_from_json(x));
  return v;
}

Json natural_vector(std::span<const Natural> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<Natural> natural_vector_from_json(const Json& j) {
  std::vector<Natural> v;
  for (const auto& x : array(j, "natural vector")) v.push_back(natural_from_json(x));
  return v;
}

SequenceFormula parse_formula(const std::string& s) {
  if (s == "n^2") return SequenceFormula::square;
  if (s == "n^3") return SequenceFormula::cube;
  if (s == "2^n") return SequenceFormula::power_of_two;
  throw ParseError("unknown counter formula '" + s + "' (expected n^2, n^3 or 2^n)");
}

HyperbolaVariant parse_variant(const std::string& s) {
  if (s == "lower") return HyperbolaVariant::lower;
  if (s == "upper") return HyperbolaVariant::upper;
  if (s == "sum") return HyperbolaVariant::sum;
  throw ParseError("unknown hyperbola variant '" + s + "'");
}

std::vector<MonomialIdeal> ideal_list(const Json& j, std::optional<std::size_t> dim) {
  std::vector<MonomialIdeal> out;
  for (const auto& x : array(j, "ideals")) {
    out.push_back(ideal_from_json(x, dim));
    if (!dim) dim = out.back().dim();
  }
  return out;
}

Json ideal_list_json(const std::vector<MonomialIdeal>& ideals) {
  Json out = Json::array();
  for (const auto& i : ideals) out.push_back(generators_to_json(i));
  return out;
}

}  // namespace

Json to_json(const Natural& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  if (auto v = to_int64(n)) return *v;
  return to_string(n);
}

Natural natural_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Natural(j.get<std::int64_t>());
  if (j.is_string()) return parse_natural(j.get<std::string>());
  throw ParseError("expected an integer");
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(natural_from_json(j));
  throw ParseError("expected a rational \"p/q\"");
}

Json to_json(const Monomial& m) { return natural_vector(m.exponents()); }

Monomial monomial_from_json(const Json& j) { return Monomial(natural_vector_from_json(j)); }

Json generators_to_json(const MonomialIdeal& ideal) {
  Json out = Json::array();
  for (const auto& g : ideal.generators()) out.push_back(to_json(g));
  return out;
}

Json to_json(const MonomialIdeal& ideal) {
  return Json{{"d", ideal.dim()}, {"generators", generators_to_json(ideal)}};
}

MonomialIdeal ideal_from_json(const Json& j, std::optional<std::size_t> dim) {
  if (j.is_string()) return parse_ideal(j.get<std::string>(), dim);
  if (j.is_object()) {
    const auto d = get<std::size_t>(field(j, "d"), "d");
    if (dim && *dim != d) throw DimensionMismatch("ideal dimension differs from the context");
    return ideal_from_json(field(j, "generators"), d);
  }
  std::vector<Monomial> gens;
  for (const auto& g : array(j, "ideal")) gens.push_back(monomial_from_json(g));
  std::size_t d = 0;
  if (dim) {
    d = *dim;
  } else if (!gens.empty()) {
    d = gens.front().dim();
  } else {
    throw ParseError("cannot infer the dimension of an empty generator list");
  }
  return MonomialIdeal(d, std::move(gens));
}

Json to_json(const H0Count& c) {
  Json out{{"length", to_json(c.length)}, {"method", to_string(c.method)}};
  if (c.witnesses) {
    Json w = Json::array();
    for (const auto& m : *c.witnesses) w.push_back(to_json(m));
    out["witnesses"] = std::move(w);
  }
  return out;
}

H0Count h0_count_from_json(const Json& j) {
  H0Count c;
  c.length = natural_from_json(field(j, "length"));
  c.method = parse_h0_method(get_string(field(j, "method"), "method"));
  if (j.contains("witnesses")) {
    std::vector<Monomial> w;
    for (const auto& m : array(j["witnesses"], "witnesses")) w.push_back(monomial_from_json(m));
    c.witnesses = std::move(w);
  }
  return c;
}

Json to_json(const SimplicialComplex& k) {
  Json faces = Json::array();
  for (Face f : k.faces()) {
    Json face = Json::array();
    for (std::size_t i = 0; i < k.ground_size(); ++i) {
      if (f >> i & 1U) face.push_back(i);
    }
    faces.push_back(std::move(face));
  }
  return Json{{"ground", k.ground_size()}, {"faces", std::move(faces)}};
}

SimplicialComplex simplicial_complex_from_json(const Json& j) {
  const auto ground = get<std::size_t>(field(j, "ground"), "ground");
  if (ground > 32) throw ParseError("ground set too large");
  std::vector<Face> faces;
  for (const auto& f : array(field(j, "faces"), "faces")) {
    Face mask = 0;
    for (auto v : get<std::vector<std::size_t>>(array(f, "face"), "face")) {
      if (v >= ground) throw ParseError("face vertex outside the ground set");
      mask |= Face{1} << v;
    }
    faces.push_back(mask);
  }
  try {
    return SimplicialComplex(ground, std::move(faces));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const Facet& f) {
  return Json{{"normal", natural_vector(f.normal)}, {"offset", to_json(f.offset)}};
}

Facet facet_from_json(const Json& j) {
  return Facet{natural_vector_from_json(field(j, "normal")), natural_from_json(field(j, "offset"))};
}

Json to_json(const NewtonPolyhedron& np) {
  Json vertices = Json::array();
  for (const auto& v : np.vertices) vertices.push_back(rational_vector(v));
  Json facets = Json::array();
  for (const auto& f : np.facets) facets.push_back(to_json(f));
  Json incidence = Json::array();
  for (const auto& row : np.incidence) {
    Json r = Json::array();
    for (std::size_t v = 0; v < row.size(); ++v) {
      if (row[v]) r.push_back(v);
    }
    incidence.push_back(std::move(r));
  }
  return Json{{"d", np.dim}, {"vertices", std::move(vertices)}, {"facets", std::move(facets)},
              {"incidence", std::move(incidence)}};
}

NewtonPolyhedron newton_polyhedron_from_json(const Json& j) {
  NewtonPolyhedron np;
  np.dim = get<std::size_t>(field(j, "d"), "d");
  for (const auto& v : array(field(j, "vertices"), "vertices")) np.vertices.push_back(rational_vector_from_json(v));
  for (const auto& f : array(field(j, "facets"), "facets")) np.facets.push_back(facet_from_json(f));
  for (const auto& r : array(field(j, "incidence"), "incidence")) {
    std::vector<bool> row(np.vertices.size(), false);
    for (auto v : get<std::vector<std::size_t>>(array(r, "incidence row"), "incidence row")) {
      if (v >= row.size()) throw ParseError("incidence refers to a missing vertex");
      row[v] = true;
    }
    np.incidence.push_back(std::move(row));
  }
  if (np.incidence.size() != np.facets.size()) throw ParseError("one incidence row per facet expected");
  return np;
}

Json to_json(const OutRegionReport& r) {
  return Json{{"volume", to_json(r.volume)}, {"epsilon", to_json(r.epsilon)}, {"box_bound", to_json(r.box_bound)}};
}

OutRegionReport out_region_from_json(const Json& j) {
  return OutRegionReport{rational_from_json(field(j, "volume")), rational_from_json(field(j, "epsilon")),
                         rational_from_json(field(j, "box_bound"))};
}

Json to_json(const FamilySpec& spec) {
  Json rule = std::visit(
      overloaded{
          [](const PowerRule& r) { return Json{{"type", "power"}, {"ideal", generators_to_json(r.ideal)}}; },
          [](const ProductGridRule& r) { return Json{{"type", "product_grid"}, {"ideals", ideal_list_json(r.ideals)}}; },
          [](const CounterRule& r) {
            Json a;
            if (const auto* list = std::get_if<std::vector<Natural>>(&r.sequence)) {
              a = natural_vector(*list);
            } else {
              a = to_string(std::get<SequenceFormula>(r.sequence));
            }
            return Json{{"type", "counter"}, {"a", std::move(a)}};
          },
          [](const SqrtPrincipalRule& r) { return Json{{"type", "sqrt"}, {"k", to_json(r.k)}}; },
          [](const HyperbolaRule& r) { return Json{{"type", "hyperbola"}, {"variant", to_string(r.variant)}}; },
          [](const LimitRecursiveRule&) { return Json{{"type", "limit_recursive"}}; },
          [](const NoetherianSeedsRule& r) {
            Json seeds = Json::object();
            for (const auto& [deg, ideal] : r.seeds) seeds[std::to_string(deg)] = generators_to_json(ideal);
            return Json{{"type", "noetherian"}, {"seeds", std::move(seeds)}};
          },
          [](const TableRule& r) { return Json{{"type", "table"}, {"ideals", ideal_list_json(r.ideals)}}; },
      },
      spec.rule());
  return Json{{"d", spec.dim()}, {"rule", std::move(rule)}};
}

FamilySpec family_spec_from_json(const Json& j) {
  const Json& rule = field(j, "rule");
  std::optional<std::size_t> d;
  if (j.contains("d")) d = get<std::size_t>(j["d"], "d");
  const std::string type = get_string(field(rule, "type"), "rule type");
  auto with_dim = [&](std::size_t fixed) {
    if (d && *d != fixed) throw PreconditionError(type + " families live in " + std::to_string(fixed) + " variables");
    return fixed;
  };
  if (type == "power") {
    auto ideal = ideal_from_json(field(rule, "ideal"), d);
    return FamilySpec(ideal.dim(), PowerRule{std::move(ideal)});
  }
  if (type == "product_grid") {
    auto ideals = ideal_list(field(rule, "ideals"), d);
    if (ideals.empty()) throw PreconditionError("product grid needs at least one ideal");
    const std::size_t dim = ideals.front().dim();
    return FamilySpec(dim, ProductGridRule{std::move(ideals)});
  }
  if (type == "counter") {
    const Json& a = field(rule, "a");
    if (a.is_string()) return FamilySpec(with_dim(2), CounterRule{parse_formula(a.get<std::string>())});
    return FamilySpec(with_dim(2), CounterRule{natural_vector_from_json(a)});
  }
  if (type == "sqrt") return FamilySpec(with_dim(1), SqrtPrincipalRule{natural_from_json(field(rule, "k"))});
  if (type == "hyperbola") {
    return FamilySpec(with_dim(2), HyperbolaRule{parse_variant(get_string(field(rule, "variant"), "variant"))});
  }
  if (type == "limit_recursive") return FamilySpec(with_dim(2), LimitRecursiveRule{});
  if (type == "noetherian") {
    const Json& seeds = field(rule, "seeds");
    if (!seeds.is_object()) throw ParseError("seeds must map degrees to ideals");
    std::map<std::uint64_t, MonomialIdeal> out;
    for (const auto& [deg, ideal] : seeds.items()) {
      std::uint64_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoull(deg, &used);
        if (used != deg.size()) throw std::invalid_argument(deg);
      } catch (const std::exception&) {
        throw ParseError("seed degree '" + deg + "' is not a natural number");
      }
      auto parsed = ideal_from_json(ideal, d);
      if (!d) d = parsed.dim();
      out.emplace(k, std::move(parsed));
    }
    if (out.empty()) throw PreconditionError("noetherian family needs seeds");
    return FamilySpec(*d, NoetherianSeedsRule{std::move(out)});
  }
  if (type == "table") {
    auto ideals = ideal_list(field(rule, "ideals"), d);
    if (ideals.empty()) throw PreconditionError("a family table must start with I_0 = R");
    const std::size_t dim = ideals.front().dim();
    return FamilySpec(dim, TableRule{std::move(ideals)});
  }
  throw ParseError("unknown family rule type '" + type + "'");
}

Json to_json(const StructureReport& r) {
  Json out{{"pass", r.pass}, {"mode", to_string(r.mode)}, {"N", r.bound}};
  if (r.violation) {
    out["violation"] = Json{
        {"kind", r.violation->kind == StructureViolation::Kind::product ? "product" : "descending"},
        {"n", r.violation->n},
        {"m", r.violation->m}};
  } else {
    out["violation"] = nullptr;
  }
  return out;
}

StructureReport structure_report_from_json(const Json& j) {
  StructureReport r;
  r.pass = get<bool>(field(j, "pass"), "pass");
  r.mode = parse_structure_mode(get_string(field(j, "mode"), "mode"));
  r.bound = get<std::uint64_t>(field(j, "N"), "N");
  const Json& v = field(j, "violation");
  if (!v.is_null()) {
    const auto kind = get_string(field(v, "kind"), "kind");
    StructureViolation sv{};
    if (kind == "product") {
      sv.kind = StructureViolation::Kind::product;
    } else if (kind == "descending") {
      sv.kind = StructureViolation::Kind::descending;
    } else {
      throw ParseError("unknown violation kind '" + kind + "'");
    }
    sv.n = get<std::uint64_t>(field(v, "n"), "n");
    sv.m = get<std::uint64_t>(field(v, "m"), "m");
    r.violation = sv;
  }
  return r;
}

Json to_json(const GrowthReport& r) {
  return Json{{"n", r.n},
              {"max_socle_degree", to_json(r.max_socle_degree)},
              {"minimal_c_linear", to_json(r.minimal_c_linear)},
              {"minimal_c_quadratic", to_json(r.minimal_c_quadratic)}};
}

GrowthReport growth_report_from_json(const Json& j) {
  return GrowthReport{get<std::uint64_t>(field(j, "n"), "n"), natural_from_json(field(j, "max_socle_degree")),
                      natural_from_json(field(j, "minimal_c_linear")),
                      natural_from_json(field(j, "minimal_c_quadratic"))};
}

Json to_json(const LengthTable& t) {
  Json entries = Json::array();
  for (const auto& [n, len] : t.entries) entries.push_back(Json{{"index", n}, {"length", to_json(len)}});
  return Json{{"arity", t.arity}, {"d", t.ambient_dim}, {"entries", std::move(entries)},
              {"spec_hash", t.spec_hash}, {"methods", t.methods}};
}

LengthTable length_table_from_json(const Json& j) {
  LengthTable t;
  t.arity = get<std::size_t>(field(j, "arity"), "arity");
  t.ambient_dim = get<std::size_t>(field(j, "d"), "d");
  for (const auto& e : array(field(j, "entries"), "entries")) {
    Index n = index_from_json(field(e, "index"));
    if (n.size() != t.arity) throw ParseError("index arity differs from the table");
    t.entries[std::move(n)] = natural_from_json(field(e, "length"));
  }
  t.spec_hash = get_string(field(j, "spec_hash"), "spec_hash");
  t.methods = get<std::vector<std::string>>(field(j, "methods"), "methods");
  return t;
}

Json to_json(const QuasiPolynomial& q) {
  Json classes = Json::array();
  for (const auto& [residue, terms] : q.coefficients()) {
    Json ts = Json::array();
    for (const auto& [e, c] : terms) ts.push_back(Json{{"exponents", e}, {"value", to_json(c)}});
    classes.push_back(Json{{"residue", residue}, {"terms", std::move(ts)}});
  }
  return Json{{"arity", q.arity()},   {"period", q.period()}, {"degree", q.degree()},
              {"start", q.start()},   {"coefficients", std::move(classes)}};
}

QuasiPolynomial quasi_polynomial_from_json(const Json& j) {
  QuasiPolynomial::Coefficients coeffs;
  for (const auto& c : array(field(j, "coefficients"), "coefficients")) {
    auto& terms = coeffs[index_from_json(field(c, "residue"))];
    for (const auto& t : array(field(c, "terms"), "terms")) {
      terms[get<Exponents>(field(t, "exponents"), "exponents")] = rational_from_json(field(t, "value"));
    }
  }
  try {
    return QuasiPolynomial(get<std::size_t>(field(j, "arity"), "arity"), get<std::size_t>(field(j, "period"), "period"),
                           get<std::size_t>(field(j, "degree"), "degree"),
                           get<std::uint64_t>(field(j, "start"), "start"), std::move(coeffs));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const EpsilonReport& r) {
  Json mixed = Json::array();
  for (const auto& [e, v] : r.mixed) mixed.push_back(Json{{"degrees", e}, {"value", to_json(v)}});
  return Json{{"raw_limit", to_json(r.raw_limit)}, {"epsilon", to_json(r.epsilon)}, {"mixed", std::move(mixed)}};
}

EpsilonReport epsilon_report_from_json(const Json& j) {
  EpsilonReport r;
  r.raw_limit = rational_from_json(field(j, "raw_limit"));
  r.epsilon = rational_from_json(field(j, "epsilon"));
  for (const auto& m : array(field(j, "mixed"), "mixed")) {
    r.mixed[get<Exponents>(field(m, "degrees"), "degrees")] = rational_from_json(field(m, "value"));
  }
  return r;
}

Json to_json(const ConvergenceReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(Json{{"n", p.n}, {"length", to_json(p.length)}, {"value", p.value}});
  return Json{{"normalizer", r.normalizer.to_string()}, {"points", std::move(points)}, {"window", r.window},
              {"window_max", r.window_max}, {"trend", to_string(r.trend)}};
}

ConvergenceReport convergence_report_from_json(const Json& j) {
  ConvergenceReport r;
  r.normalizer = Normalizer::parse(get_string(field(j, "normalizer"), "normalizer"));
  for (const auto& p : array(field(j, "points"), "points")) {
    r.points.push_back(ConvergencePoint{get<std::uint64_t>(field(p, "n"), "n"), natural_from_json(field(p, "length")),
                                        get<double>(field(p, "value"), "value")});
  }
  r.window = get<std::size_t>(field(j, "window"), "window");
  r.window_max = get<double>(field(j, "window_max"), "window_max");
  r.trend = parse_trend(get_string(field(j, "trend"), "trend"));
  return r;
}

}  // namespace epsmult
