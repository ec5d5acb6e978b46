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

#include "epsmult/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <utility>

#include "epsmult/error.hpp"

namespace epsmult {

// ---------------------------------------------------------------------------
// Simplicial complexes

namespace {

bool face_order(Face a, Face b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

void check_ground(std::size_t ground) {
  if (ground > 31) throw PreconditionError("simplicial complexes support at most 31 vertices");
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t ground, std::vector<Face> faces)
    : ground_(ground), faces_(std::move(faces)) {
  check_ground(ground);
  std::sort(faces_.begin(), faces_.end(), face_order);
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  const Face all = ground == 0 ? 0 : static_cast<Face>((std::uint64_t{1} << ground) - 1);
  for (Face f : faces_) {
    if ((f & ~all) != 0) throw PreconditionError("face outside the ground set");
    for (Face rest = f; rest != 0; rest &= rest - 1) {
      Face sub = f & ~(rest & -rest);
      if (!contains(sub)) throw PreconditionError("face set is not downward closed");
    }
  }
}

SimplicialComplex SimplicialComplex::void_complex(std::size_t ground) {
  return SimplicialComplex(ground, {});
}

SimplicialComplex SimplicialComplex::irrelevant(std::size_t ground) {
  return SimplicialComplex(ground, {0});
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t ground, const std::vector<Face>& facets) {
  check_ground(ground);
  std::vector<Face> faces;
  for (Face f : facets) {
    // Every submask of f.
    for (Face sub = f;; sub = (sub - 1) & f) {
      faces.push_back(sub);
      if (sub == 0) break;
    }
  }
  return SimplicialComplex(ground, std::move(faces));
}

bool SimplicialComplex::contains(Face f) const {
  return std::binary_search(faces_.begin(), faces_.end(), f, face_order);
}

std::string to_string(const SimplicialComplex& k) {
  if (k.is_void()) return "void";
  std::string out = "{";
  bool first = true;
  for (Face f : k.faces()) {
    if (!first) out += ", ";
    first = false;
    out += "{";
    bool inner = true;
    for (std::size_t i = 0; i < k.ground_size(); ++i) {
      if ((f >> i) & 1U) {
        if (!inner) out += ",";
        inner = false;
        out += std::to_string(i + 1);
      }
    }
    out += "}";
  }
  return out + "}";
}

namespace {

// Boundary map from faces of cardinality k to faces of cardinality k-1.
std::size_t boundary_rank(const std::vector<Face>& faces, int k) {
  if (k <= 0) return 0;
  std::vector<Face> src, dst;
  for (Face f : faces) {
    int c = std::popcount(f);
    if (c == k) src.push_back(f);
    if (c == k - 1) dst.push_back(f);
  }
  if (src.empty() || dst.empty()) return 0;
  RationalMatrix m(dst.size(), RationalVector(src.size(), Rational(0)));
  for (std::size_t col = 0; col < src.size(); ++col) {
    int j = 0;
    for (Face rest = src[col]; rest != 0; rest &= rest - 1, ++j) {
      Face sub = src[col] & ~(rest & -rest);
      auto it = std::lower_bound(dst.begin(), dst.end(), sub);
      m[static_cast<std::size_t>(it - dst.begin())][col] = (j % 2 == 0) ? 1 : -1;
    }
  }
  return rank(std::move(m));
}

}  // namespace

std::size_t reduced_betti(const SimplicialComplex& k, int q) {
  if (q < -1) return 0;
  std::size_t chains = 0;
  for (Face f : k.faces()) {
    if (std::popcount(f) == q + 1) ++chains;
  }
  if (chains == 0) return 0;
  // dst lists are sorted by mask because faces of one cardinality are.
  std::size_t outgoing = boundary_rank(k.faces(), q + 1);
  std::size_t incoming = boundary_rank(k.faces(), q + 2);
  return chains - outgoing - incoming;
}

// ---------------------------------------------------------------------------
// Box enumeration

std::string to_string(H0Method m) {
  switch (m) {
    case H0Method::box: return "box-enumeration";
    case H0Method::staircase: return "staircase-2d";
    case H0Method::takayama: return "takayama";
  }
  return "unknown";
}

H0Method parse_h0_method(std::string_view s) {
  if (s == "box" || s == "box-enumeration") return H0Method::box;
  if (s == "staircase" || s == "staircase-2d") return H0Method::staircase;
  if (s == "takayama") return H0Method::takayama;
  throw ParseError("unknown H0 method '" + std::string(s) + "'");
}

namespace {

using Point = std::vector<std::int64_t>;

// Generators as a flat row-major int64 array for the scan hot loop.
class DenseIdeal {
 public:
  explicit DenseIdeal(const MonomialIdeal& ideal) : d_(ideal.dim()) {
    flat_.reserve(ideal.size() * d_);
    for (const auto& g : ideal.generators()) {
      for (std::size_t i = 0; i < d_; ++i) {
        auto v = to_int64(g[i]);
        if (!v) throw ResourceLimit("exponent too large for box enumeration");
        flat_.push_back(*v);
      }
    }
  }

  bool contains(const std::int64_t* p) const {
    for (std::size_t off = 0; off < flat_.size(); off += d_) {
      std::size_t i = 0;
      while (i < d_ && flat_[off + i] <= p[i]) ++i;
      if (i == d_) return true;
    }
    return false;
  }

 private:
  std::size_t d_;
  std::vector<std::int64_t> flat_;
};

struct ScanResult {
  std::uint64_t count = 0;
  std::vector<Point> witnesses;
};

// The box [0, c_i) from the generator maximum; empty optional means the box
// has no points.
std::optional<Point> enumeration_box(const MonomialIdeal& ideal, std::uint64_t budget) {
  Monomial c = ideal.generator_max();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (c[i] == 0) return std::nullopt;
  }
  Point box(c.dim());
  Natural volume = 1;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    volume *= c[i];
    if (volume > budget) {
      throw ResourceLimit("enumeration box has more than " + std::to_string(budget) +
                          " points; use the staircase method for d = 2");
    }
    box[i] = c[i].convert_to<std::int64_t>();
  }
  return box;
}

// Visits the points of the box with first coordinate in [lo, hi) in
// lexicographic order.
template <class Fn>
void for_each_in_slab(const Point& box, std::int64_t lo, std::int64_t hi, Fn&& fn) {
  const std::size_t d = box.size();
  if (lo >= hi) return;
  Point p(d, 0);
  p[0] = lo;
  while (true) {
    fn(p);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++p[i] < (i == 0 ? hi : box[i])) break;
      if (i == 0) return;
      p[i] = 0;
    }
  }
}

template <class Fn>
void for_each_in_box(const Point& box, Fn&& fn) {
  for_each_in_slab(box, 0, box[0], fn);
}

// Splits the box into contiguous slabs of the first coordinate, one per
// worker; slab results are concatenated in order so the count and witness
// list do not depend on scheduling.
template <class Pred>
ScanResult scan_points(const Point& box, const H0Options& options, Pred pred) {
  const unsigned workers =
      std::max(1U, static_cast<unsigned>(std::min<std::int64_t>(options.threads, box[0])));
  std::vector<ScanResult> partial(workers);
  auto work = [&](unsigned w) {
    const std::int64_t lo = box[0] * w / workers;
    const std::int64_t hi = box[0] * (w + 1) / workers;
    ScanResult& out = partial[w];
    for_each_in_slab(box, lo, hi, [&](const Point& p) {
      if (!pred(p.data())) return;
      ++out.count;
      if (options.witnesses) out.witnesses.push_back(p);
    });
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  ScanResult total;
  for (auto& part : partial) {
    total.count += part.count;
    for (auto& w : part.witnesses) total.witnesses.push_back(std::move(w));
  }
  return total;
}

std::vector<Monomial> to_monomials(const std::vector<Point>& pts) {
  std::vector<Monomial> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<Natural> e(p.begin(), p.end());
    out.emplace_back(std::move(e));
  }
  return out;
}

void require_nonzero(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) throw UndefinedSaturation("H0 length is undefined for the zero ideal");
}

H0Count box_length(const MonomialIdeal& ideal, const H0Options& options) {
  H0Count result{0, H0Method::box, std::nullopt};
  if (options.witnesses) result.witnesses.emplace();
  auto box = enumeration_box(ideal, options.max_box_points);
  if (!box) return result;
  DenseIdeal in_ideal(ideal);
  DenseIdeal in_sat(saturate(ideal));
  ScanResult scan = scan_points(*box, options, [&](const std::int64_t* p) {
    return in_sat.contains(p) && !in_ideal.contains(p);
  });
  result.length = scan.count;
  if (options.witnesses) result.witnesses = to_monomials(scan.witnesses);
  return result;
}

H0Count staircase_length(const MonomialIdeal& ideal, const H0Options& options) {
  if (ideal.dim() != 2) throw PreconditionError("the staircase method requires d = 2");
  const auto& g = ideal.generators();  // x ascending, y strictly descending
  H0Count result{0, H0Method::staircase, std::nullopt};
  const Natural& bottom = g.back()[1];
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    result.length += (g[i + 1][0] - g[i][0]) * (g[i][1] - bottom);
  }
  if (options.witnesses) {
    if (result.length > options.max_box_points) {
      throw ResourceLimit("too many witness points to list");
    }
    std::vector<Monomial> pts;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      for (Natural x = g[i][0]; x < g[i + 1][0]; ++x) {
        for (Natural y = bottom; y < g[i][1]; ++y) pts.push_back(Monomial({x, y}));
      }
    }
    result.witnesses = std::move(pts);
  }
  return result;
}

}  // namespace

H0Count h0_length(const MonomialIdeal& ideal, const H0Options& options) {
  require_nonzero(ideal);
  switch (options.method) {
    case H0Method::box: return box_length(ideal, options);
    case H0Method::staircase: return staircase_length(ideal, options);
    case H0Method::takayama: return h0_length_takayama(ideal, options);
  }
  throw PreconditionError("unknown H0 method");
}

H0Count h0_of_quotient(const MonomialIdeal& j, const MonomialIdeal& jsub, const H0Options& options) {
  require_nonzero(jsub);
  if (!is_subset(jsub, j)) throw PreconditionError("submodule ideal is not contained in the ambient ideal");
  H0Count result{0, H0Method::box, std::nullopt};
  if (options.witnesses) result.witnesses.emplace();
  auto box = enumeration_box(jsub, options.max_box_points);
  if (!box) return result;
  DenseIdeal in_sub(jsub);
  DenseIdeal in_sat(saturate(jsub));
  DenseIdeal in_j(j);
  ScanResult scan = scan_points(*box, options, [&](const std::int64_t* p) {
    return in_sat.contains(p) && in_j.contains(p) && !in_sub.contains(p);
  });
  result.length = scan.count;
  if (options.witnesses) result.witnesses = to_monomials(scan.witnesses);
  return result;
}

// ---------------------------------------------------------------------------
// Degree complexes

namespace {

std::vector<std::size_t> mask_vars(Face f) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; f != 0; ++i, f >>= 1) {
    if (f & 1U) vars.push_back(i);
  }
  return vars;
}

// All localizations I_F, indexed by the mask F.
std::vector<MonomialIdeal> all_localizations(const MonomialIdeal& ideal) {
  if (ideal.dim() > 16) throw ResourceLimit("degree complexes support at most 16 variables");
  std::vector<MonomialIdeal> locs;
  const Face full = static_cast<Face>(1U << ideal.dim());
  locs.reserve(full);
  for (Face f = 0; f < full; ++f) {
    auto vars = mask_vars(f);
    locs.push_back(localize(ideal, vars));
  }
  return locs;
}

SimplicialComplex complex_from_localizations(std::size_t d, const std::vector<MonomialIdeal>& locs,
                                             const Monomial& a) {
  std::vector<Face> faces;
  for (Face f = 0; f < locs.size(); ++f) {
    if (!contains(locs[f], a)) faces.push_back(f);
  }
  return SimplicialComplex(d, std::move(faces));
}

}  // namespace

SimplicialComplex delta_complex(const MonomialIdeal& ideal, const Monomial& a) {
  if (ideal.is_zero()) throw UndefinedSaturation("degree complex of the zero ideal");
  if (a.dim() != ideal.dim()) throw DimensionMismatch("degree has wrong dimension");
  return complex_from_localizations(ideal.dim(), all_localizations(ideal), a);
}

std::size_t local_cohomology_graded_dim(const MonomialIdeal& ideal, const Monomial& a, int t) {
  return reduced_betti(delta_complex(ideal, a), t - 1);
}

H0Count h0_length_takayama(const MonomialIdeal& ideal, const H0Options& options) {
  require_nonzero(ideal);
  H0Count result{0, H0Method::takayama, std::nullopt};
  if (options.witnesses) result.witnesses.emplace();
  auto box = enumeration_box(ideal, options.max_box_points);
  if (!box) return result;
  const auto locs = all_localizations(ideal);
  const std::size_t d = ideal.dim();
  std::vector<Point> hits;
  Natural total = 0;
  for_each_in_box(*box, [&](const Point& p) {
    Monomial a(std::vector<Natural>(p.begin(), p.end()));
    std::size_t dim = reduced_betti(complex_from_localizations(d, locs, a), -1);
    if (dim == 0) return;
    total += dim;
    if (options.witnesses) hits.push_back(p);
  });
  result.length = total;
  if (options.witnesses) result.witnesses = to_monomials(hits);
  return result;
}

std::optional<Natural> max_socle_degree(const MonomialIdeal& ideal, const H0Options& options) {
  require_nonzero(ideal);
  if (options.method == H0Method::staircase) {
    if (ideal.dim() != 2) throw PreconditionError("the staircase method requires d = 2");
    const auto& g = ideal.generators();
    std::optional<Natural> best;
    // Rectangle i is [a_i, a_{i+1}) x [b_g, b_i); its top corner is the max.
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      Natural deg = g[i + 1][0] - 1 + g[i][1] - 1;
      if (!best || deg > *best) best = deg;
    }
    return best;
  }
  auto box = enumeration_box(ideal, options.max_box_points);
  if (!box) return std::nullopt;
  DenseIdeal in_ideal(ideal);
  DenseIdeal in_sat(saturate(ideal));
  std::optional<std::int64_t> best;
  for_each_in_box(*box, [&](const Point& p) {
    if (!in_sat.contains(p.data()) || in_ideal.contains(p.data())) return;
    std::int64_t deg = 0;
    for (auto v : p) deg += v;
    if (!best || deg > *best) best = deg;
  });
  if (!best) return std::nullopt;
  return Natural(*best);
}

}  // namespace epsmult
