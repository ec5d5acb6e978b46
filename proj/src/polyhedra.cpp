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

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "epsmult/error.hpp"

namespace epsmult {

namespace mp = boost::multiprecision;

bool Facet::bounded() const {
  return std::all_of(normal.begin(), normal.end(), [](const Natural& v) { return v > 0; });
}

namespace {

void require_proper(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) throw PreconditionError("Newton polyhedron of the zero ideal");
  if (ideal.is_unit()) throw PreconditionError("Newton polyhedron of the unit ideal");
}

using IntVector = std::vector<Natural>;

Natural dot(const IntVector& a, const IntVector& b) {
  Natural s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector exponents_of(const Monomial& m) { return IntVector(m.exponents().begin(), m.exponents().end()); }

// Generalized cross product of d-1 vectors in Z^d: the cofactor vector,
// orthogonal to every row. Zero iff the rows are dependent.
IntVector cofactor_normal(const std::vector<IntVector>& rows, std::size_t d) {
  IntVector nu(d);
  for (std::size_t k = 0; k < d; ++k) {
    RationalMatrix minor;
    for (const auto& r : rows) {
      RationalVector row;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) row.emplace_back(r[j]);
      }
      minor.push_back(std::move(row));
    }
    Rational det = minor.empty() ? Rational(1) : determinant(std::move(minor));
    Natural v = mp::numerator(det);
    nu[k] = (k % 2 == 0) ? v : Natural(-v);
  }
  return nu;
}

// Orients nu into the nonnegative orthant and makes it primitive; nullopt
// when nu is zero or has mixed signs.
std::optional<IntVector> orient(IntVector nu) {
  bool pos = false, neg = false;
  for (const auto& v : nu) {
    pos |= v > 0;
    neg |= v < 0;
  }
  if (pos == neg) return std::nullopt;
  Natural g = 0;
  for (auto& v : nu) {
    if (neg) v = -v;
    g = mp::gcd(g, v);
  }
  for (auto& v : nu) v /= g;
  return nu;
}

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

std::size_t affine_rank(const std::vector<RationalVector>& pts, const std::vector<RationalVector>& dirs = {}) {
  RationalMatrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector row(pts[i].size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(row));
  }
  for (const auto& r : dirs) m.push_back(r);
  return rank(std::move(m));
}

}  // namespace

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& ideal) {
  require_proper(ideal);
  const std::size_t d = ideal.dim();
  std::vector<IntVector> points;
  for (const auto& g : ideal.generators()) points.push_back(exponents_of(g));
  const std::size_t g = points.size();

  // A facet hyperplane passes through a base generator and d-1 further
  // independent directions drawn from later generators and the unit rays.
  std::set<std::pair<IntVector, Natural>> seen;
  std::vector<Facet> facets;
  for (std::size_t base = 0; base < g; ++base) {
    const std::size_t others = g - base - 1;
    for_each_combination(others + d, d - 1, [&](const std::vector<std::size_t>& pick) {
      std::vector<IntVector> dirs;
      for (std::size_t k : pick) {
        if (k < others) {
          IntVector diff(d);
          for (std::size_t j = 0; j < d; ++j) diff[j] = points[base + 1 + k][j] - points[base][j];
          dirs.push_back(std::move(diff));
        } else {
          IntVector ray(d, Natural(0));
          ray[k - others] = 1;
          dirs.push_back(std::move(ray));
        }
      }
      auto nu = orient(cofactor_normal(dirs, d));
      if (!nu) return;
      Natural offset = dot(*nu, points[base]);
      if (!seen.emplace(*nu, offset).second) return;
      for (const auto& p : points) {
        if (dot(*nu, p) < offset) return;
      }
      facets.push_back(Facet{std::move(*nu), std::move(offset)});
    });
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });

  NewtonPolyhedron np;
  np.dim = d;
  np.facets = std::move(facets);
  for (const auto& p : points) {
    RationalMatrix tight;
    for (const auto& f : np.facets) {
      if (dot(f.normal, p) == f.offset) tight.push_back(to_rational(f.normal));
    }
    if (rank(std::move(tight)) == d) np.vertices.push_back(to_rational(p));
  }
  std::sort(np.vertices.begin(), np.vertices.end());
  np.incidence.assign(np.facets.size(), std::vector<bool>(np.vertices.size(), false));
  for (std::size_t f = 0; f < np.facets.size(); ++f) {
    const RationalVector normal = to_rational(np.facets[f].normal);
    for (std::size_t v = 0; v < np.vertices.size(); ++v) {
      Rational s = 0;
      for (std::size_t j = 0; j < d; ++j) s += normal[j] * np.vertices[v][j];
      np.incidence[f][v] = (s == Rational(np.facets[f].offset));
    }
  }
  return np;
}

std::vector<PolyhedronFace> faces(const NewtonPolyhedron& np) {
  const std::size_t d = np.dim;
  using Key = std::pair<std::vector<bool>, std::vector<bool>>;  // (vertices, rays)
  std::vector<Key> facet_keys;
  for (std::size_t f = 0; f < np.facets.size(); ++f) {
    std::vector<bool> rays(d);
    for (std::size_t i = 0; i < d; ++i) rays[i] = np.facets[f].normal[i] == 0;
    facet_keys.emplace_back(np.incidence[f], std::move(rays));
  }
  std::set<Key> seen(facet_keys.begin(), facet_keys.end());
  std::vector<Key> queue(facet_keys.begin(), facet_keys.end());
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& fk : facet_keys) {
      Key next = queue[q];
      bool nonempty = false;
      for (std::size_t v = 0; v < next.first.size(); ++v) {
        next.first[v] = next.first[v] && fk.first[v];
        nonempty |= next.first[v];
      }
      if (!nonempty) continue;
      for (std::size_t i = 0; i < d; ++i) next.second[i] = next.second[i] && fk.second[i];
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<PolyhedronFace> out;
  for (const auto& [vmask, rmask] : queue) {
    PolyhedronFace face;
    std::vector<RationalVector> pts, dirs;
    for (std::size_t v = 0; v < vmask.size(); ++v) {
      if (!vmask[v]) continue;
      face.vertices.push_back(v);
      pts.push_back(np.vertices[v]);
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (!rmask[i]) continue;
      face.rays.push_back(i);
      RationalVector e(d, Rational(0));
      e[i] = 1;
      dirs.push_back(std::move(e));
    }
    face.dimension = affine_rank(pts, dirs);
    out.push_back(std::move(face));
  }
  return out;
}

std::size_t analytic_spread(const MonomialIdeal& ideal) {
  NewtonPolyhedron np = newton_polyhedron(ideal);
  std::size_t best = 0;  // vertices are bounded faces of dimension 0
  for (const auto& f : faces(np)) {
    if (f.bounded()) best = std::max(best, f.dimension);
  }
  return best + 1;
}

// ---------------------------------------------------------------------------
// Volumes

namespace {

struct VPolytope {
  std::vector<RationalVector> vertices;
  std::vector<std::vector<bool>> tight;  // tight[v][constraint]
};

Rational evaluate(const HalfSpace& h, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += h.normal[j] * x[j];
  return s;
}

VPolytope enumerate_vertices(std::size_t d, const std::vector<HalfSpace>& cons) {
  std::set<RationalVector> found;
  for_each_combination(cons.size(), d, [&](const std::vector<std::size_t>& pick) {
    RationalMatrix a;
    RationalVector b;
    for (std::size_t k : pick) {
      a.push_back(cons[k].normal);
      b.push_back(cons[k].offset);
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& h : cons) {
      if (evaluate(h, *x) < h.offset) return;
    }
    found.insert(std::move(*x));
  });
  VPolytope poly;
  poly.vertices.assign(found.begin(), found.end());
  for (const auto& v : poly.vertices) {
    std::vector<bool> t(cons.size());
    for (std::size_t k = 0; k < cons.size(); ++k) t[k] = evaluate(cons[k], v) == cons[k].offset;
    poly.tight.push_back(std::move(t));
  }
  return poly;
}

class PullingTriangulation {
 public:
  PullingTriangulation(std::size_t d, const VPolytope& poly, std::size_t constraints)
      : d_(d), poly_(poly), constraints_(constraints) {}

  // Sum of |det| over the simplices of a pulling triangulation, where each
  // face is coned from its lowest-index vertex over its facets that miss it.
  Rational scaled_volume(const std::vector<std::size_t>& face, std::size_t k) {
    if (k == 0) {
      chain_.push_back(face.front());
      Rational v = simplex_det();
      chain_.pop_back();
      return v;
    }
    const std::size_t apex = face.front();
    chain_.push_back(apex);
    Rational total = 0;
    std::set<std::vector<std::size_t>> visited;
    for (std::size_t c = 0; c < constraints_; ++c) {
      if (poly_.tight[apex][c]) continue;
      std::vector<std::size_t> sub;
      for (std::size_t v : face) {
        if (poly_.tight[v][c]) sub.push_back(v);
      }
      if (sub.size() < k || !visited.insert(sub).second) continue;
      if (dimension(sub) != k - 1) continue;
      total += scaled_volume(sub, k - 1);
    }
    chain_.pop_back();
    return total;
  }

  std::size_t dimension(const std::vector<std::size_t>& idx) const {
    std::vector<RationalVector> pts;
    for (std::size_t v : idx) pts.push_back(poly_.vertices[v]);
    return affine_rank(pts);
  }

 private:
  Rational simplex_det() const {
    RationalMatrix m;
    const auto& origin = poly_.vertices[chain_.front()];
    for (std::size_t i = 1; i < chain_.size(); ++i) {
      RationalVector row(d_);
      for (std::size_t j = 0; j < d_; ++j) row[j] = poly_.vertices[chain_[i]][j] - origin[j];
      m.push_back(std::move(row));
    }
    Rational det = determinant(std::move(m));
    return det < 0 ? Rational(-det) : det;
  }

  std::size_t d_;
  const VPolytope& poly_;
  std::size_t constraints_;
  std::vector<std::size_t> chain_;
};

}  // namespace

Rational polytope_volume(std::size_t d, const std::vector<HalfSpace>& constraints) {
  VPolytope poly = enumerate_vertices(d, constraints);
  if (poly.vertices.size() < d + 1) return 0;
  std::vector<std::size_t> all(poly.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  PullingTriangulation tri(d, poly, constraints.size());
  if (tri.dimension(all) < d) return 0;
  return tri.scaled_volume(all, d) / Rational(factorial(d));
}

OutRegionReport out_region(const MonomialIdeal& ideal) {
  NewtonPolyhedron np = newton_polyhedron(ideal);
  const std::size_t d = np.dim;

  // Any point of the relaxed region below a bounded facet has every
  // coordinate at most offset / min(normal).
  std::optional<Rational> reach;
  for (const auto& f : np.facets) {
    if (!f.bounded()) continue;
    Natural lo = *std::min_element(f.normal.begin(), f.normal.end());
    Rational r(f.offset, lo);
    if (!reach || r > *reach) reach = r;
  }
  OutRegionReport report;
  if (!reach) {
    report.volume = 0;
    report.epsilon = 0;
    report.box_bound = 1;
    return report;
  }
  report.box_bound = *reach + 1;

  std::vector<HalfSpace> box;
  for (std::size_t i = 0; i < d; ++i) {
    RationalVector lo(d, Rational(0)), hi(d, Rational(0));
    lo[i] = 1;
    hi[i] = -1;
    box.push_back({std::move(lo), Rational(0)});
    box.push_back({std::move(hi), -report.box_bound});
  }
  std::vector<HalfSpace> relaxed = box, polyhedron = box;
  for (const auto& f : np.facets) {
    HalfSpace h{to_rational(f.normal), Rational(f.offset)};
    if (!f.bounded()) relaxed.push_back(h);
    polyhedron.push_back(std::move(h));
  }
  report.volume = polytope_volume(d, relaxed) - polytope_volume(d, polyhedron);
  report.epsilon = report.volume * Rational(factorial(d));
  return report;
}

}  // namespace epsmult
