#include "conelab/double_description.hpp"

#include <algorithm>
#include <optional>

#include <boost/dynamic_bitset.hpp>

#include "conelab/errors.hpp"

namespace conelab {
namespace {

struct Ray {
  Vec v;
  boost::dynamic_bitset<> tight;  // constraints processed so far that vanish on v
};

bool contains_all(const boost::dynamic_bitset<>& super, const boost::dynamic_bitset<>& sub) {
  return sub.is_subset_of(super);
}

}  // namespace

DdResult double_description(std::size_t dim, std::span<const Vec> constraints) {
  const std::size_t m = constraints.size();
  for (const auto& a : constraints) {
    if (a.size() != dim) fail(ErrorKind::DimensionMismatch, "constraint length differs from dimension");
  }

  std::vector<Vec> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(Vec::unit(dim, i));
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const Vec& a = constraints[k];

    std::optional<std::size_t> pick;
    Rational a_pick;
    for (std::size_t i = 0; i < lineality.size(); ++i) {
      Rational v = dot(a, lineality[i]);
      if (!v.is_zero()) {
        pick = i;
        a_pick = std::move(v);
        break;
      }
    }

    if (pick) {
      // The constraint cuts the lineality space: one lineality direction
      // becomes a ray, everything else is projected onto a.x = 0 along it.
      Vec l0 = lineality[*pick];
      if (a_pick.sign() < 0) {
        l0 = -l0;
        a_pick = -a_pick;
      }
      std::vector<Vec> next_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == *pick) continue;
        const Rational v = dot(a, lineality[i]);
        Vec l = lineality[i];
        if (!v.is_zero()) l -= (v / a_pick) * l0;
        next_lin.push_back(normalize_line(l));
      }
      lineality = std::move(next_lin);
      for (auto& r : rays) {
        const Rational v = dot(a, r.v);
        if (!v.is_zero()) r.v = normalize_ray(r.v - (v / a_pick) * l0);
        r.tight.push_back(true);
      }
      Ray fresh{normalize_ray(l0), boost::dynamic_bitset<>(k + 1)};
      for (std::size_t j = 0; j < k; ++j) fresh.tight.set(j);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) val[i] = dot(a, rays[i].v);

    std::vector<Ray> next;
    next.reserve(rays.size());
    const std::size_t pointed_dim = dim - lineality.size();
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p].sign() <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n].sign() >= 0) continue;
        boost::dynamic_bitset<> common = rays[p].tight & rays[n].tight;
        if (pointed_dim >= 2 && common.count() + 2 < pointed_dim) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (contains_all(rays[o].tight, common)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec combo = val[p] * rays[n].v - val[n] * rays[p].v;
        common.push_back(true);
        next.push_back(Ray{normalize_ray(combo), std::move(common)});
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = val[i].sign();
      if (s < 0) continue;
      Ray r = std::move(rays[i]);
      r.tight.push_back(s == 0);
      next.push_back(std::move(r));
    }
    rays = std::move(next);
  }

  DdResult out;
  out.lineality = std::move(lineality);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.lineality.begin(), out.lineality.end());
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

PolyhedronVertices polyhedron_vertices(std::size_t dim, std::span<const Vec> normals, std::span<const Rational> rhs) {
  if (normals.size() != rhs.size()) fail(ErrorKind::DimensionMismatch, "normals and rhs differ in length");
  std::vector<Vec> lifted;
  lifted.reserve(normals.size() + 1);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != dim) fail(ErrorKind::DimensionMismatch, "normal length differs from dimension");
    Vec row = normals[i];
    row.push_back(-rhs[i]);
    lifted.push_back(std::move(row));
  }
  lifted.push_back(Vec::unit(dim + 1, dim));

  const DdResult dd = double_description(dim + 1, lifted);
  PolyhedronVertices out;
  out.has_lineality = !dd.lineality.empty();
  for (const auto& r : dd.rays) {
    const Rational& t = r[dim];
    Vec head(dim);
    for (std::size_t i = 0; i < dim; ++i) head[i] = r[i];
    if (t.is_zero()) {
      out.rays.push_back(std::move(head));
    } else {
      out.vertices.push_back(head * (Rational(1) / t));
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

}  // namespace conelab
