#include "conelab/iso.hpp"

#include <algorithm>

#include "conelab/errors.hpp"
#include "conelab/linalg.hpp"

namespace conelab {
namespace {

void require_dim(const Vec& v, std::size_t d, const char* what) {
  if (v.size() != d) fail(ErrorKind::DimensionMismatch, std::string(what) + " has the wrong length");
}

Vec apply_maps(const std::vector<MonotoneBijection>& maps, const Vec& t) {
  Vec out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = maps[i].eval(t[i]);
  return out;
}

Vec head_tail(const Rational& head, const Vec& tail) {
  Vec out(tail.size() + 1);
  out[0] = head;
  for (std::size_t i = 0; i < tail.size(); ++i) out[i + 1] = tail[i];
  return out;
}

Vec tail_of(const Vec& v) { return Vec(std::vector<Rational>(v.begin() + 1, v.end())); }

}  // namespace

bool IsoSpec::in_domain(const Vec& x) const {
  return x.size() == source().dim() && leq(source(), source_base(), x);
}

bool IsoSpec::in_range(const Vec& y) const {
  return y.size() == target().dim() && leq(target(), target_base(), y);
}

Vec IsoSpec::eval(const Vec& x) const {
  if (!in_domain(x)) fail(ErrorKind::OutOfDomain, to_string(x) + " is outside the domain");
  return eval_unchecked(x);
}

Vec IsoSpec::invert(const Vec& y, bool* exact) const {
  if (!in_range(y)) fail(ErrorKind::OutOfDomain, to_string(y) + " is outside the range");
  bool ok = true;
  Vec x = invert_unchecked(y, ok);
  if (exact) *exact = ok;
  return x;
}

Vec IsoSpec::eval_unchecked(const Vec& x) const {
  const Impl& s = *impl_;
  switch (s.kind) {
    case Kind::Linear:
      return s.matrix * x;
    case Kind::Affine:
      return s.target_base + s.parts[0].eval_unchecked(x - s.source_base);
    case Kind::Diagonal:
      return s.frame * apply_maps(s.maps, s.basis_inverse * x);
    case Kind::ProductLift: {
      const Vec c = s.split.projection * x;
      return s.split.basis * head_tail(s.maps[0].eval(c[0]), s.parts[0].eval_unchecked(tail_of(c)));
    }
    case Kind::Compose: {
      Vec y = x;
      for (const auto& p : s.parts) y = p.eval_unchecked(y);
      return y;
    }
  }
  return x;
}

Vec IsoSpec::invert_unchecked(const Vec& y, bool& exact) const {
  const Impl& s = *impl_;
  switch (s.kind) {
    case Kind::Linear:
      return s.inverse_matrix * y;
    case Kind::Affine:
      return s.source_base + s.parts[0].invert_unchecked(y - s.target_base, exact);
    case Kind::Diagonal: {
      Vec t = s.frame_inverse * y;
      for (std::size_t i = 0; i < t.size(); ++i) {
        bool ok = true;
        t[i] = s.maps[i].invert(t[i], &ok);
        exact = exact && ok;
      }
      return s.basis * t;
    }
    case Kind::ProductLift: {
      const Vec c = s.split.projection * y;
      bool ok = true;
      Rational t = s.maps[0].invert(c[0], &ok);
      exact = exact && ok;
      return s.split.basis * head_tail(t, s.parts[0].invert_unchecked(tail_of(c), exact));
    }
    case Kind::Compose: {
      Vec x = y;
      for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) x = it->invert_unchecked(x, exact);
      return x;
    }
  }
  return y;
}

std::string IsoSpec::describe() const {
  const Impl& s = *impl_;
  auto maps_text = [&] {
    std::string t;
    for (std::size_t i = 0; i < s.maps.size(); ++i) t += (i ? ", " : "") + s.maps[i].describe();
    return t;
  };
  switch (s.kind) {
    case Kind::Linear:
      return s.matrix == Matrix::identity(s.matrix.rows()) ? "identity" : "linear";
    case Kind::Affine:
      return "affine[" + to_string(s.source_base) + " -> " + to_string(s.target_base) + "](" + s.parts[0].describe() + ")";
    case Kind::Diagonal:
      return "diagonal(" + maps_text() + ")";
    case Kind::ProductLift:
      return "product_lift(ray " + std::to_string(s.split.ray_index) + ", " + maps_text() + "; " + s.parts[0].describe() + ")";
    case Kind::Compose: {
      std::string t = "compose(";
      for (std::size_t i = 0; i < s.parts.size(); ++i) t += (i ? ", " : "") + s.parts[i].describe();
      return t + ")";
    }
  }
  return {};
}

IsoSpec make_identity(const PolyhedralCone& cone) {
  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::Linear;
  s->source = s->target = cone;
  s->source_base = s->target_base = Vec::zero(cone.dim());
  s->matrix = s->inverse_matrix = Matrix::identity(cone.dim());
  s->certified = true;
  return IsoSpec(std::move(s));
}

namespace {

std::shared_ptr<IsoSpec::Impl> linear_impl(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target) {
  const std::size_t d = source.dim();
  if (target.dim() != d || m.rows() != d || m.cols() != d) fail(ErrorKind::DimensionMismatch, "linear map shape");
  auto inv = inverse(m);
  if (!inv) fail(ErrorKind::InvalidArgument, "matrix is singular");
  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::Linear;
  s->source = source;
  s->target = target;
  s->source_base = s->target_base = Vec::zero(d);
  s->matrix = m;
  s->inverse_matrix = std::move(*inv);
  return s;
}

}  // namespace

IsoSpec make_linear_iso(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target) {
  auto s = linear_impl(m, source, target);
  for (const auto& g : source.generators()) {
    if (!contains(target, m * g)) fail(ErrorKind::NotConeMap, "image of generator " + to_string(g) + " leaves the target");
  }
  for (const auto& g : target.generators()) {
    if (!contains(source, s->inverse_matrix * g)) {
      fail(ErrorKind::NotConeMap, "preimage of generator " + to_string(g) + " leaves the source");
    }
  }
  s->certified = true;
  return IsoSpec(std::move(s));
}

IsoSpec make_linear_iso_unchecked(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target) {
  return IsoSpec(linear_impl(m, source, target));
}

IsoSpec make_affine_iso(const IsoSpec& inner, const Vec& source_base, const Vec& target_base) {
  require_dim(source_base, inner.source().dim(), "source base");
  require_dim(target_base, inner.target().dim(), "target base");
  if (!inner.source_base().is_zero() || !inner.target_base().is_zero()) {
    fail(ErrorKind::InvalidArgument, "inner spec of an affine spec must fix the apex");
  }
  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::Affine;
  s->source = inner.source();
  s->target = inner.target();
  s->source_base = source_base;
  s->target_base = target_base;
  s->certified = inner.certified();
  s->exact = inner.exact();
  s->affine = inner.affine_by_construction();
  s->parts = {inner};
  return IsoSpec(std::move(s));
}

namespace {

std::shared_ptr<IsoSpec::Impl> diagonal_impl(const PolyhedralCone& source, const std::vector<Vec>& basis,
                                             const std::vector<Vec>& frame, const std::vector<MonotoneBijection>& maps) {
  if (basis.empty()) fail(ErrorKind::InvalidArgument, "diagonal map needs at least one generator");
  if (maps.size() != basis.size() || frame.size() != basis.size()) {
    fail(ErrorKind::MapCountMismatch, "need one map and one frame vector per generator");
  }
  const std::size_t d = source.dim();
  for (const auto& v : basis) require_dim(v, d, "basis vector");
  const std::size_t e = frame.front().size();
  for (const auto& w : frame) require_dim(w, e, "frame vector");
  if (rank(frame, e) != frame.size()) fail(ErrorKind::InvalidArgument, "target frame is linearly dependent");
  for (const auto& g : maps) {
    if (!g.fixes_zero()) fail(ErrorKind::InvalidArgument, "diagonal maps must fix 0");
  }
  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::Diagonal;
  s->source = source;
  s->source_base = Vec::zero(d);
  s->target_base = Vec::zero(e);
  s->basis = Matrix::from_columns(basis, d);
  s->basis_inverse = left_inverse(s->basis);
  s->frame = Matrix::from_columns(frame, e);
  s->frame_inverse = left_inverse(s->frame);
  s->maps = maps;
  s->exact = std::all_of(maps.begin(), maps.end(), [](const auto& g) { return g.exact_inverse(); });
  s->affine = std::all_of(maps.begin(), maps.end(), [](const auto& g) { return g.is_linear(); });
  return s;
}

}  // namespace

IsoSpec make_diagonal_iso(const PolyhedralCone& source, const std::vector<Vec>& target_frame,
                          const std::vector<MonotoneBijection>& maps) {
  const auto& rays = source.extreme_rays();
  if (rays.empty() || rank(rays, source.dim()) != rays.size()) {
    fail(ErrorKind::NotSimplicial, "source extreme generators are not linearly independent");
  }
  auto s = diagonal_impl(source, rays, target_frame, maps);
  s->target = PolyhedralCone::from_generators(target_frame.front().size(), target_frame);
  s->certified = true;
  return IsoSpec(std::move(s));
}

IsoSpec make_diagonal_iso_unchecked(const PolyhedralCone& source, const std::vector<Vec>& basis,
                                    const std::vector<Vec>& target_frame, const std::vector<MonotoneBijection>& maps,
                                    const PolyhedralCone& target) {
  if (rank(basis, source.dim()) != basis.size()) fail(ErrorKind::InvalidArgument, "basis is linearly dependent");
  auto s = diagonal_impl(source, basis, target_frame, maps);
  if (target.dim() != target_frame.front().size()) fail(ErrorKind::DimensionMismatch, "target cone dimension");
  s->target = target;
  return IsoSpec(std::move(s));
}

IsoSpec make_product_lift(const PolyhedralCone& cone, std::size_t ray_index, const MonotoneBijection& ray_map,
                          const IsoSpec& sub) {
  DisengagedSplit split = disengaged_split(cone, ray_index);
  if (!ray_map.fixes_zero()) fail(ErrorKind::InvalidArgument, "ray map must fix 0");
  if (!(sub.source() == split.subcone)) fail(ErrorKind::InvalidArgument, "sub spec must act on the split subcone");
  if (!sub.source_base().is_zero() || !sub.target_base().is_zero()) {
    fail(ErrorKind::InvalidArgument, "sub spec must fix the apex");
  }
  const std::size_t d = cone.dim();
  if (sub.target().dim() != d - 1) fail(ErrorKind::DimensionMismatch, "sub spec target has the wrong dimension");

  std::vector<Vec> gens{split.ray};
  for (const auto& k : sub.target().generators()) gens.push_back(split.basis * head_tail(Rational(0), k));

  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::ProductLift;
  s->source = cone;
  s->target = PolyhedralCone::from_generators(d, gens);
  s->source_base = s->target_base = Vec::zero(d);
  s->certified = sub.certified();
  s->exact = ray_map.exact_inverse() && sub.exact();
  s->affine = ray_map.is_linear() && sub.affine_by_construction();
  s->maps = {ray_map};
  s->parts = {sub};
  s->split = std::move(split);
  return IsoSpec(std::move(s));
}

IsoSpec make_compose(const std::vector<IsoSpec>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "empty composition");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!(parts[i].target() == parts[i + 1].source()) || parts[i].target_base() != parts[i + 1].source_base()) {
      fail(ErrorKind::InvalidArgument, "composition parts do not chain at position " + std::to_string(i));
    }
  }
  auto s = std::make_shared<IsoSpec::Impl>();
  s->kind = IsoSpec::Kind::Compose;
  s->source = parts.front().source();
  s->target = parts.back().target();
  s->source_base = parts.front().source_base();
  s->target_base = parts.back().target_base();
  s->certified = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.certified(); });
  s->exact = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.exact(); });
  s->affine = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.affine_by_construction(); });
  s->parts = parts;
  return IsoSpec(std::move(s));
}

}  // namespace conelab
