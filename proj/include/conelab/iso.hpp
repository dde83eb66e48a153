#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/monotone.hpp"
#include "conelab/order.hpp"
#include "conelab/vec.hpp"

namespace conelab {

/// Constructive description of a candidate order isomorphism
/// f : [a, inf)_C -> [b, inf)_K. Immutable and cheap to copy.
///
/// Kinds:
///  - Linear: x -> M x.
///  - Affine: x -> b + g(x - a) for an inner spec g with zero base points.
///  - Diagonal: sum_i t_i v_i -> sum_i g_i(t_i) w_i over a basis v and frame w.
///  - ProductLift: t r + w -> g(t) r + h(w) in the coordinates of a
///    disengaged split, with h a spec on the complementary subcone.
///  - Compose: applies its parts left to right.
///
/// Specs built by the checked factories carry a construction certificate;
/// the `_unchecked` factories exist to forge candidates that the battery
/// must reject.
class IsoSpec {
 public:
  enum class Kind { Linear, Affine, Diagonal, ProductLift, Compose };

  Kind kind() const noexcept { return impl_->kind; }
  const PolyhedralCone& source() const noexcept { return impl_->source; }
  const PolyhedralCone& target() const noexcept { return impl_->target; }
  const Vec& source_base() const noexcept { return impl_->source_base; }
  const Vec& target_base() const noexcept { return impl_->target_base; }
  /// Built by a checked factory from checked parts.
  bool certified() const noexcept { return impl_->certified; }
  /// invert() never approximates.
  bool exact() const noexcept { return impl_->exact; }
  /// Every monotone component is linear, so the whole map is affine.
  bool affine_by_construction() const noexcept { return impl_->affine; }

  const Matrix& matrix() const noexcept { return impl_->matrix; }
  const Matrix& inverse_matrix() const noexcept { return impl_->inverse_matrix; }
  /// Diagonal: columns v_i of the source basis, w_i of the target frame.
  const Matrix& basis() const noexcept { return impl_->basis; }
  const Matrix& frame() const noexcept { return impl_->frame; }
  const std::vector<MonotoneBijection>& maps() const noexcept { return impl_->maps; }
  /// Affine: the inner spec; ProductLift: the subcone spec; Compose: all parts.
  const std::vector<IsoSpec>& parts() const noexcept { return impl_->parts; }
  const DisengagedSplit& split() const noexcept { return impl_->split; }

  bool in_domain(const Vec& x) const;
  bool in_range(const Vec& y) const;

  /// Throws OutOfDomain.
  Vec eval(const Vec& x) const;
  /// Throws OutOfDomain; `exact` is cleared when an odd-power root was approximated.
  Vec invert(const Vec& y, bool* exact = nullptr) const;

  std::string describe() const;

  /// Representation shared by the factories.
  struct Impl {
    Kind kind = Kind::Linear;
    PolyhedralCone source;
    PolyhedralCone target;
    Vec source_base;
    Vec target_base;
    bool certified = false;
    bool exact = true;
    bool affine = true;
    Matrix matrix;
    Matrix inverse_matrix;
    Matrix basis;
    Matrix basis_inverse;  // left inverse
    Matrix frame;
    Matrix frame_inverse;  // left inverse
    std::vector<MonotoneBijection> maps;
    std::vector<IsoSpec> parts;
    DisengagedSplit split;
  };

 private:
  explicit IsoSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  Vec eval_unchecked(const Vec& x) const;
  Vec invert_unchecked(const Vec& y, bool& exact) const;

  std::shared_ptr<const Impl> impl_;

  friend IsoSpec make_identity(const PolyhedralCone& cone);
  friend IsoSpec make_linear_iso(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target);
  friend IsoSpec make_linear_iso_unchecked(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target);
  friend IsoSpec make_affine_iso(const IsoSpec& inner, const Vec& source_base, const Vec& target_base);
  friend IsoSpec make_diagonal_iso(const PolyhedralCone& source, const std::vector<Vec>& target_frame,
                                   const std::vector<MonotoneBijection>& maps);
  friend IsoSpec make_diagonal_iso_unchecked(const PolyhedralCone& source, const std::vector<Vec>& basis,
                                             const std::vector<Vec>& target_frame,
                                             const std::vector<MonotoneBijection>& maps,
                                             const PolyhedralCone& target);
  friend IsoSpec make_product_lift(const PolyhedralCone& cone, std::size_t ray_index, const MonotoneBijection& ray_map,
                                   const IsoSpec& sub);
  friend IsoSpec make_compose(const std::vector<IsoSpec>& parts);
};

IsoSpec make_identity(const PolyhedralCone& cone);

/// Throws InvalidArgument for a singular matrix, NotConeMap unless M maps the
/// source generators into the target and M^{-1} maps the target generators
/// into the source.
IsoSpec make_linear_iso(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target);
/// Skips the generator test (the matrix must still be invertible).
IsoSpec make_linear_iso_unchecked(const Matrix& m, const PolyhedralCone& source, const PolyhedralCone& target);

/// Translate an inner spec to f(x) = b + g(x - a) on [a, inf). The inner spec
/// must have zero base points.
IsoSpec make_affine_iso(const IsoSpec& inner, const Vec& source_base, const Vec& target_base);

/// Diagonal map over the extreme generators of a simplicial source; the
/// target is the cone spanned by the frame. Throws NotSimplicial,
/// MapCountMismatch, InvalidArgument (dependent frame or a map moving 0).
IsoSpec make_diagonal_iso(const PolyhedralCone& source, const std::vector<Vec>& target_frame,
                          const std::vector<MonotoneBijection>& maps);
/// Diagonal formula over an arbitrary basis of the source space with a
/// caller-supplied target cone; nothing is certified.
IsoSpec make_diagonal_iso_unchecked(const PolyhedralCone& source, const std::vector<Vec>& basis,
                                    const std::vector<Vec>& target_frame, const std::vector<MonotoneBijection>& maps,
                                    const PolyhedralCone& target);

/// Lift over the disengaged ray `ray_index`: the ray coordinate goes through
/// ray_map and the complementary coordinates through `sub`, whose source must
/// be the split subcone. Throws RayIsEngaged, InvalidArgument.
IsoSpec make_product_lift(const PolyhedralCone& cone, std::size_t ray_index, const MonotoneBijection& ray_map,
                          const IsoSpec& sub);

/// parts[k-1] after ... after parts[0]. Consecutive targets and sources must agree.
IsoSpec make_compose(const std::vector<IsoSpec>& parts);

}  // namespace conelab
