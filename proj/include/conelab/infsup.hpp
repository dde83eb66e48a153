#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "conelab/vec.hpp"

namespace conelab {

/// Finite tree of suprema and infima over vector leaves. Nodes are shared
/// and immutable, so copies are cheap.
class InfSupExpr {
 public:
  enum class Kind { Leaf, Sup, Inf };

  static InfSupExpr leaf(Vec v);
  /// Throws InvalidArgument for an empty child list.
  static InfSupExpr sup(std::vector<InfSupExpr> children);
  static InfSupExpr inf(std::vector<InfSupExpr> children);

  Kind kind() const noexcept { return node_->kind; }
  /// Leaf value; only meaningful for Kind::Leaf.
  const Vec& value() const noexcept { return node_->value; }
  const std::vector<InfSupExpr>& children() const noexcept { return node_->children; }
  /// Common length of all leaves; throws DimensionMismatch on ragged trees.
  std::size_t dim() const;

 private:
  struct Node {
    Kind kind;
    Vec value;
    std::vector<InfSupExpr> children;
  };
  explicit InfSupExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static InfSupExpr branch(Kind kind, std::vector<InfSupExpr> children);

  std::shared_ptr<const Node> node_;
};

/// Every leaf multiplied by s >= 0.
InfSupExpr scale(const InfSupExpr& e, const Rational& s);

/// Tree whose value is value(a) + value(b) whenever both are defined, built
/// by pushing the infima outward, then the suprema, and adding leaves.
InfSupExpr combine(const InfSupExpr& a, const InfSupExpr& b);

}  // namespace conelab
