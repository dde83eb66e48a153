#include "conelab/infsup.hpp"

#include "conelab/errors.hpp"

namespace conelab {

InfSupExpr InfSupExpr::leaf(Vec v) {
  return InfSupExpr(std::make_shared<const Node>(Node{Kind::Leaf, std::move(v), {}}));
}

InfSupExpr InfSupExpr::branch(Kind kind, std::vector<InfSupExpr> children) {
  if (children.empty()) fail(ErrorKind::InvalidArgument, "sup/inf node needs at least one child");
  return InfSupExpr(std::make_shared<const Node>(Node{kind, Vec{}, std::move(children)}));
}

InfSupExpr InfSupExpr::sup(std::vector<InfSupExpr> children) { return branch(Kind::Sup, std::move(children)); }
InfSupExpr InfSupExpr::inf(std::vector<InfSupExpr> children) { return branch(Kind::Inf, std::move(children)); }

std::size_t InfSupExpr::dim() const {
  if (kind() == Kind::Leaf) return value().size();
  const std::size_t d = children().front().dim();
  for (const auto& c : children()) {
    if (c.dim() != d) fail(ErrorKind::DimensionMismatch, "expression leaves differ in length");
  }
  return d;
}

InfSupExpr scale(const InfSupExpr& e, const Rational& s) {
  if (s.sign() < 0) fail(ErrorKind::InvalidArgument, "negative scaling reverses the order");
  if (e.kind() == InfSupExpr::Kind::Leaf) return InfSupExpr::leaf(s * e.value());
  std::vector<InfSupExpr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(scale(c, s));
  return e.kind() == InfSupExpr::Kind::Sup ? InfSupExpr::sup(std::move(kids)) : InfSupExpr::inf(std::move(kids));
}

namespace {

InfSupExpr distribute(const InfSupExpr& over, const InfSupExpr& other, bool over_first) {
  std::vector<InfSupExpr> kids;
  kids.reserve(over.children().size());
  for (const auto& c : over.children()) kids.push_back(over_first ? combine(c, other) : combine(other, c));
  return over.kind() == InfSupExpr::Kind::Sup ? InfSupExpr::sup(std::move(kids)) : InfSupExpr::inf(std::move(kids));
}

}  // namespace

InfSupExpr combine(const InfSupExpr& a, const InfSupExpr& b) {
  using K = InfSupExpr::Kind;
  if (a.kind() == K::Inf) return distribute(a, b, true);
  if (b.kind() == K::Inf) return distribute(b, a, false);
  if (a.kind() == K::Sup) return distribute(a, b, true);
  if (b.kind() == K::Sup) return distribute(b, a, false);
  if (a.value().size() != b.value().size()) fail(ErrorKind::DimensionMismatch, "expression leaves differ in length");
  return InfSupExpr::leaf(a.value() + b.value());
}

}  // namespace conelab
