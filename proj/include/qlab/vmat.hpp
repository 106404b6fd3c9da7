#pragma once

#include "qlab/quantale.hpp"

namespace qlab {

// V-valued matrix r : X -|-> Y between finite carriers, entries r(x,y) in V.
// Composition joins over the middle carrier; the identity is unit-diagonal.
// Empty carriers are legal; joins over an empty middle give bottom.
class VMatrix {
 public:
  VMatrix(QuantalePtr base, int src, int dst, std::vector<Elem> entries);
  // Constant fill.
  VMatrix(QuantalePtr base, int src, int dst, Elem fill);

  static VMatrix identity(QuantalePtr base, int n);
  // Matrix of a function f : X -> Y: unit where y = f(x), bottom elsewhere.
  static VMatrix graph_of(QuantalePtr base, int src, int dst,
                          std::span<const int> f);
  static VMatrix bottom(QuantalePtr base, int src, int dst);

  const QuantalePtr& base() const { return base_; }
  int src() const { return src_; }
  int dst() const { return dst_; }
  Elem at(int x, int y) const { return entries_[std::size_t(x) * dst_ + y]; }

  VMatrix involute() const;  // r°(y,x) = r(x,y)
  VMatrix join_with(const VMatrix& other) const;

  // Pointwise order; also evaluates the residuation form
  // k <= meet of hom(r(x,y), r'(x,y)) and asserts the two agree.
  bool leq(const VMatrix& other) const;

  bool operator==(const VMatrix& o) const {
    return src_ == o.src_ && dst_ == o.dst_ && entries_ == o.entries_;
  }

  const std::vector<Elem>& entries() const { return entries_; }

 private:
  QuantalePtr base_;
  int src_, dst_;
  std::vector<Elem> entries_;
};

// Diagrammatic composition: r : X -|-> Y then s : Y -|-> Z, result X -|-> Z,
// entry (x,z) = join over y of tensor(r(x,y), s(y,z)).
VMatrix compose(const VMatrix& r, const VMatrix& s);

// Shared-base guard for binary matrix operations.
void require_same_base(const VMatrix& a, const VMatrix& b, const char* where);

}  // namespace qlab
