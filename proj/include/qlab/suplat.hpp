#pragma once

#include <utility>

#include "qlab/quantale.hpp"

namespace qlab {

// Free suplattice on a finite set: full powerset, element ids are bitmasks.
// Guarded: the carrier 2^set_size must fit the lattice ceiling.
FiniteLattice free_suplattice(int set_size);

// Join-preserving map between finite suplattices.
struct SupMap {
  LatticePtr src;
  LatticePtr tgt;
  std::vector<Elem> map;

  static LawReport check(const FiniteLattice& src, const FiniteLattice& tgt,
                         const std::vector<Elem>& map);
  SupMap(LatticePtr src, LatticePtr tgt, std::vector<Elem> map);
  Elem operator()(Elem x) const { return map[std::size_t(x)]; }
};

SupMap compose_sup(const SupMap& f, const SupMap& g);  // f then g

// Join preservation of every slice of a table f : X x Y -> Z.
LawReport check_bimorphism2(const FiniteLattice& x, const FiniteLattice& y,
                            const FiniteLattice& z, std::span<const Elem> f);

// Tensor of suplattices, modeled as the lattice of bi-closed subsets
// C of X x Y:  for all A,B:  A x B subset of C  iff  (join A, join B) in C.
// Equivalent local form used by the closure engine: C contains the bottom
// cross, is down-closed, and is closed under binary joins within a row and
// within a column. Every bi-closed set is the join of the generators
// pi(x,y), so enumeration (<= 16 cells) and generator-closure (<= 64 cells)
// build the same carrier.
class TensorSup {
 public:
  TensorSup(LatticePtr x, LatticePtr y);

  const LatticePtr& left() const { return x_; }
  const LatticePtr& right() const { return y_; }
  const FiniteLattice& lattice() const { return *carrier_; }
  const LatticePtr& lattice_ptr() const { return carrier_; }

  // The universal bimorphism.
  Elem pi(Elem x, Elem y) const { return pi_[std::size_t(x) * y_->size() + y]; }
  // Cells of the bi-closed subset behind a carrier element.
  std::uint64_t cells_of(Elem t) const { return masks_[std::size_t(t)]; }
  int cell_count() const { return x_->size() * y_->size(); }
  bool enumerated() const { return enumerated_; }

  // Factor a bimorphism through pi; validates the input and the factoring.
  SupMap classify(LatticePtr z, std::span<const Elem> f) const;

 private:
  LatticePtr x_, y_;
  std::vector<std::uint64_t> masks_;  // carrier, sorted ascending
  std::vector<Elem> pi_;
  LatticePtr carrier_;
  bool enumerated_;

  std::uint64_t close(std::uint64_t mask) const;
  friend LawReport verify_tensor_universal(const TensorSup&, LatticePtr);
};

// Quotient of a suplattice by the congruence generated by seed pairs.
// Classes are join-closed; class ids are ordered by their maximal element.
struct SupQuotient {
  LatticePtr over;
  std::vector<int> class_of;
  std::vector<Elem> class_max;
  LatticePtr quotient;

  SupMap projection() const;
};

SupQuotient quotient_by_pairs(LatticePtr b,
                              const std::vector<std::pair<Elem, Elem>>& seeds);

// Coequalizer of a parallel pair in suplattices.
SupQuotient coequalize(const SupMap& f, const SupMap& g);

// Enumerate every sup-map src -> tgt in canonical order. Uses direct table
// filtering when |tgt|^|src| fits the guard, else right-adjoint enumeration
// (meet-preserving maps tgt -> src), else raises resource_error.
std::vector<SupMap> enumerate_supmaps(LatticePtr src, LatticePtr tgt);

// Brute-force universal property: every bimorphism into z factors uniquely.
LawReport verify_tensor_universal(const TensorSup& t, LatticePtr z);

}  // namespace qlab
