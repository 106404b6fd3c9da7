#pragma once

#include "qlab/suplat.hpp"
#include "qlab/vcat.hpp"

namespace qlab {

// Suplattice with a quantale action: unital, multiplicative, and
// join-preserving in each argument (binary and empty).
class VModule {
 public:
  static LawReport check(const Quantale& base, const FiniteLattice& carrier,
                         const std::vector<Elem>& action);
  VModule(QuantalePtr base, LatticePtr carrier, std::vector<Elem> action);

  const QuantalePtr& base() const { return base_; }
  const LatticePtr& carrier() const { return carrier_; }
  int size() const { return carrier_->size(); }
  Elem act(Elem v, Elem x) const { return action_[std::size_t(v) * size() + x]; }
  const std::vector<Elem>& action() const { return action_; }

  bool operator==(const VModule& o) const {
    return *base_ == *o.base_ && *carrier_ == *o.carrier_ && action_ == o.action_;
  }

 private:
  QuantalePtr base_;
  LatticePtr carrier_;
  std::vector<Elem> action_;
};

using VModPtr = std::shared_ptr<const VModule>;

// Equivariant sup-map between modules over one base.
struct VModuleMap {
  VModPtr src, tgt;
  std::vector<Elem> map;

  static LawReport check(const VModule& src, const VModule& tgt,
                         const std::vector<Elem>& map);
  VModuleMap(VModPtr src, VModPtr tgt, std::vector<Elem> map);
  Elem operator()(Elem x) const { return map[std::size_t(x)]; }
};

// V acting on itself by its multiplication.
VModule self_module(QuantalePtr base);
// The unique action of the two-element quantale on a suplattice.
VModule two_action(LatticePtr x);

// a(x,y) = join of { v : act(v,x) <= y }. The result is separated and
// cocomplete; the adjunction act(v,x) <= y iff v <= a(x,y) is asserted.
VCategory module_to_vcat(const VModule& m);

// Copowers of a cocomplete separated category: act(u,x) is the unique object
// with a(act(u,x), y) = hom(u, a(x,y)) for all y.
VModule vcat_to_module(const VCategory& x);

struct RoundtripResult {
  bool ok = true;
  std::string diff;  // first differing cell when not ok
};
RoundtripResult roundtrip_module(const VModule& m);
RoundtripResult roundtrip_vcat(const VCategory& x);

// Free module V (x)2 X with unit x -> pi(k,x). The adjunction triangles are
// verified on the instance at construction.
struct FreeModule {
  std::shared_ptr<const TensorSup> pairs;  // V (x)2 X
  VModPtr module;
  std::vector<Elem> unit;  // X -> carrier of pairs
};
FreeModule action_monad_apply(QuantalePtr base, LatticePtr x);

// Module tensor M (x)_V N: quotient of X (x)2 Y by the balancing congruence
// pi(act(v,x), y) ~ pi(x, act(v,y)), carrying the induced action.
struct ModTensor {
  std::shared_ptr<const TensorSup> pairs;  // X (x)2 Y
  SupQuotient quot;
  VModPtr module;

  Elem pi(Elem x, Elem y) const {
    return Elem(quot.class_of[std::size_t(pairs->pi(x, y))]);
  }
};
ModTensor tensor_mod(const VModule& m, const VModule& n);

// Iso V (x)_V M -> M induced by the action; asserted bijective, order- and
// action-preserving, with inverse x -> [pi(k,x)].
std::vector<Elem> left_unitor(const ModTensor& t, const VModule& m);

// All equivariant sup-maps m -> n, in the order enumerate_supmaps yields.
std::vector<std::vector<Elem>> enumerate_module_maps(const VModule& m,
                                                     const VModule& n);

// Universal property of tensor_mod against a probe module z: balanced
// equivariant bimorphisms X x Y -> Z factor uniquely through pi.
LawReport verify_tensor_mod_universal(const ModTensor& t, const VModule& m,
                                      const VModule& n, const VModule& z);

// Agreement of the two presentations of the powerset construction at one
// finite set: the free module on the subset lattice versus the pointwise
// table lattice. The comparison map is classified from the indicator
// bimorphism (v, A) -> (x -> v if x is in A, bottom otherwise).
struct PvIsoResult {
  std::shared_ptr<const TensorSup> pairs;  // V (x)2 P2(X)
  LatticePtr tables;                       // V^X, elements are table ranks
  std::vector<Elem> to_rank;               // pairs carrier -> table rank
  std::vector<Elem> from_rank;             // table rank -> pairs carrier
  LawReport report;
  bool ok() const { return report.ok(); }
};
PvIsoResult check_pv_iso(QuantalePtr base, int set_size);

}  // namespace qlab
