#pragma once

#include "qlab/vmod.hpp"

namespace qlab {

// V^n with the pointwise order; elements are mixed-radix ranks.
FiniteLattice power_lattice(const FiniteLattice& base, int exponent);

// Direct image along f : X -> Y of a table phi in V^X:
// out(y) = join over f^-1(y) of phi(x).
std::vector<Elem> pv_apply(const Quantale& v, const std::vector<int>& f, int tgt_size,
                           std::span<const Elem> phi);

// k at x, bottom elsewhere.
std::vector<Elem> pv_unit(const Quantale& v, int set_size, Elem x);

// n_X(Phi)(x) = join over phi of Phi(phi) (x) phi(x). Phi is indexed by the
// ranks of V^X in canonical order.
std::vector<Elem> pv_mult(const Quantale& v, int set_size, std::span<const Elem> big);

// Rank-level tables of the unit and multiplication; guarded enumerations.
std::vector<Elem> pv_unit_ranks(const Quantale& v, int set_size);
std::vector<Elem> pv_mult_ranks(const Quantale& v, int set_size);

// Functor and monad laws on one instance. Units and functoriality sweep their
// whole domains; associativity sweeps the scaled-singleton family, plus the
// full space when it is small or exhaustive forces it (guarded).
LawReport check_pv_monad(QuantalePtr v, int set_size, bool exhaustive = false);

// Eilenberg-Moore algebra alpha : V^X -> X for the enriched powerset monad.
// The unit law is always swept in full; the associativity law defaults to the
// scaled-singleton family v-at-phi, which join-generates the rest, with the
// exhaustive sweep running automatically when small and on demand otherwise.
class PVAlgebra {
 public:
  static LawReport check(const Quantale& base, int set_size,
                         const std::vector<Elem>& alpha, bool exhaustive = false);
  PVAlgebra(QuantalePtr base, int set_size, std::vector<Elem> alpha,
            bool exhaustive = false);

  const QuantalePtr& base() const { return base_; }
  int size() const { return n_; }
  std::int64_t table_size() const { return std::int64_t(alpha_.size()); }
  Elem apply_rank(std::int64_t r) const { return alpha_[std::size_t(r)]; }
  Elem apply(std::span<const Elem> phi) const;
  const std::vector<Elem>& alpha() const { return alpha_; }

  bool operator==(const PVAlgebra& o) const {
    return *base_ == *o.base_ && n_ == o.n_ && alpha_ == o.alpha_;
  }

 private:
  QuantalePtr base_;
  int n_;
  std::vector<Elem> alpha_;
};

// Free algebra on a set: carrier V^n, structure map n_X.
PVAlgebra free_algebra(QuantalePtr v, int set_size);

// alpha(psi) = Sup(presheafification of psi); inverse of cocomplete_from_algebra.
PVAlgebra algebra_from_cocomplete(const VCategory& x);
VCategory cocomplete_from_algebra(const PVAlgebra& a);

// Algebra <-> module transport: order from binary joins alpha(k-on-{x,y}),
// action from scaled singletons alpha(v-at-x); back via weighted joins.
VModule algebra_to_module(const PVAlgebra& a);
PVAlgebra module_to_algebra(const VModule& m);

// psi (x) phi on the product set, (x,y) at index x*ny + y.
std::vector<Elem> box(const Quantale& v, std::span<const Elem> psi,
                      std::span<const Elem> phi);

// Strength st(x,phi) = u(x) box phi, costrength st'(psi,y) = psi box u(y),
// double strength dst = box. Verifies the strong-monad diagrams, the
// costrength symmetry, the commutativity square, and dst agreement.
LawReport strength_suite(QuantalePtr v, int nx, int ny);

// g(alpha(phi)) = beta(direct image of phi along g), for every phi.
bool is_algebra_morphism(const PVAlgebra& a, const PVAlgebra& b,
                         const std::vector<int>& g);

// f : X x Y -> Z between algebra carriers, f(x,y) at index x*ny + y.
bool is_bimorphism_componentwise(const PVAlgebra& a, const PVAlgebra& b,
                                 const PVAlgebra& c, const std::vector<int>& f);
// Strength-square form; agreement with the componentwise form is asserted.
bool is_bimorphism_strength(const PVAlgebra& a, const PVAlgebra& b,
                            const PVAlgebra& c, const std::vector<int>& f);

// Algebra tensor, computed by transport through the module tensor.
struct AlgTensor {
  PVAlgebra algebra;
  std::vector<Elem> pi;  // X x Y -> carrier, x*ny + y
  ModTensor mod;
};
AlgTensor tensor_alg(const PVAlgebra& a, const PVAlgebra& b);

// The unique algebra morphism fbar with fbar(pi(x,y)) = f(x,y); the input
// must be a bimorphism into c.
std::vector<int> classify_bimorphism(const AlgTensor& t, const PVAlgebra& a,
                                     const PVAlgebra& b, const PVAlgebra& c,
                                     const std::vector<int>& f);

// Direct coequalizer oracle at micro sizes: quotients the free algebra on
// X x Y by the fork congruence and matches it against tensor_alg.
LawReport verify_tensor_alg(const PVAlgebra& a, const PVAlgebra& b);

}  // namespace qlab
