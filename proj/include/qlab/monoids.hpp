#pragma once

#include "qlab/pv_alg.hpp"

namespace qlab {

// Monoid on a module carrier: associative unital multiplication that
// preserves joins and the scalar action in each variable. The unit arrow
// V -> X is stored through its generator e; the full arrow is v -> act(v,e).
struct ModMonoid {
  VModPtr module;
  std::vector<Elem> mult;  // carrier x carrier -> carrier, row-major
  Elem unit;

  static LawReport check(const VModule& m, const std::vector<Elem>& mult,
                         Elem unit);
  ModMonoid(VModPtr module, std::vector<Elem> mult, Elem unit);
  Elem times(Elem x, Elem y) const {
    return mult[std::size_t(x) * module->size() + y];
  }
  bool operator==(const ModMonoid& o) const {
    return *module == *o.module && mult == o.mult && unit == o.unit;
  }
};

// Quantale morphism from a commutative base whose image commutes with the
// entire, possibly noncommutative, target.
struct CentralEmbedding {
  QuantalePtr source;
  QuantalePtr target;
  std::vector<Elem> map;

  static LawReport check(const Quantale& src, const Quantale& tgt,
                         const std::vector<Elem>& map);
  CentralEmbedding(QuantalePtr source, QuantalePtr target,
                   std::vector<Elem> map);
  Elem operator()(Elem v) const { return map[std::size_t(v)]; }
  bool operator==(const CentralEmbedding& o) const {
    return *source == *o.source && *target == *o.target && map == o.map;
  }
};

// Quantale carrying a base action that is both a module structure and a
// monoid homomorphism from the product monoid.
struct ActedQuantale {
  QuantalePtr base;
  QuantalePtr target;
  std::vector<Elem> rho;  // base x target -> target

  static LawReport check(const Quantale& base, const Quantale& tgt,
                         const std::vector<Elem>& rho);
  ActedQuantale(QuantalePtr base, QuantalePtr target, std::vector<Elem> rho);
  Elem act(Elem v, Elem q) const {
    return rho[std::size_t(v) * target->size() + q];
  }
  bool operator==(const ActedQuantale& o) const {
    return *base == *o.base && *target == *o.target && rho == o.rho;
  }
};

// The carrier with its multiplication is a quantale; the embedding sends v
// to act(v, unit) and is central by the balance laws.
CentralEmbedding monoid_to_central(const ModMonoid& m);

// Action v,q -> f(v) * q; multiplication and unit are the target's own.
ModMonoid central_to_monoid(const CentralEmbedding& f);

// The same action formula, packaged with its homomorphism laws.
ActedQuantale central_to_acted(const CentralEmbedding& f);

// Recovers the embedding as v -> act(v, unit of the target).
CentralEmbedding acted_to_central(const ActedQuantale& a);

// Plain finite monoid, used as the exponent of a convolution structure.
struct FiniteMonoid {
  int size = 0;
  std::vector<Elem> mult;  // size x size -> size, row-major
  Elem unit = 0;
};

// Tables over the monoid under convolution: (psi * phi)(m) is the join of
// psi(m1) (x) phi(m2) over factorizations m1 m2 = m. Computed as the direct
// image of the box table along the monoid multiplication; carrier is the
// free module on the exponent set.
ModMonoid free_monoid_algebra(QuantalePtr base, const FiniteMonoid& m);

// Monoid whose carrier is an algebra and whose multiplication is an algebra
// bimorphism; the transported form of a module monoid.
struct AlgMonoid {
  PVAlgebra algebra;
  std::vector<Elem> mult;
  Elem unit;
};

// Every station of the equivalence chain computed from any entry point,
// with the aggregated verification report. The acted station doubles as the
// handle for the representable multi-hom interpretation: carrier, order,
// multiplication, and action are exactly its data.
struct EquivChain {
  ActedQuantale acted;
  CentralEmbedding central;
  ModMonoid monoid;
  AlgMonoid algebra;
  LawReport report;
};

EquivChain equivalence_chain(const ActedQuantale& a);
EquivChain equivalence_chain(const CentralEmbedding& f);
EquivChain equivalence_chain(const ModMonoid& m);

// Fixtures for the chain driver: self-actions of the commutative builtins,
// the unique two-actions on several targets, an embedded chain action on the
// square lattice, and the convolution monoids on the two-element group.
const std::vector<ActedQuantale>& acted_catalog();

}  // namespace qlab
