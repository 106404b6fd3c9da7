#pragma once

#include <optional>

#include "qlab/vmat.hpp"

namespace qlab {

// Category enriched in a commutative quantale: square hom matrix with
// unit-dominated diagonal and composition absorbed into hom.
class VCategory {
 public:
  static LawReport check(const VMatrix& hom);
  explicit VCategory(VMatrix hom);

  const QuantalePtr& base() const { return hom_.base(); }
  int size() const { return hom_.src(); }
  Elem at(Elem x, Elem y) const { return hom_.at(x, y); }
  const VMatrix& hom() const { return hom_; }

  // Underlying order: x <= y iff unit <= hom(x,y).
  bool order_leq(Elem x, Elem y) const {
    return base()->leq(base()->unit(), at(x, y));
  }

  bool operator==(const VCategory& o) const { return hom_ == o.hom_; }

 private:
  VMatrix hom_;
};

using VCatPtr = std::shared_ptr<const VCategory>;

VCategory discrete_vcategory(QuantalePtr base, int n);
// V itself, enriched by its internal hom.
VCategory self_enriched(QuantalePtr base);
VCategory opposite(const VCategory& x);
// Object pairs (x,y) at index x*|Y|+y with hom tensored componentwise.
VCategory tensor_cat(const VCategory& x, const VCategory& y);

// Antisymmetry of the underlying order.
bool is_separated(const VCategory& x);

struct VFunctor {
  VCatPtr src;
  VCatPtr tgt;
  std::vector<int> map;

  static LawReport check(const VCategory& src, const VCategory& tgt,
                         const std::vector<int>& map);
  VFunctor(VCatPtr src, VCatPtr tgt, std::vector<int> map);
  int operator()(int x) const { return map[std::size_t(x)]; }
};

bool is_fully_faithful(const VFunctor& f);

// Hom of the functor category: meet over objects of target homs.
Elem functor_hom(const VFunctor& f, const VFunctor& g);

struct FunctorCategory {
  VCatPtr src, tgt;
  std::vector<std::vector<int>> carrier;  // functor tables, canonical order
  VCatPtr cat;
  int index_of(const std::vector<int>& table) const;
};
// Enumerates all functors; guarded by |tgt|^|src|.
FunctorCategory hom_category(VCatPtr x, VCatPtr y);

struct PresheafCategory {
  VCatPtr base_cat;
  std::vector<std::vector<Elem>> carrier;  // presheaf tables, canonical order
  VCatPtr cat;
  std::vector<int> yoneda;  // object -> presheaf index
  int index_of(const std::vector<Elem>& table) const;
  // Table of the representable at x: hom(-, x).
  std::vector<Elem> representable(Elem x) const;
};
// All V-valued presheaves on x; guarded by |V|^|x|.
PresheafCategory presheaf_category(VCatPtr x);

// hom(y(x), g) = g(x) for all x and g, and y is fully faithful.
LawReport yoneda_check(const PresheafCategory& dx);

// Bimodule between categories: matrix absorbed by both hom actions.
struct Distributor {
  VCatPtr src, tgt;
  VMatrix mat;

  static LawReport check(const VCategory& src, const VCategory& tgt,
                         const VMatrix& mat);
  Distributor(VCatPtr src, VCatPtr tgt, VMatrix mat);
};

// Graph distributors of a functor; forward is left adjoint to backward.
Distributor graph_forward(const VFunctor& f);   // f_*(x,y) = b(f(x), y)
Distributor graph_backward(const VFunctor& f);  // f^*(y,x) = b(y, f(x))

// Distributors X -|-> Y correspond to functors Y -> D(X).
VFunctor mate(const Distributor& j, const PresheafCategory& dx);
Distributor unmate(const VFunctor& fhat, const PresheafCategory& dx);

struct SupResult {
  bool cocomplete = false;
  std::vector<int> sup;  // presheaf index -> object, valid when cocomplete
  std::optional<std::vector<Elem>> witness;  // a presheaf with no sup
};

// Pointwise least upper bounds weighted by presheaves; base category must be
// separated so sups are unique on the nose.
SupResult find_sup(const PresheafCategory& dx);

// f preserves all weighted sups. Both ends must be cocomplete and separated.
bool is_cocontinuous(const VFunctor& f);

// Left extension of f : Y -> X along a fully faithful i : Y -> Z into a
// cocomplete separated X, via sups of pulled-back presheaves.
VFunctor extend_along(const VFunctor& f, const VFunctor& i);

}  // namespace qlab
