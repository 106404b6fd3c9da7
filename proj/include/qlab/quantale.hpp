#pragma once

#include <memory>
#include <optional>

#include "qlab/common.hpp"

namespace qlab {

// Finite complete lattice over carrier {0..n-1}, given by its full order table.
// Completeness is certified by binary joins plus a bottom; the exhaustive
// all-subsets sweep is available behind a flag for small carriers.
class FiniteLattice {
 public:
  static LawReport check(int size, const std::vector<std::uint8_t>& leq,
                         bool exhaustive_subsets = false);

  FiniteLattice(int size, std::vector<std::uint8_t> leq);

  int size() const { return size_; }
  bool leq(Elem a, Elem b) const { return leq_[std::size_t(a) * size_ + b] != 0; }
  Elem join(Elem a, Elem b) const { return join_[std::size_t(a) * size_ + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[std::size_t(a) * size_ + b]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  Elem join_of(std::span<const Elem> xs) const {
    Elem r = bottom_;
    for (Elem x : xs) r = join(r, x);
    return r;
  }
  Elem meet_of(std::span<const Elem> xs) const {
    Elem r = top_;
    for (Elem x : xs) r = meet(r, x);
    return r;
  }

  bool is_chain() const;
  bool operator==(const FiniteLattice& o) const {
    return size_ == o.size_ && leq_ == o.leq_;
  }

  const std::vector<std::uint8_t>& leq_table() const { return leq_; }

 private:
  int size_;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> join_, meet_;
  Elem bottom_, top_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

// Commutative unital quantale: complete lattice with a join-preserving
// multiplication. Residuation hom(v,u) = join{w : v*w <= u} is precomputed and
// satisfies the adjunction v*w <= u iff w <= hom(v,u).
//
// Non-commutative tables are accepted but flagged; enriched constructions
// reject such a base while morphism targets may use it.
class Quantale {
 public:
  static LawReport check(const FiniteLattice& lat, const std::vector<Elem>& tensor,
                         Elem unit);

  Quantale(FiniteLattice lat, std::vector<Elem> tensor, Elem unit,
           std::string name = "", std::vector<std::string> elem_names = {});

  const FiniteLattice& lattice() const { return lat_; }
  int size() const { return lat_.size(); }
  Elem tensor(Elem a, Elem b) const { return tensor_[std::size_t(a) * size() + b]; }
  // Internal hom / residual: largest w with tensor(v,w) <= u.
  Elem hom(Elem v, Elem u) const { return hom_[std::size_t(v) * size() + u]; }
  Elem unit() const { return unit_; }
  Elem bottom() const { return lat_.bottom(); }
  Elem top() const { return lat_.top(); }
  bool leq(Elem a, Elem b) const { return lat_.leq(a, b); }
  Elem join(Elem a, Elem b) const { return lat_.join(a, b); }
  Elem meet(Elem a, Elem b) const { return lat_.meet(a, b); }

  bool commutative() const { return commutative_; }
  // Unit differs from bottom; degenerate one-point quantales are legal but noted.
  bool nontrivial() const { return unit_ != lat_.bottom(); }

  const std::string& name() const { return name_; }
  const std::string& elem_name(Elem e) const { return elem_names_[std::size_t(e)]; }
  const std::vector<std::string>& elem_names() const { return elem_names_; }

  const std::vector<Elem>& tensor_table() const { return tensor_; }

  bool operator==(const Quantale& o) const {
    return lat_ == o.lat_ && tensor_ == o.tensor_ && unit_ == o.unit_;
  }

 private:
  FiniteLattice lat_;
  std::vector<Elem> tensor_;
  std::vector<Elem> hom_;
  Elem unit_;
  bool commutative_;
  std::string name_;
  std::vector<std::string> elem_names_;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

// Throws input_error unless q is commutative; call sites are the enriched
// constructions that require a commutative base.
void require_commutative_base(const Quantale& q, const char* where);

struct QuantaleMorphism {
  QuantalePtr source;
  QuantalePtr target;
  std::vector<Elem> map;

  static LawReport check(const Quantale& src, const Quantale& tgt,
                         const std::vector<Elem>& map);
  Elem operator()(Elem v) const { return map[std::size_t(v)]; }
};

// --- builtin catalog ---

QuantalePtr quantale_two();
QuantalePtr quantale_chain_min(int n);
QuantalePtr quantale_lukasiewicz(int n);
QuantalePtr quantale_bool_square();
// Join-preserving endomaps of a lattice under composition; non-commutative in
// general, so usable only as a morphism target.
QuantalePtr quantale_endo(const FiniteLattice& lat, std::string name);

struct CatalogEntry {
  std::string name;
  QuantalePtr q;
  bool base_ok;  // commutative, hence usable as an enrichment base
};
const std::vector<CatalogEntry>& builtin_catalog();
QuantalePtr find_builtin(const std::string& name);  // nullptr if absent

}  // namespace qlab
