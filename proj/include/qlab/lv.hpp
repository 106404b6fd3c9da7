#pragma once

#include "qlab/monoids.hpp"
#include "qlab/vmat.hpp"

namespace qlab {

// Canonical index for lists over {0..carrier-1} of length <= max_len:
// ordered by length, lexicographic within one length with the first element
// most significant. Rank 0 is the empty list. Guarded by the cell budget.
class ListIndex {
 public:
  ListIndex(int carrier, int max_len);

  int carrier() const { return n_; }
  int max_len() const { return max_len_; }
  std::int64_t count() const { return offsets_.back(); }

  std::int64_t rank(std::span<const Elem> xs) const;
  std::vector<Elem> unrank(std::int64_t r) const;
  int length_of(std::int64_t r) const;

 private:
  int n_, max_len_;
  std::vector<std::int64_t> offsets_;  // offsets_[k] = first rank of length k
};

// Flattening of the nesting layer; the unit is the singleton list.
std::vector<Elem> list_concat(std::span<const std::vector<Elem>> parts);

// Unit and flatten laws over every list up to the stated length, including
// the associativity of flattening across regroupings.
LawReport check_list_monad(int carrier, int max_len);

// Pointwise product extension of a matrix to equal-length lists; unequal
// lengths evaluate to bottom and empty pairs to the unit.
Elem lv_extension(const VMatrix& r, std::span<const Elem> xs,
                  std::span<const Elem> ys);

// Multi-hom structure truncated at a maximum list length: a V-value for
// every (list of sources, target) pair. The constructor validates shape and
// range only; the laws are length-bounded and live in check_lv_category,
// which never claims more than the stated truncation. The representable
// flag records that the table came from a fold construction, whose laws
// hold at every truncation.
struct TruncatedLVCategory {
  QuantalePtr base;
  ListIndex lists;
  std::vector<Elem> hom;  // lists.count() x carrier, row-major by list rank
  bool representable = false;

  TruncatedLVCategory(QuantalePtr base, int carrier, int max_len,
                      std::vector<Elem> hom, bool representable = false);

  int carrier() const { return lists.carrier(); }
  int max_len() const { return lists.max_len(); }
  Elem at(std::int64_t list_rank, Elem y) const {
    return hom[std::size_t(list_rank) * carrier() + y];
  }
  Elem at(std::span<const Elem> xs, Elem y) const {
    return at(lists.rank(xs), y);
  }
};

using LVCatPtr = std::shared_ptr<const TruncatedLVCategory>;

// Category with a strictly associative, strictly unital product that is
// enriched-functorial: a(x,x') (x) a(y,y') <= a(x*y, x'*y').
struct MonoidalVCat {
  VCatPtr cat;
  std::vector<Elem> star;  // carrier x carrier -> carrier
  Elem unit_obj;

  static LawReport check(const VCategory& cat, const std::vector<Elem>& star,
                         Elem unit_obj);
  MonoidalVCat(VCatPtr cat, std::vector<Elem> star, Elem unit_obj);
  Elem times(Elem x, Elem y) const {
    return star[std::size_t(x) * cat->size() + y];
  }
};

// Unit and composition laws over all lists up to the table's length bound
// and block decompositions up to max_blocks (empty blocks included). The
// report's notes state the exact truncation checked.
LawReport check_lv_category(const TruncatedLVCategory& c, int max_blocks);

// Multi-hom of a monoidal category by folding: hom(xs, y) is the plain hom
// from the star-product of xs (the unit object for the empty list) to y.
TruncatedLVCategory representable_lv(const MonoidalVCat& m, int max_len);

// Structure growth hom_c(xs, y) <= hom_d(map f xs, f y) over all indexed
// lists; equality everywhere is noted as full faithfulness.
LawReport check_lv_functor(const TruncatedLVCategory& c,
                           const TruncatedLVCategory& d,
                           const std::vector<int>& f);

// Table of values on lists, contravariantly compatible with the multi-hom:
// (product of hom(block_i, w_i)) (x) value(ws) <= value(whole).
struct LVPresheaf {
  LVCatPtr over;
  std::vector<Elem> values;  // one per list rank

  LVPresheaf(LVCatPtr over, std::vector<Elem> values);
  Elem at(std::int64_t list_rank) const {
    return values[std::size_t(list_rank)];
  }
};

LawReport check_lv_presheaf(const LVPresheaf& p, int max_blocks);

// values = hom(-, y).
LVPresheaf lv_yoneda(LVCatPtr c, Elem y);

// Presheaf hom evaluated as an infimum over tuples of index lists, one per
// left-hand presheaf. Tuples whose flattened length exceeds the truncation
// are skipped and counted, so the value is an upper bound of the untruncated
// infimum.
struct DlValue {
  Elem value;
  std::int64_t skipped;
};
DlValue dl_hom(std::span<const LVPresheaf> fs, const LVPresheaf& g);

// Both directions of the presheaf-hom evaluation against the Yoneda family:
// dl_hom(yoneda blocks of xs, g) >= g(xs) exactly (the singleton-block tuple
// realizes the bound inside the truncation), and <= over the tested family.
LawReport lv_yoneda_check(const LVCatPtr& c);

// Agreement of the two powerset presentations on the truncated list domain:
// units pointwise everywhere, multiplications on generated families of
// finitely supported functionals. Exhaustive over small table spaces, seeded
// sampling otherwise; the report states the truncation either way.
LawReport compare_pl_pvl(QuantalePtr base, int carrier, int max_len,
                         int samples, std::uint64_t seed);

// The multi-hom handle of an acted quantale: the enriched category of the
// underlying module, with the target's multiplication as monoidal structure,
// folded into its representable multi-hom. The certificate aggregates the
// monoidal laws and the truncated category laws.
struct InjStation {
  MonoidalVCat monoidal;
  TruncatedLVCategory category;
  LawReport certificate;
};
InjStation injective_station(const ActedQuantale& q, int max_len);

}  // namespace qlab
