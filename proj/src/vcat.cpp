#include "qlab/vcat.hpp"

#include <algorithm>

namespace qlab {

LawReport VCategory::check(const VMatrix& hom) {
  LawReport rep;
  if (hom.src() != hom.dst()) {
    rep.fail("vcat.shape", "hom matrix is not square");
    return rep;
  }
  const Quantale& v = *hom.base();
  const int n = hom.src();
  for (Elem x = 0; x < n; ++x)
    if (!v.leq(v.unit(), hom.at(x, x))) rep.fail("vcat.unit", std::to_string(x));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (!v.leq(v.tensor(hom.at(x, y), hom.at(y, z)), hom.at(x, z)))
          rep.fail("vcat.comp", show_triple(x, y, z));
  return rep;
}

VCategory::VCategory(VMatrix hom) : hom_(std::move(hom)) {
  check(hom_).require("vcategory");
}

VCategory discrete_vcategory(QuantalePtr base, int n) {
  return VCategory(VMatrix::identity(std::move(base), n));
}

VCategory self_enriched(QuantalePtr base) {
  const int n = base->size();
  std::vector<Elem> cells(std::size_t(n) * n);
  for (Elem v = 0; v < n; ++v)
    for (Elem w = 0; w < n; ++w) cells[std::size_t(v) * n + w] = base->hom(v, w);
  return VCategory(VMatrix(base, n, n, std::move(cells)));
}

VCategory opposite(const VCategory& x) { return VCategory(x.hom().involute()); }

VCategory tensor_cat(const VCategory& x, const VCategory& y) {
  require_same_base(x.hom(), y.hom(), "tensor_cat");
  const Quantale& v = *x.base();
  const int nx = x.size(), ny = y.size(), n = nx * ny;
  std::vector<Elem> cells(std::size_t(n) * n);
  for (Elem x1 = 0; x1 < nx; ++x1)
    for (Elem y1 = 0; y1 < ny; ++y1)
      for (Elem x2 = 0; x2 < nx; ++x2)
        for (Elem y2 = 0; y2 < ny; ++y2)
          cells[std::size_t(x1 * ny + y1) * n + (x2 * ny + y2)] =
              v.tensor(x.at(x1, x2), y.at(y1, y2));
  return VCategory(VMatrix(x.base(), n, n, std::move(cells)));
}

bool is_separated(const VCategory& x) {
  for (Elem a = 0; a < x.size(); ++a)
    for (Elem b = 0; b < x.size(); ++b)
      if (a != b && x.order_leq(a, b) && x.order_leq(b, a)) return false;
  return true;
}

LawReport VFunctor::check(const VCategory& src, const VCategory& tgt,
                          const std::vector<int>& map) {
  LawReport rep;
  if (map.size() != std::size_t(src.size())) {
    rep.fail("vfun.table", "map has wrong length");
    return rep;
  }
  for (int y : map)
    if (y < 0 || y >= tgt.size()) {
      rep.fail("vfun.table", "object out of target");
      return rep;
    }
  if (!(*src.base() == *tgt.base())) {
    rep.fail("vfun.base", "source and target bases differ");
    return rep;
  }
  for (Elem a = 0; a < src.size(); ++a)
    for (Elem b = 0; b < src.size(); ++b)
      if (!src.base()->leq(src.at(a, b), tgt.at(map[std::size_t(a)], map[std::size_t(b)])))
        rep.fail("vfun.hom", show_pair(a, b));
  return rep;
}

VFunctor::VFunctor(VCatPtr src_, VCatPtr tgt_, std::vector<int> map_)
    : src(std::move(src_)), tgt(std::move(tgt_)), map(std::move(map_)) {
  check(*src, *tgt, map).require("vfunctor");
}

bool is_fully_faithful(const VFunctor& f) {
  for (Elem a = 0; a < f.src->size(); ++a)
    for (Elem b = 0; b < f.src->size(); ++b)
      if (f.src->at(a, b) != f.tgt->at(f(a), f(b))) return false;
  return true;
}

Elem functor_hom(const VFunctor& f, const VFunctor& g) {
  const Quantale& v = *f.src->base();
  Elem acc = v.top();
  for (Elem x = 0; x < f.src->size(); ++x)
    acc = v.meet(acc, f.tgt->at(f(x), g(x)));
  return acc;
}

int FunctorCategory::index_of(const std::vector<int>& table) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), table);
  if (it == carrier.end() || *it != table) return -1;
  return int(it - carrier.begin());
}

FunctorCategory hom_category(VCatPtr x, VCatPtr y) {
  if (!(*x->base() == *y->base())) throw input_error("hom_category: bases differ");
  PowIndex idx(std::max(y->size(), 1), x->size());
  if (idx.count > guard_cells())
    throw resource_error("hom_category: functor space exceeds guard");
  FunctorCategory out;
  out.src = x;
  out.tgt = y;
  for (std::int64_t r = 0; r < idx.count; ++r) {
    std::vector<int> table = idx.unrank(r);
    if (VFunctor::check(*x, *y, table).ok()) out.carrier.push_back(std::move(table));
  }
  std::sort(out.carrier.begin(), out.carrier.end());
  const int n = int(out.carrier.size());
  const Quantale& v = *x->base();
  std::vector<Elem> cells(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = v.top();
      for (Elem ob = 0; ob < x->size(); ++ob)
        acc = v.meet(acc, y->at(out.carrier[std::size_t(i)][std::size_t(ob)],
                                out.carrier[std::size_t(j)][std::size_t(ob)]));
      cells[std::size_t(i) * n + j] = acc;
    }
  out.cat = std::make_shared<VCategory>(VMatrix(x->base(), n, n, std::move(cells)));
  return out;
}

int PresheafCategory::index_of(const std::vector<Elem>& table) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), table);
  if (it == carrier.end() || *it != table) return -1;
  return int(it - carrier.begin());
}

std::vector<Elem> PresheafCategory::representable(Elem x) const {
  std::vector<Elem> t(std::size_t(base_cat->size()));
  for (Elem z = 0; z < base_cat->size(); ++z) t[std::size_t(z)] = base_cat->at(z, x);
  return t;
}

PresheafCategory presheaf_category(VCatPtr x) {
  const Quantale& v = *x->base();
  PowIndex idx(v.size(), x->size());
  if (idx.count > guard_cells())
    throw resource_error("presheaf_category: presheaf space exceeds guard");
  PresheafCategory out;
  out.base_cat = x;
  for (std::int64_t r = 0; r < idx.count; ++r) {
    std::vector<Elem> phi = idx.unrank(r);
    bool ok = true;
    for (Elem a = 0; a < x->size() && ok; ++a)
      for (Elem b = 0; b < x->size() && ok; ++b)
        ok = v.leq(v.tensor(phi[std::size_t(a)], x->at(b, a)), phi[std::size_t(b)]);
    if (ok) out.carrier.push_back(std::move(phi));
  }
  std::sort(out.carrier.begin(), out.carrier.end());
  const int n = int(out.carrier.size());
  std::vector<Elem> cells(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = v.top();
      for (Elem ob = 0; ob < x->size(); ++ob)
        acc = v.meet(acc, v.hom(out.carrier[std::size_t(i)][std::size_t(ob)],
                                out.carrier[std::size_t(j)][std::size_t(ob)]));
      cells[std::size_t(i) * n + j] = acc;
    }
  out.cat = std::make_shared<VCategory>(VMatrix(x->base(), n, n, std::move(cells)));
  for (Elem ob = 0; ob < x->size(); ++ob) {
    int ix = out.index_of(out.representable(ob));
    if (ix < 0) throw internal_error("presheaf_category: representable not a presheaf");
    out.yoneda.push_back(ix);
  }
  return out;
}

LawReport yoneda_check(const PresheafCategory& dx) {
  LawReport rep;
  const VCategory& x = *dx.base_cat;
  for (Elem ob = 0; ob < x.size(); ++ob) {
    int yx = dx.yoneda[std::size_t(ob)];
    for (std::size_t g = 0; g < dx.carrier.size(); ++g)
      if (dx.cat->at(yx, Elem(g)) != dx.carrier[g][std::size_t(ob)])
        rep.fail("yoneda.hom", "x=" + std::to_string(ob) + " g=" + std::to_string(g));
    for (Elem ob2 = 0; ob2 < x.size(); ++ob2)
      if (dx.cat->at(yx, dx.yoneda[std::size_t(ob2)]) != x.at(ob, ob2))
        rep.fail("yoneda.ff", show_pair(ob, ob2));
  }
  return rep;
}

LawReport Distributor::check(const VCategory& src, const VCategory& tgt,
                             const VMatrix& mat) {
  LawReport rep;
  if (mat.src() != src.size() || mat.dst() != tgt.size()) {
    rep.fail("dist.shape", "matrix shape does not match the categories");
    return rep;
  }
  if (!compose(src.hom(), mat).leq(mat)) rep.fail("dist.src_action", "j.a <= j fails");
  if (!compose(mat, tgt.hom()).leq(mat)) rep.fail("dist.tgt_action", "b.j <= j fails");
  return rep;
}

Distributor::Distributor(VCatPtr src_, VCatPtr tgt_, VMatrix mat_)
    : src(std::move(src_)), tgt(std::move(tgt_)), mat(std::move(mat_)) {
  check(*src, *tgt, mat).require("distributor");
}

Distributor graph_forward(const VFunctor& f) {
  const int nx = f.src->size(), ny = f.tgt->size();
  std::vector<Elem> cells(std::size_t(nx) * ny);
  for (Elem x = 0; x < nx; ++x)
    for (Elem y = 0; y < ny; ++y) cells[std::size_t(x) * ny + y] = f.tgt->at(f(x), y);
  return Distributor(f.src, f.tgt, VMatrix(f.src->base(), nx, ny, std::move(cells)));
}

Distributor graph_backward(const VFunctor& f) {
  const int nx = f.src->size(), ny = f.tgt->size();
  std::vector<Elem> cells(std::size_t(ny) * nx);
  for (Elem y = 0; y < ny; ++y)
    for (Elem x = 0; x < nx; ++x) cells[std::size_t(y) * nx + x] = f.tgt->at(y, f(x));
  return Distributor(f.tgt, f.src, VMatrix(f.src->base(), ny, nx, std::move(cells)));
}

VFunctor mate(const Distributor& j, const PresheafCategory& dx) {
  if (!(*dx.base_cat == *j.src)) throw input_error("mate: presheaf category mismatch");
  std::vector<int> map(std::size_t(j.tgt->size()));
  for (Elem y = 0; y < j.tgt->size(); ++y) {
    std::vector<Elem> col(std::size_t(j.src->size()));
    for (Elem x = 0; x < j.src->size(); ++x) col[std::size_t(x)] = j.mat.at(x, y);
    int ix = dx.index_of(col);
    if (ix < 0) throw internal_error("mate: distributor column is not a presheaf");
    map[std::size_t(y)] = ix;
  }
  return VFunctor(j.tgt, dx.cat, std::move(map));
}

Distributor unmate(const VFunctor& fhat, const PresheafCategory& dx) {
  if (!(*fhat.tgt == *dx.cat)) throw input_error("unmate: functor does not land in D(X)");
  const int nx = dx.base_cat->size(), ny = fhat.src->size();
  std::vector<Elem> cells(std::size_t(nx) * ny);
  for (Elem y = 0; y < ny; ++y) {
    const std::vector<Elem>& phi = dx.carrier[std::size_t(fhat(y))];
    for (Elem x = 0; x < nx; ++x) cells[std::size_t(x) * ny + y] = phi[std::size_t(x)];
  }
  return Distributor(dx.base_cat, fhat.src,
                     VMatrix(dx.base_cat->base(), nx, ny, std::move(cells)));
}

SupResult find_sup(const PresheafCategory& dx) {
  const VCategory& x = *dx.base_cat;
  if (!is_separated(x)) throw input_error("find_sup: category is not separated");
  const Quantale& v = *x.base();
  SupResult out;
  out.cocomplete = true;
  out.sup.assign(dx.carrier.size(), -1);
  for (std::size_t p = 0; p < dx.carrier.size(); ++p) {
    const std::vector<Elem>& psi = dx.carrier[p];
    int found = -1;
    for (Elem cand = 0; cand < x.size(); ++cand) {
      bool match = true;
      for (Elem y = 0; y < x.size() && match; ++y) {
        Elem rhs = v.top();
        for (Elem z = 0; z < x.size(); ++z)
          rhs = v.meet(rhs, v.hom(psi[std::size_t(z)], x.at(z, y)));
        match = x.at(cand, y) == rhs;
      }
      if (match) {
        if (found >= 0) throw internal_error("find_sup: two sups in a separated category");
        found = cand;
      }
    }
    if (found < 0) {
      out.cocomplete = false;
      if (!out.witness) out.witness = psi;
    }
    out.sup[p] = found;
  }
  return out;
}

bool is_cocontinuous(const VFunctor& f) {
  PresheafCategory dx = presheaf_category(f.src);
  PresheafCategory dy = presheaf_category(f.tgt);
  SupResult sx = find_sup(dx);
  SupResult sy = find_sup(dy);
  if (!sx.cocomplete || !sy.cocomplete)
    throw input_error("is_cocontinuous: both ends must be cocomplete");
  const Quantale& v = *f.src->base();
  for (std::size_t p = 0; p < dx.carrier.size(); ++p) {
    const std::vector<Elem>& psi = dx.carrier[p];
    // direct image along f: (psi . f^*)(y) = join_x b(y, f(x)) * psi(x)
    std::vector<Elem> img(std::size_t(f.tgt->size()), v.bottom());
    for (Elem y = 0; y < f.tgt->size(); ++y)
      for (Elem ox = 0; ox < f.src->size(); ++ox)
        img[std::size_t(y)] =
            v.join(img[std::size_t(y)], v.tensor(f.tgt->at(y, f(ox)), psi[std::size_t(ox)]));
    int iy = dy.index_of(img);
    if (iy < 0) throw internal_error("is_cocontinuous: direct image not a presheaf");
    if (f(sx.sup[p]) != sy.sup[std::size_t(iy)]) return false;
  }
  return true;
}

VFunctor extend_along(const VFunctor& f, const VFunctor& i) {
  if (!(*f.src == *i.src)) throw input_error("extend_along: sources differ");
  if (!is_fully_faithful(i)) throw input_error("extend_along: i is not fully faithful");
  PresheafCategory dx = presheaf_category(f.tgt);
  SupResult sup = find_sup(dx);
  if (!sup.cocomplete) throw input_error("extend_along: target is not cocomplete");
  const Quantale& v = *f.src->base();
  std::vector<int> map(std::size_t(i.tgt->size()));
  for (Elem z = 0; z < i.tgt->size(); ++z) {
    // pull the representable at z back along i, then push forward along f
    std::vector<Elem> phi(std::size_t(f.tgt->size()), v.bottom());
    for (Elem x = 0; x < f.tgt->size(); ++x)
      for (Elem y = 0; y < f.src->size(); ++y)
        phi[std::size_t(x)] = v.join(
            phi[std::size_t(x)], v.tensor(f.tgt->at(x, f(y)), i.tgt->at(i(y), z)));
    int ip = dx.index_of(phi);
    if (ip < 0) throw internal_error("extend_along: kan presheaf invalid");
    map[std::size_t(z)] = sup.sup[std::size_t(ip)];
  }
  return VFunctor(i.tgt, f.tgt, std::move(map));
}

}  // namespace qlab
