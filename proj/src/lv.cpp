#include "qlab/lv.hpp"

#include <algorithm>
#include <string>

namespace qlab {

namespace {

std::string show_list(std::span<const Elem> xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s + ")";
}

std::string show_quad(int a, int b, int c, int d) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" +
         std::to_string(c) + "," + std::to_string(d) + ")";
}

// Visit every decomposition of [0,len) into `blocks` consecutive, possibly
// empty half-open slices.
template <typename F>
void for_each_decomposition(int len, int blocks,
                            std::vector<std::pair<int, int>>& acc, int pos,
                            F& visit) {
  if (int(acc.size()) == blocks - 1) {
    acc.emplace_back(pos, len);
    visit(const_cast<const std::vector<std::pair<int, int>>&>(acc));
    acc.pop_back();
    return;
  }
  for (int t = 0; pos + t <= len; ++t) {
    acc.emplace_back(pos, pos + t);
    for_each_decomposition(len, blocks, acc, pos + t, visit);
    acc.pop_back();
  }
}

}  // namespace

ListIndex::ListIndex(int carrier, int max_len) : n_(carrier), max_len_(max_len) {
  if (carrier < 0) throw input_error("ListIndex: negative carrier");
  if (max_len < 0) throw input_error("ListIndex: negative length bound");
  offsets_.assign(std::size_t(max_len) + 2, 0);
  const std::int64_t cap = guard_cells();
  std::int64_t total = 0, pow = 1;
  for (int k = 0;; ++k) {
    offsets_[std::size_t(k)] = total;
    if (total > cap - pow)
      throw resource_error("ListIndex: list space over " + std::to_string(carrier) +
                           " elements at length " + std::to_string(max_len) +
                           " exceeds the guard");
    total += pow;
    if (k == max_len) break;
    if (carrier > 0 && pow > cap / carrier)
      throw resource_error("ListIndex: list space over " + std::to_string(carrier) +
                           " elements at length " + std::to_string(max_len) +
                           " exceeds the guard");
    pow *= carrier;
  }
  offsets_[std::size_t(max_len) + 1] = total;
}

std::int64_t ListIndex::rank(std::span<const Elem> xs) const {
  const int k = int(xs.size());
  if (k > max_len_) throw input_error("ListIndex: list longer than the bound");
  std::int64_t r = 0;
  for (Elem x : xs) {
    if (x < 0 || x >= n_) throw input_error("ListIndex: entry out of carrier");
    r = r * n_ + x;
  }
  return offsets_[std::size_t(k)] + r;
}

std::vector<Elem> ListIndex::unrank(std::int64_t r) const {
  const int k = length_of(r);
  std::int64_t t = r - offsets_[std::size_t(k)];
  std::vector<Elem> xs(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    xs[std::size_t(i)] = Elem(t % n_);
    t /= n_;
  }
  return xs;
}

int ListIndex::length_of(std::int64_t r) const {
  if (r < 0 || r >= count()) throw input_error("ListIndex: rank out of range");
  int k = 0;
  while (offsets_[std::size_t(k) + 1] <= r) ++k;
  return k;
}

std::vector<Elem> list_concat(std::span<const std::vector<Elem>> parts) {
  std::vector<Elem> out;
  for (const std::vector<Elem>& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

LawReport check_list_monad(int carrier, int max_len) {
  LawReport rep;
  ListIndex li(carrier, max_len);
  for (std::int64_t r = 0; r < li.count(); ++r) {
    std::vector<Elem> xs = li.unrank(r);
    std::vector<std::vector<Elem>> wrapped;
    for (Elem x : xs) wrapped.push_back(std::vector<Elem>{x});
    if (list_concat(wrapped) != xs) rep.fail("list.unit_left", show_list(xs));
    std::vector<std::vector<Elem>> whole = {xs};
    if (list_concat(whole) != xs) rep.fail("list.unit_right", show_list(xs));

    // flattening is independent of how consecutive blocks are regrouped
    const int len = int(xs.size());
    for (int n = 2; n <= std::min(3, len + 1); ++n) {
      std::vector<std::pair<int, int>> acc;
      auto visit = [&](const std::vector<std::pair<int, int>>& bs) {
        std::vector<std::vector<Elem>> blocks;
        for (auto [b, e] : bs)
          blocks.emplace_back(xs.begin() + b, xs.begin() + e);
        if (list_concat(blocks) != xs) rep.fail("list.flatten", show_list(xs));
        for (std::size_t s = 1; s < blocks.size(); ++s) {
          std::vector<std::vector<Elem>> head(blocks.begin(), blocks.begin() + s);
          std::vector<std::vector<Elem>> tail(blocks.begin() + s, blocks.end());
          std::vector<std::vector<Elem>> grouped = {list_concat(head),
                                                    list_concat(tail)};
          if (list_concat(grouped) != xs) rep.fail("list.assoc", show_list(xs));
        }
      };
      for_each_decomposition(len, n, acc, 0, visit);
    }
  }
  rep.note("verified on all lists of length <= " + std::to_string(max_len));
  return rep;
}

Elem lv_extension(const VMatrix& r, std::span<const Elem> xs,
                  std::span<const Elem> ys) {
  const Quantale& v = *r.base();
  for (Elem x : xs)
    if (x < 0 || x >= r.src()) throw input_error("lv_extension: source index out of carrier");
  for (Elem y : ys)
    if (y < 0 || y >= r.dst()) throw input_error("lv_extension: target index out of carrier");
  if (xs.size() != ys.size()) return v.bottom();
  Elem p = v.unit();
  for (std::size_t i = 0; i < xs.size() && p != v.bottom(); ++i)
    p = v.tensor(p, r.at(xs[i], ys[i]));
  return p;
}

TruncatedLVCategory::TruncatedLVCategory(QuantalePtr base_, int carrier_,
                                         int max_len_, std::vector<Elem> hom_,
                                         bool representable_)
    : base(std::move(base_)),
      lists(carrier_, max_len_),
      hom(std::move(hom_)),
      representable(representable_) {
  require_commutative_base(*base, "TruncatedLVCategory");
  if (carrier_ < 1) throw input_error("TruncatedLVCategory: empty carrier");
  if (hom.size() != std::size_t(lists.count()) * carrier_)
    throw input_error("TruncatedLVCategory: hom table has wrong size");
  for (Elem e : hom)
    if (e < 0 || e >= base->size())
      throw input_error("TruncatedLVCategory: hom value out of the base");
}

LawReport MonoidalVCat::check(const VCategory& cat, const std::vector<Elem>& star,
                              Elem unit_obj) {
  LawReport rep;
  const int n = cat.size();
  if (star.size() != std::size_t(n) * n) {
    rep.fail("monvc.table", "product table has wrong size");
    return rep;
  }
  for (Elem e : star)
    if (e < 0 || e >= n) {
      rep.fail("monvc.table", "product value out of carrier");
      return rep;
    }
  if (unit_obj < 0 || unit_obj >= n) {
    rep.fail("monvc.table", "unit object out of carrier");
    return rep;
  }
  auto times = [&](Elem x, Elem y) { return star[std::size_t(x) * n + y]; };
  const Quantale& v = *cat.base();
  for (Elem x = 0; x < n; ++x) {
    if (times(unit_obj, x) != x || times(x, unit_obj) != x)
      rep.fail("monvc.unit", std::to_string(x));
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (times(times(x, y), z) != times(x, times(y, z)))
          rep.fail("monvc.assoc", show_triple(x, y, z));
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem x2 = 0; x2 < n; ++x2)
      for (Elem y = 0; y < n; ++y)
        for (Elem y2 = 0; y2 < n; ++y2)
          if (!v.leq(v.tensor(cat.at(x, x2), cat.at(y, y2)),
                     cat.at(times(x, y), times(x2, y2))))
            rep.fail("monvc.functor", show_quad(x, x2, y, y2));
  return rep;
}

MonoidalVCat::MonoidalVCat(VCatPtr cat_, std::vector<Elem> star_, Elem unit_obj_)
    : cat(std::move(cat_)), star(std::move(star_)), unit_obj(unit_obj_) {
  check(*cat, star, unit_obj).require("monoidal category");
}

LawReport check_lv_category(const TruncatedLVCategory& c, int max_blocks) {
  if (max_blocks < 1)
    throw input_error("check_lv_category: block bound must be positive");
  LawReport rep;
  const Quantale& v = *c.base;
  const ListIndex& li = c.lists;
  const int nx = c.carrier(), nl = c.max_len();

  if (nl >= 1) {
    for (Elem x = 0; x < nx; ++x) {
      const Elem single[1] = {x};
      if (!v.leq(v.unit(), c.at(single, x))) rep.fail("lv.unit", std::to_string(x));
    }
  } else {
    rep.note("unit law skipped: no length-1 lists at max_len=0");
  }

  const int nb = std::min(max_blocks, nl);
  if (nb < max_blocks)
    rep.note("block counts above " + std::to_string(nl) +
             " skipped: middle lists fall outside the table");

  for (std::int64_t r = 0; r < li.count(); ++r) {
    const std::vector<Elem> xs = li.unrank(r);
    const int len = int(xs.size());
    for (int n = 1; n <= nb; ++n) {
      std::vector<std::pair<int, int>> acc;
      auto visit = [&](const std::vector<std::pair<int, int>>& bs) {
        std::vector<std::int64_t> branks(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          branks[std::size_t(i)] = li.rank(std::span<const Elem>(
              xs.data() + bs[std::size_t(i)].first,
              std::size_t(bs[std::size_t(i)].second - bs[std::size_t(i)].first)));
        std::vector<Elem> ws(std::size_t(n), 0);
        for (;;) {
          Elem p = v.unit();
          for (int i = 0; i < n && p != v.bottom(); ++i)
            p = v.tensor(p, c.at(branks[std::size_t(i)], ws[std::size_t(i)]));
          if (p != v.bottom()) {
            const std::int64_t wrank = li.rank(ws);
            for (Elem y = 0; y < nx; ++y)
              if (!v.leq(v.tensor(p, c.at(wrank, y)), c.at(r, y)))
                rep.fail("lv.compose", show_list(xs) + "->" + show_list(ws) +
                                           "->" + std::to_string(y));
          }
          int i = n - 1;
          while (i >= 0 && ++ws[std::size_t(i)] == nx) {
            ws[std::size_t(i)] = 0;
            --i;
          }
          if (i < 0) break;
        }
      };
      for_each_decomposition(len, n, acc, 0, visit);
    }
  }
  rep.note("verified to truncation: max_len=" + std::to_string(nl) +
           ", max_blocks=" + std::to_string(max_blocks));
  if (c.representable)
    rep.note("representable table: laws hold at every truncation by construction");
  return rep;
}

TruncatedLVCategory representable_lv(const MonoidalVCat& m, int max_len) {
  const VCategory& cat = *m.cat;
  const int nx = cat.size();
  ListIndex li(nx, max_len);
  std::vector<Elem> hom(std::size_t(li.count()) * nx);
  for (std::int64_t r = 0; r < li.count(); ++r) {
    Elem fold = m.unit_obj;
    for (Elem x : li.unrank(r)) fold = m.times(fold, x);
    for (Elem y = 0; y < nx; ++y)
      hom[std::size_t(r) * nx + y] = cat.at(fold, y);
  }
  return TruncatedLVCategory(cat.base(), nx, max_len, std::move(hom), true);
}

LawReport check_lv_functor(const TruncatedLVCategory& c,
                           const TruncatedLVCategory& d,
                           const std::vector<int>& f) {
  if (!(*c.base == *d.base))
    throw input_error("check_lv_functor: different bases");
  if (c.max_len() != d.max_len())
    throw input_error("check_lv_functor: truncation bounds differ");
  if (f.size() != std::size_t(c.carrier()))
    throw input_error("check_lv_functor: map has wrong length");
  for (int y : f)
    if (y < 0 || y >= d.carrier())
      throw input_error("check_lv_functor: map value out of target carrier");

  LawReport rep;
  const Quantale& v = *c.base;
  bool faithful = true;
  for (std::int64_t r = 0; r < c.lists.count(); ++r) {
    std::vector<Elem> xs = c.lists.unrank(r);
    std::vector<Elem> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = Elem(f[std::size_t(xs[i])]);
    const std::int64_t ir = d.lists.rank(ys);
    for (Elem y = 0; y < c.carrier(); ++y) {
      const Elem lhs = c.at(r, y), rhs = d.at(ir, Elem(f[std::size_t(y)]));
      if (!v.leq(lhs, rhs))
        rep.fail("lvf.grow", show_list(xs) + "->" + std::to_string(y));
      if (lhs != rhs) faithful = false;
    }
  }
  if (rep.ok() && faithful) rep.note("fully faithful on the tested range");
  rep.note("verified to truncation: max_len=" + std::to_string(c.max_len()));
  return rep;
}

LVPresheaf::LVPresheaf(LVCatPtr over_, std::vector<Elem> values_)
    : over(std::move(over_)), values(std::move(values_)) {
  if (!over) throw input_error("LVPresheaf: no category");
  if (values.size() != std::size_t(over->lists.count()))
    throw input_error("LVPresheaf: value table has wrong size");
  for (Elem e : values)
    if (e < 0 || e >= over->base->size())
      throw input_error("LVPresheaf: value out of the base");
}

LawReport check_lv_presheaf(const LVPresheaf& p, int max_blocks) {
  if (max_blocks < 1)
    throw input_error("check_lv_presheaf: block bound must be positive");
  LawReport rep;
  const TruncatedLVCategory& c = *p.over;
  const Quantale& v = *c.base;
  const ListIndex& li = c.lists;
  const int nx = c.carrier();
  const int nb = std::min(max_blocks, c.max_len());

  for (std::int64_t r = 0; r < li.count(); ++r) {
    const std::vector<Elem> xs = li.unrank(r);
    const int len = int(xs.size());
    for (int n = 1; n <= nb; ++n) {
      std::vector<std::pair<int, int>> acc;
      auto visit = [&](const std::vector<std::pair<int, int>>& bs) {
        std::vector<std::int64_t> branks(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          branks[std::size_t(i)] = li.rank(std::span<const Elem>(
              xs.data() + bs[std::size_t(i)].first,
              std::size_t(bs[std::size_t(i)].second - bs[std::size_t(i)].first)));
        std::vector<Elem> ws(std::size_t(n), 0);
        for (;;) {
          Elem q = v.unit();
          for (int i = 0; i < n && q != v.bottom(); ++i)
            q = v.tensor(q, c.at(branks[std::size_t(i)], ws[std::size_t(i)]));
          if (q != v.bottom()) {
            q = v.tensor(q, p.at(li.rank(ws)));
            if (!v.leq(q, p.at(r)))
              rep.fail("lvp.compat", show_list(xs) + "->" + show_list(ws));
          }
          int i = n - 1;
          while (i >= 0 && ++ws[std::size_t(i)] == nx) {
            ws[std::size_t(i)] = 0;
            --i;
          }
          if (i < 0) break;
        }
      };
      for_each_decomposition(len, n, acc, 0, visit);
    }
  }
  rep.note("verified to truncation: max_len=" + std::to_string(c.max_len()) +
           ", max_blocks=" + std::to_string(max_blocks));
  return rep;
}

LVPresheaf lv_yoneda(LVCatPtr c, Elem y) {
  if (y < 0 || y >= c->carrier()) throw input_error("lv_yoneda: object out of carrier");
  std::vector<Elem> values(std::size_t(c->lists.count()));
  for (std::int64_t r = 0; r < c->lists.count(); ++r)
    values[std::size_t(r)] = c->at(r, y);
  return LVPresheaf(std::move(c), std::move(values));
}

DlValue dl_hom(std::span<const LVPresheaf> fs, const LVPresheaf& g) {
  const TruncatedLVCategory& c = *g.over;
  for (const LVPresheaf& f : fs)
    if (f.over.get() != g.over.get() &&
        !(*f.over->base == *c.base && f.over->carrier() == c.carrier() &&
          f.over->max_len() == c.max_len() && f.over->hom == c.hom))
      throw input_error("dl_hom: presheaves over different categories");

  const Quantale& v = *c.base;
  const ListIndex& li = c.lists;
  const int n = int(fs.size());
  const std::int64_t count = li.count();

  std::vector<std::vector<Elem>> all(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) all[std::size_t(r)] = li.unrank(r);

  DlValue out{v.top(), 0};
  std::vector<std::int64_t> idx(std::size_t(n), 0);
  std::vector<Elem> flat;
  for (;;) {
    std::size_t total = 0;
    for (int i = 0; i < n; ++i) total += all[std::size_t(idx[std::size_t(i)])].size();
    if (int(total) > li.max_len()) {
      ++out.skipped;
    } else {
      Elem prod = v.unit();
      for (int i = 0; i < n; ++i)
        prod = v.tensor(prod, fs[std::size_t(i)].at(idx[std::size_t(i)]));
      flat.clear();
      for (int i = 0; i < n; ++i) {
        const std::vector<Elem>& part = all[std::size_t(idx[std::size_t(i)])];
        flat.insert(flat.end(), part.begin(), part.end());
      }
      out.value = v.meet(out.value, v.hom(prod, g.at(li.rank(flat))));
    }
    int i = n - 1;
    while (i >= 0 && ++idx[std::size_t(i)] == count) {
      idx[std::size_t(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

LawReport lv_yoneda_check(const LVCatPtr& c) {
  LawReport rep;
  const Quantale& v = *c->base;
  const ListIndex& li = c->lists;

  std::vector<LVPresheaf> family;
  for (Elem y = 0; y < c->carrier(); ++y) family.push_back(lv_yoneda(c, y));
  const std::size_t singles = family.size();
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = i + 1; j < singles; ++j) {
      std::vector<Elem> joined(std::size_t(li.count()));
      for (std::int64_t r = 0; r < li.count(); ++r)
        joined[std::size_t(r)] =
            v.join(family[i].at(r), family[j].at(r));
      family.emplace_back(c, std::move(joined));
    }

  std::int64_t skipped = 0;
  for (std::int64_t r = 0; r < li.count(); ++r) {
    const std::vector<Elem> xs = li.unrank(r);
    std::vector<LVPresheaf> blocks;
    for (Elem x : xs) blocks.push_back(lv_yoneda(c, x));
    for (const LVPresheaf& g : family) {
      DlValue d = dl_hom(blocks, g);
      skipped += d.skipped;
      if (!v.leq(g.at(r), d.value)) rep.fail("lvyo.lower", show_list(xs));
      if (!v.leq(d.value, g.at(r))) rep.fail("lvyo.upper", show_list(xs));
    }
  }
  rep.note("evaluated to truncation: max_len=" + std::to_string(c->max_len()));
  if (skipped)
    rep.note(std::to_string(skipped) + " index tuples beyond the truncation skipped");
  return rep;
}

LawReport compare_pl_pvl(QuantalePtr base, int carrier, int max_len, int samples,
                         std::uint64_t seed) {
  require_commutative_base(*base, "compare_pl_pvl");
  if (carrier < 1) throw input_error("compare_pl_pvl: empty carrier");
  if (max_len < 1) throw input_error("compare_pl_pvl: length bound must be positive");
  if (samples < 1) throw input_error("compare_pl_pvl: no samples");
  if (carrier > 2)
    throw resource_error("compare_pl_pvl: carrier above the comparison bound 2");
  if (max_len > 3)
    throw resource_error("compare_pl_pvl: length bound above the comparison bound 3");
  if (base->size() > 3)
    throw resource_error("compare_pl_pvl: base above the comparison bound 3");

  LawReport rep;
  const Quantale& v = *base;
  ListIndex li(carrier, max_len);
  const int count = int(li.count());

  std::vector<std::vector<Elem>> all(static_cast<std::size_t>(count));
  for (int r = 0; r < count; ++r) all[std::size_t(r)] = li.unrank(std::int64_t(r));

  // units: the table unit at the singleton list vs the diagonal formula
  for (Elem x = 0; x < carrier; ++x) {
    const Elem single[1] = {x};
    std::vector<Elem> upper = pv_unit(v, count, Elem(li.rank(single)));
    for (int r = 0; r < count; ++r) {
      const std::vector<Elem>& zs = all[std::size_t(r)];
      const Elem lower =
          (zs.size() == 1 && zs[0] == x) ? v.unit() : v.bottom();
      if (upper[std::size_t(r)] != lower)
        rep.fail("pl.unit", std::to_string(x) + "@" + show_list(zs));
    }
  }

  // both multiplication composites on one tuple of functionals
  auto check_tuple = [&](const std::vector<std::vector<Elem>>& phis,
                         const std::string& label) {
    const int n = int(phis.size());

    // flatten-then-join: direct image of the product table
    std::vector<Elem> upper(std::size_t(count), v.bottom());
    std::vector<std::int64_t> idx(std::size_t(n), 0);
    std::vector<Elem> flat;
    for (;;) {
      std::size_t total = 0;
      for (int i = 0; i < n; ++i) total += all[std::size_t(idx[std::size_t(i)])].size();
      if (int(total) <= max_len) {
        Elem prod = v.unit();
        for (int i = 0; i < n && prod != v.bottom(); ++i)
          prod = v.tensor(prod, phis[std::size_t(i)][std::size_t(idx[std::size_t(i)])]);
        if (prod != v.bottom()) {
          flat.clear();
          for (int i = 0; i < n; ++i) {
            const std::vector<Elem>& part = all[std::size_t(idx[std::size_t(i)])];
            flat.insert(flat.end(), part.begin(), part.end());
          }
          Elem& cell = upper[std::size_t(li.rank(flat))];
          cell = v.join(cell, prod);
        }
      }
      int i = n - 1;
      while (i >= 0 && ++idx[std::size_t(i)] == count) {
        idx[std::size_t(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }

    // per-list block sums
    for (int r = 0; r < count; ++r) {
      const std::vector<Elem>& xs = all[std::size_t(r)];
      Elem lower = v.bottom();
      std::vector<std::pair<int, int>> acc;
      auto visit = [&](const std::vector<std::pair<int, int>>& bs) {
        Elem prod = v.unit();
        for (int i = 0; i < n && prod != v.bottom(); ++i) {
          const std::int64_t br = li.rank(std::span<const Elem>(
              xs.data() + bs[std::size_t(i)].first,
              std::size_t(bs[std::size_t(i)].second - bs[std::size_t(i)].first)));
          prod = v.tensor(prod, phis[std::size_t(i)][std::size_t(br)]);
        }
        lower = v.join(lower, prod);
      };
      for_each_decomposition(int(xs.size()), n, acc, 0, visit);
      if (upper[std::size_t(r)] != lower)
        rep.fail("pl.mult", label + "@" + show_list(xs));
    }
  };

  std::int64_t tables = 1;
  bool small = true;
  for (int i = 0; i < count && small; ++i) {
    tables *= v.size();
    if (tables > 64) small = false;
  }

  if (small) {
    PowIndex ti(v.size(), count);
    std::int64_t done = 0;
    for (int n = 1; n <= max_len; ++n) {
      std::vector<std::int64_t> pick(std::size_t(n), 0);
      for (;;) {
        std::vector<std::vector<Elem>> phis;
        for (int i = 0; i < n; ++i) phis.push_back(ti.unrank(pick[std::size_t(i)]));
        check_tuple(phis, "tuple " + std::to_string(done));
        ++done;
        int i = n - 1;
        while (i >= 0 && ++pick[std::size_t(i)] == ti.count) {
          pick[std::size_t(i)] = 0;
          --i;
        }
        if (i < 0) break;
      }
    }
    rep.note("multiplications compared exhaustively on " + std::to_string(done) +
             " functional tuples");
  } else {
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
      const int n = 1 + rng.below(max_len);
      std::vector<std::vector<Elem>> phis(
          std::size_t(n), std::vector<Elem>(std::size_t(count), v.bottom()));
      for (auto& phi : phis)
        for (Elem& cell : phi)
          if (rng.below(4) == 0) cell = Elem(rng.below(v.size()));
      check_tuple(phis, "sample " + std::to_string(s));
    }
    rep.note("multiplications compared on " + std::to_string(samples) +
             " seeded functional tuples");
  }
  rep.note("truncated: list indices bounded by max_len=" + std::to_string(max_len));
  return rep;
}

InjStation injective_station(const ActedQuantale& q, int max_len) {
  VModule mod(q.base, std::make_shared<FiniteLattice>(q.target->lattice()), q.rho);
  VCategory vc = module_to_vcat(mod);
  LawReport monoidal_laws =
      MonoidalVCat::check(vc, q.target->tensor_table(), q.target->unit());
  if (!monoidal_laws.ok())
    throw internal_error(
        "injective_station: a lawful action failed to induce a monoidal structure");
  MonoidalVCat m(std::make_shared<const VCategory>(std::move(vc)),
                 q.target->tensor_table(), q.target->unit());
  TruncatedLVCategory cat = representable_lv(m, max_len);

  LawReport cert;
  cert.merge(monoidal_laws);
  cert.merge(check_lv_category(cat, max_len));
  cert.note("station: representable multi-hom of the acted target");
  return InjStation{std::move(m), std::move(cat), std::move(cert)};
}

}  // namespace qlab
