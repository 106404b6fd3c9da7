#include "qlab/suplat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qlab {

FiniteLattice free_suplattice(int set_size) {
  if (set_size < 0) throw input_error("free_suplattice: negative set size");
  std::int64_t cap = std::min<std::int64_t>(1024, guard_cells());
  if (set_size > 62 || (std::int64_t(1) << set_size) > cap)
    throw resource_error("free_suplattice: 2^" + std::to_string(set_size) +
                         " exceeds guard");
  int n = 1 << set_size;
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[std::size_t(a) * n + b] = ((a & ~b) == 0) ? 1 : 0;
  return FiniteLattice(n, std::move(leq));
}

LawReport SupMap::check(const FiniteLattice& src, const FiniteLattice& tgt,
                        const std::vector<Elem>& map) {
  LawReport rep;
  if (map.size() != std::size_t(src.size())) {
    rep.fail("supmap.table", "map has wrong length");
    return rep;
  }
  for (Elem v : map)
    if (v < 0 || v >= tgt.size()) {
      rep.fail("supmap.table", "value out of target");
      return rep;
    }
  if (map[std::size_t(src.bottom())] != tgt.bottom())
    rep.fail("supmap.bottom", std::to_string(src.bottom()));
  for (Elem a = 0; a < src.size(); ++a)
    for (Elem b = a + 1; b < src.size(); ++b)
      if (map[std::size_t(src.join(a, b))] != tgt.join(map[std::size_t(a)], map[std::size_t(b)]))
        rep.fail("supmap.join", show_pair(a, b));
  return rep;
}

SupMap::SupMap(LatticePtr src_, LatticePtr tgt_, std::vector<Elem> map_)
    : src(std::move(src_)), tgt(std::move(tgt_)), map(std::move(map_)) {
  check(*src, *tgt, map).require("supmap");
}

SupMap compose_sup(const SupMap& f, const SupMap& g) {
  if (!(*f.tgt == *g.src)) throw input_error("compose_sup: middle lattices differ");
  std::vector<Elem> m(std::size_t(f.src->size()));
  for (Elem x = 0; x < f.src->size(); ++x) m[std::size_t(x)] = g(f(x));
  return SupMap(f.src, g.tgt, std::move(m));
}

LawReport check_bimorphism2(const FiniteLattice& x, const FiniteLattice& y,
                            const FiniteLattice& z, std::span<const Elem> f) {
  LawReport rep;
  if (f.size() != std::size_t(x.size()) * y.size()) {
    rep.fail("bim.table", "wrong shape");
    return rep;
  }
  auto at = [&](Elem a, Elem b) { return f[std::size_t(a) * y.size() + b]; };
  for (Elem a = 0; a < x.size(); ++a) {
    if (at(a, y.bottom()) != z.bottom())
      rep.fail("bim.row_bottom", std::to_string(a));
    for (Elem b = 0; b < y.size(); ++b)
      for (Elem c = b + 1; c < y.size(); ++c)
        if (at(a, y.join(b, c)) != z.join(at(a, b), at(a, c)))
          rep.fail("bim.row_join", show_triple(a, b, c));
  }
  for (Elem b = 0; b < y.size(); ++b) {
    if (at(x.bottom(), b) != z.bottom())
      rep.fail("bim.col_bottom", std::to_string(b));
    for (Elem a = 0; a < x.size(); ++a)
      for (Elem c = a + 1; c < x.size(); ++c)
        if (at(x.join(a, c), b) != z.join(at(a, b), at(c, b)))
          rep.fail("bim.col_join", show_triple(a, c, b));
  }
  return rep;
}

std::uint64_t TensorSup::close(std::uint64_t mask) const {
  const int nx = x_->size(), ny = y_->size();
  auto cell = [&](Elem a, Elem b) { return std::uint64_t(1) << (a * ny + b); };
  // bottom cross is always present
  for (Elem a = 0; a < nx; ++a) mask |= cell(a, y_->bottom());
  for (Elem b = 0; b < ny; ++b) mask |= cell(x_->bottom(), b);
  for (;;) {
    std::uint64_t before = mask;
    // down-closure
    for (Elem a = 0; a < nx; ++a)
      for (Elem b = 0; b < ny; ++b) {
        if (!(mask & cell(a, b))) continue;
        for (Elem a2 = 0; a2 < nx; ++a2)
          if (x_->leq(a2, a))
            for (Elem b2 = 0; b2 < ny; ++b2)
              if (y_->leq(b2, b)) mask |= cell(a2, b2);
      }
    // binary joins within a column and within a row
    for (Elem a = 0; a < nx; ++a)
      for (Elem a2 = a + 1; a2 < nx; ++a2)
        for (Elem b = 0; b < ny; ++b)
          if ((mask & cell(a, b)) && (mask & cell(a2, b)))
            mask |= cell(x_->join(a, a2), b);
    for (Elem b = 0; b < ny; ++b)
      for (Elem b2 = b + 1; b2 < ny; ++b2)
        for (Elem a = 0; a < nx; ++a)
          if ((mask & cell(a, b)) && (mask & cell(a, b2)))
            mask |= cell(a, y_->join(b, b2));
    if (mask == before) return mask;
  }
}

TensorSup::TensorSup(LatticePtr x, LatticePtr y) : x_(std::move(x)), y_(std::move(y)) {
  const int nx = x_->size(), ny = y_->size();
  const int cells = nx * ny;
  if (cells > 64) throw resource_error("tensor_sup: " + std::to_string(cells) +
                                       " cells exceed the 64-cell guard");
  enumerated_ = cells <= 16;
  if (enumerated_) {
    // filter all subsets by the local bi-closedness conditions
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << cells); ++m)
      if (close(m) == m) masks_.push_back(m);
  } else {
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> gens;
    for (Elem a = 0; a < nx; ++a)
      for (Elem b = 0; b < ny; ++b)
        gens.push_back(close(std::uint64_t(1) << (a * ny + b)));
    seen.insert(close(0));
    for (std::uint64_t g : gens) seen.insert(g);
    std::vector<std::uint64_t> work(seen.begin(), seen.end());
    while (!work.empty()) {
      std::uint64_t t = work.back();
      work.pop_back();
      for (std::uint64_t g : gens) {
        std::uint64_t u = close(t | g);
        if (seen.insert(u).second) work.push_back(u);
      }
    }
    masks_.assign(seen.begin(), seen.end());
  }
  std::sort(masks_.begin(), masks_.end());
  const int n = int(masks_.size());
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      leq[std::size_t(i) * n + j] = ((masks_[std::size_t(i)] & ~masks_[std::size_t(j)]) == 0) ? 1 : 0;
  carrier_ = std::make_shared<FiniteLattice>(n, std::move(leq));
  pi_.resize(std::size_t(cells));
  for (Elem a = 0; a < nx; ++a)
    for (Elem b = 0; b < ny; ++b) {
      std::uint64_t m = close(std::uint64_t(1) << (a * ny + b));
      auto it = std::lower_bound(masks_.begin(), masks_.end(), m);
      if (it == masks_.end() || *it != m)
        throw internal_error("tensor_sup: generator closure missing from carrier");
      pi_[std::size_t(a) * ny + b] = Elem(it - masks_.begin());
    }
}

SupMap TensorSup::classify(LatticePtr z, std::span<const Elem> f) const {
  check_bimorphism2(*x_, *y_, *z, f).require("classify: not a bimorphism");
  const int ny = y_->size();
  std::vector<Elem> m(masks_.size());
  for (std::size_t t = 0; t < masks_.size(); ++t) {
    Elem acc = z->bottom();
    for (Elem a = 0; a < x_->size(); ++a)
      for (Elem b = 0; b < ny; ++b)
        if (masks_[t] & (std::uint64_t(1) << (a * ny + b)))
          acc = z->join(acc, f[std::size_t(a) * ny + b]);
    m[t] = acc;
  }
  // postconditions the model guarantees
  for (Elem a = 0; a < x_->size(); ++a)
    for (Elem b = 0; b < ny; ++b)
      if (m[std::size_t(pi(a, b))] != f[std::size_t(a) * ny + b])
        throw internal_error("classify: factoring through pi failed");
  if (!SupMap::check(*carrier_, *z, m).ok())
    throw internal_error("classify: classified map does not preserve joins");
  return SupMap(carrier_, std::move(z), std::move(m));
}

SupMap SupQuotient::projection() const {
  std::vector<Elem> m(class_of.begin(), class_of.end());
  return SupMap(over, quotient, std::move(m));
}

SupQuotient quotient_by_pairs(LatticePtr b,
                              const std::vector<std::pair<Elem, Elem>>& seeds) {
  const int n = b->size();
  // union-find
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[std::size_t(i)] = i;
  auto find = [&](int a) {
    while (parent[std::size_t(a)] != a) {
      parent[std::size_t(a)] = parent[std::size_t(parent[std::size_t(a)])];
      a = parent[std::size_t(a)];
    }
    return a;
  };
  std::vector<std::pair<Elem, Elem>> work(seeds);
  auto merge = [&](Elem p, Elem q) {
    int a = find(p), c = find(q);
    if (a == c) return false;
    parent[std::size_t(a)] = c;
    return true;
  };
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    if (p < 0 || p >= n || q < 0 || q >= n) throw input_error("quotient: seed out of carrier");
    if (!merge(p, q)) continue;
    // congruence rule: p ~ q forces p v c ~ q v c for every c
    for (Elem c = 0; c < n; ++c) {
      Elem pc = b->join(p, c), qc = b->join(q, c);
      if (find(pc) != find(qc)) work.push_back({pc, qc});
    }
  }
  // classes are join-closed, so each has a maximal element
  std::map<int, Elem> root_max;
  for (Elem e = 0; e < n; ++e) {
    int r = find(e);
    auto it = root_max.find(r);
    if (it == root_max.end())
      root_max[r] = e;
    else
      it->second = b->join(it->second, e);
  }
  for (auto& [r, mx] : root_max)
    if (find(mx) != r) throw internal_error("quotient: class not join-closed");
  // class ids ordered by maximal representative
  std::vector<std::pair<Elem, int>> reps;
  for (auto& [r, mx] : root_max) reps.push_back({mx, r});
  std::sort(reps.begin(), reps.end());
  std::map<int, int> root_class;
  SupQuotient out;
  out.over = b;
  out.class_max.resize(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    root_class[reps[i].second] = int(i);
    out.class_max[i] = reps[i].first;
  }
  out.class_of.resize(std::size_t(n));
  for (Elem e = 0; e < n; ++e) out.class_of[std::size_t(e)] = root_class[find(e)];

  const int q = int(reps.size());
  std::vector<std::uint8_t> leq(std::size_t(q) * q, 0);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      leq[std::size_t(i) * q + j] = b->leq(out.class_max[std::size_t(i)], out.class_max[std::size_t(j)]) ? 1 : 0;
  out.quotient = std::make_shared<FiniteLattice>(q, std::move(leq));
  // order via representatives must agree with the congruence order ([a] <= [b] iff a v b ~ b)
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c) {
      bool rep_leq = out.quotient->leq(out.class_of[std::size_t(a)], out.class_of[std::size_t(c)]);
      bool cong_leq = out.class_of[std::size_t(b->join(a, c))] == out.class_of[std::size_t(c)];
      if (rep_leq != cong_leq) throw internal_error("quotient: order mismatch");
      if (out.class_of[std::size_t(b->join(a, c))] !=
          out.quotient->join(out.class_of[std::size_t(a)], out.class_of[std::size_t(c)]))
        throw internal_error("quotient: projection does not preserve joins");
    }
  return out;
}

SupQuotient coequalize(const SupMap& f, const SupMap& g) {
  if (!(*f.src == *g.src) || !(*f.tgt == *g.tgt))
    throw input_error("coequalize: maps are not parallel");
  std::vector<std::pair<Elem, Elem>> seeds;
  for (Elem a = 0; a < f.src->size(); ++a) seeds.push_back({f(a), g(a)});
  return quotient_by_pairs(f.tgt, seeds);
}

std::vector<SupMap> enumerate_supmaps(LatticePtr src, LatticePtr tgt) {
  std::vector<SupMap> out;
  const int ns = src->size(), nt = tgt->size();
  bool direct_ok = true;
  {
    std::int64_t c = 1;
    for (int i = 0; i < ns && direct_ok; ++i) {
      c *= nt;
      if (c > guard_cells()) direct_ok = false;
    }
  }
  if (direct_ok) {
    PowIndex idx(nt, ns);
    for (std::int64_t r = 0; r < idx.count; ++r) {
      std::vector<Elem> m = idx.unrank(r);
      if (SupMap::check(*src, *tgt, m).ok()) out.push_back(SupMap(src, tgt, std::move(m)));
    }
    return out;
  }
  std::int64_t c = 1;
  for (int i = 0; i < nt; ++i) {
    c *= ns;
    if (c > guard_cells())
      throw resource_error("enumerate_supmaps: both directions exceed guard");
  }
  // enumerate right adjoints: maps tgt -> src preserving top and binary meets
  PowIndex idx(ns, nt);
  std::set<std::vector<Elem>> found;
  for (std::int64_t r = 0; r < idx.count; ++r) {
    std::vector<Elem> g = idx.unrank(r);
    if (g[std::size_t(tgt->top())] != src->top()) continue;
    bool ok = true;
    for (Elem a = 0; a < nt && ok; ++a)
      for (Elem b = a + 1; b < nt && ok; ++b)
        ok = g[std::size_t(tgt->meet(a, b))] == src->meet(g[std::size_t(a)], g[std::size_t(b)]);
    if (!ok) continue;
    std::vector<Elem> f(static_cast<std::size_t>(ns));
    for (Elem x = 0; x < ns; ++x) {
      Elem acc = tgt->top();
      for (Elem z = 0; z < nt; ++z)
        if (src->leq(x, g[std::size_t(z)])) acc = tgt->meet(acc, z);
      f[std::size_t(x)] = acc;
    }
    if (!SupMap::check(*src, *tgt, f).ok())
      throw internal_error("enumerate_supmaps: adjoint transpose not a sup-map");
    found.insert(std::move(f));
  }
  for (const auto& f : found) out.push_back(SupMap(src, tgt, f));
  return out;
}

LawReport verify_tensor_universal(const TensorSup& t, LatticePtr z) {
  LawReport rep;
  // bimorphisms enumerated as sup-maps X -> Sup(Y,Z)
  std::vector<SupMap> yz = enumerate_supmaps(t.right(), z);
  const int s = int(yz.size());
  std::vector<std::uint8_t> leq(std::size_t(s) * s, 0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      bool le = true;
      for (Elem b = 0; b < t.right()->size(); ++b)
        le = le && z->leq(yz[std::size_t(i)](b), yz[std::size_t(j)](b));
      leq[std::size_t(i) * s + j] = le ? 1 : 0;
    }
  auto homl = std::make_shared<FiniteLattice>(s, std::move(leq));
  std::vector<SupMap> curried = enumerate_supmaps(t.left(), homl);
  std::vector<SupMap> direct = enumerate_supmaps(t.lattice_ptr(), z);
  if (curried.size() != direct.size())
    rep.fail("tensor.bijection",
             "bimorphisms " + std::to_string(curried.size()) + " vs sup-maps " +
                 std::to_string(direct.size()));
  std::set<std::vector<Elem>> images;
  const int ny = t.right()->size();
  for (const SupMap& cf : curried) {
    std::vector<Elem> f(std::size_t(t.left()->size()) * ny);
    for (Elem a = 0; a < t.left()->size(); ++a)
      for (Elem b = 0; b < ny; ++b) f[std::size_t(a) * ny + b] = yz[std::size_t(cf(a))](b);
    SupMap h = t.classify(z, f);
    if (!images.insert(h.map).second)
      rep.fail("tensor.injective", "two bimorphisms classified to one sup-map");
    for (Elem a = 0; a < t.left()->size(); ++a)
      for (Elem b = 0; b < ny; ++b)
        if (h(t.pi(a, b)) != f[std::size_t(a) * ny + b])
          rep.fail("tensor.factoring", show_pair(a, b));
  }
  for (const SupMap& h : direct)
    if (!images.count(h.map))
      rep.fail("tensor.surjective", "sup-map not hit by any bimorphism");
  return rep;
}

}  // namespace qlab
