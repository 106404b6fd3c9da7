#include "qlab/vmod.hpp"

#include <algorithm>

#include "qlab/pv_alg.hpp"

namespace qlab {

namespace {

VCatPtr share_cat(VCategory c) { return std::make_shared<VCategory>(std::move(c)); }

std::string show_table(const std::vector<Elem>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace

LawReport VModule::check(const Quantale& base, const FiniteLattice& carrier,
                         const std::vector<Elem>& action) {
  LawReport rep;
  const int nv = base.size(), nx = carrier.size();
  if (action.size() != std::size_t(nv) * nx) {
    rep.fail("vmod.table", "action has wrong size");
    return rep;
  }
  for (Elem e : action)
    if (e < 0 || e >= nx) {
      rep.fail("vmod.table", "action value out of carrier");
      return rep;
    }
  auto act = [&](Elem v, Elem x) { return action[std::size_t(v) * nx + x]; };
  for (Elem x = 0; x < nx; ++x)
    if (act(base.unit(), x) != x) rep.fail("vmod.unit", std::to_string(x));
  for (Elem v = 0; v < nv; ++v)
    for (Elem u = 0; u < nv; ++u)
      for (Elem x = 0; x < nx; ++x)
        if (act(v, act(u, x)) != act(base.tensor(v, u), x))
          rep.fail("vmod.assoc", show_triple(v, u, x));
  for (Elem x = 0; x < nx; ++x) {
    if (act(base.bottom(), x) != carrier.bottom())
      rep.fail("vmod.join_scalar", "bottom at x=" + std::to_string(x));
    for (Elem v = 0; v < nv; ++v)
      for (Elem u = 0; u < nv; ++u)
        if (act(base.join(v, u), x) != carrier.join(act(v, x), act(u, x)))
          rep.fail("vmod.join_scalar", show_triple(v, u, x));
  }
  for (Elem v = 0; v < nv; ++v) {
    if (act(v, carrier.bottom()) != carrier.bottom())
      rep.fail("vmod.join_carrier", "bottom at v=" + std::to_string(v));
    for (Elem x = 0; x < nx; ++x)
      for (Elem y = 0; y < nx; ++y)
        if (act(v, carrier.join(x, y)) != carrier.join(act(v, x), act(v, y)))
          rep.fail("vmod.join_carrier", show_triple(v, x, y));
  }
  return rep;
}

VModule::VModule(QuantalePtr base, LatticePtr carrier, std::vector<Elem> action)
    : base_(std::move(base)), carrier_(std::move(carrier)), action_(std::move(action)) {
  require_commutative_base(*base_, "VModule");
  check(*base_, *carrier_, action_).require("vmodule");
}

LawReport VModuleMap::check(const VModule& src, const VModule& tgt,
                            const std::vector<Elem>& map) {
  LawReport rep;
  if (!(*src.base() == *tgt.base())) {
    rep.fail("modmap.base", "modules live over different bases");
    return rep;
  }
  rep.merge(SupMap::check(*src.carrier(), *tgt.carrier(), map));
  if (!rep.ok()) return rep;
  for (Elem v = 0; v < src.base()->size(); ++v)
    for (Elem x = 0; x < src.size(); ++x)
      if (map[std::size_t(src.act(v, x))] != tgt.act(v, map[std::size_t(x)]))
        rep.fail("modmap.equivariance", show_pair(v, x));
  return rep;
}

VModuleMap::VModuleMap(VModPtr src_, VModPtr tgt_, std::vector<Elem> map_)
    : src(std::move(src_)), tgt(std::move(tgt_)), map(std::move(map_)) {
  check(*src, *tgt, map).require("vmodulemap");
}

VModule self_module(QuantalePtr base) {
  const int n = base->size();
  auto carrier = std::make_shared<FiniteLattice>(base->lattice());
  std::vector<Elem> action(std::size_t(n) * n);
  for (Elem v = 0; v < n; ++v)
    for (Elem x = 0; x < n; ++x) action[std::size_t(v) * n + x] = base->tensor(v, x);
  return VModule(std::move(base), std::move(carrier), std::move(action));
}

VModule two_action(LatticePtr x) {
  QuantalePtr two = quantale_two();
  const int nx = x->size();
  std::vector<Elem> action(std::size_t(2) * nx);
  for (Elem e = 0; e < nx; ++e) {
    action[std::size_t(e)] = x->bottom();
    action[std::size_t(nx) + e] = e;
  }
  return VModule(std::move(two), std::move(x), std::move(action));
}

VCategory module_to_vcat(const VModule& m) {
  const Quantale& v = *m.base();
  const int nx = m.size();
  std::vector<Elem> cells(std::size_t(nx) * nx, v.bottom());
  for (Elem x = 0; x < nx; ++x)
    for (Elem y = 0; y < nx; ++y) {
      Elem acc = v.bottom();
      for (Elem w = 0; w < v.size(); ++w)
        if (m.carrier()->leq(m.act(w, x), y)) acc = v.join(acc, w);
      cells[std::size_t(x) * nx + y] = acc;
    }
  for (Elem w = 0; w < v.size(); ++w)
    for (Elem x = 0; x < nx; ++x)
      for (Elem y = 0; y < nx; ++y)
        if (m.carrier()->leq(m.act(w, x), y) !=
            v.leq(w, cells[std::size_t(x) * nx + y]))
          throw internal_error("module_to_vcat: adjunction broken at " +
                               show_triple(w, x, y));
  VCategory cat = [&] {
    try {
      return VCategory(VMatrix(m.base(), nx, nx, std::move(cells)));
    } catch (const input_error& e) {
      throw internal_error(std::string("module_to_vcat: ") + e.what());
    }
  }();
  if (!is_separated(cat)) throw internal_error("module_to_vcat: not separated");
  try {
    SupResult s = find_sup(presheaf_category(share_cat(cat)));
    if (!s.cocomplete) throw internal_error("module_to_vcat: not cocomplete");
  } catch (const resource_error&) {
    // presheaf sweep too large here; the adjunction above already certifies
    // copowers and the carrier lattice supplies the conical joins
  }
  return cat;
}

VModule vcat_to_module(const VCategory& x) {
  if (!is_separated(x)) throw input_error("vcat_to_module: category is not separated");
  const Quantale& v = *x.base();
  const int nx = x.size();
  bool certified = false;
  try {
    SupResult s = find_sup(presheaf_category(share_cat(VCategory(x.hom()))));
    if (!s.cocomplete)
      throw input_error("vcat_to_module: not cocomplete; weight without sup: " +
                        show_table(*s.witness));
    certified = true;
  } catch (const resource_error&) {
    // too many presheaves to sweep; rely on the copower search below
  }
  std::vector<std::uint8_t> leq(std::size_t(nx) * nx, 0);
  for (Elem a = 0; a < nx; ++a)
    for (Elem b = 0; b < nx; ++b) leq[std::size_t(a) * nx + b] = x.order_leq(a, b);
  auto carrier = [&] {
    try {
      return std::make_shared<FiniteLattice>(nx, std::move(leq));
    } catch (const input_error& e) {
      if (certified) throw internal_error(std::string("vcat_to_module: ") + e.what());
      throw input_error(std::string("vcat_to_module: underlying order is not a "
                                    "complete lattice: ") +
                        e.what());
    }
  }();
  std::vector<Elem> action(std::size_t(v.size()) * nx);
  for (Elem u = 0; u < v.size(); ++u)
    for (Elem ob = 0; ob < nx; ++ob) {
      int found = -1;
      for (Elem cand = 0; cand < nx; ++cand) {
        bool match = true;
        for (Elem y = 0; y < nx && match; ++y)
          match = x.at(cand, y) == v.hom(u, x.at(ob, y));
        if (!match) continue;
        if (found >= 0) throw internal_error("vcat_to_module: copower not unique");
        found = cand;
      }
      if (found < 0) {
        std::string msg = "vcat_to_module: missing copower at " + show_pair(u, ob);
        if (certified) throw internal_error(msg);
        throw input_error(msg);
      }
      action[std::size_t(u) * nx + ob] = found;
    }
  try {
    return VModule(x.base(), std::move(carrier), std::move(action));
  } catch (const input_error& e) {
    if (certified) throw internal_error(std::string("vcat_to_module: ") + e.what());
    throw;
  }
}

RoundtripResult roundtrip_module(const VModule& m) {
  VModule back = vcat_to_module(module_to_vcat(m));
  RoundtripResult r;
  if (!(*back.carrier() == *m.carrier())) {
    r.ok = false;
    r.diff = "carrier order differs";
    return r;
  }
  for (Elem v = 0; v < m.base()->size(); ++v)
    for (Elem x = 0; x < m.size(); ++x)
      if (back.act(v, x) != m.act(v, x)) {
        r.ok = false;
        r.diff = "act" + show_pair(v, x) + ": " + std::to_string(back.act(v, x)) +
                 " vs " + std::to_string(m.act(v, x));
        return r;
      }
  return r;
}

RoundtripResult roundtrip_vcat(const VCategory& x) {
  VCategory back = module_to_vcat(vcat_to_module(x));
  RoundtripResult r;
  for (Elem a = 0; a < x.size(); ++a)
    for (Elem b = 0; b < x.size(); ++b)
      if (back.at(a, b) != x.at(a, b)) {
        r.ok = false;
        r.diff = "hom" + show_pair(a, b) + ": " + std::to_string(back.at(a, b)) +
                 " vs " + std::to_string(x.at(a, b));
        return r;
      }
  return r;
}

FreeModule action_monad_apply(QuantalePtr base, LatticePtr x) {
  require_commutative_base(*base, "action_monad_apply");
  auto vl = std::make_shared<FiniteLattice>(base->lattice());
  auto pairs = std::make_shared<TensorSup>(vl, x);
  const int nv = base->size(), nx = x->size(), nt = pairs->lattice().size();

  std::vector<Elem> action(std::size_t(nv) * nt);
  for (Elem v = 0; v < nv; ++v) {
    std::vector<Elem> bim(std::size_t(nv) * nx);
    for (Elem w = 0; w < nv; ++w)
      for (Elem e = 0; e < nx; ++e)
        bim[std::size_t(w) * nx + e] = pairs->pi(base->tensor(v, w), e);
    SupMap scaled = pairs->classify(pairs->lattice_ptr(), bim);
    std::copy(scaled.map.begin(), scaled.map.end(),
              action.begin() + std::size_t(v) * nt);
  }
  auto module = std::make_shared<VModule>(base, pairs->lattice_ptr(), action);

  std::vector<Elem> unit(static_cast<std::size_t>(nx));
  for (Elem e = 0; e < nx; ++e) unit[std::size_t(e)] = pairs->pi(base->unit(), e);
  if (!SupMap::check(*x, pairs->lattice(), unit).ok())
    throw internal_error("action_monad_apply: unit is not a sup-map");

  // adjunction triangles, via the doubled tensor
  TensorSup doubled(vl, pairs->lattice_ptr());
  std::vector<Elem> lifted(std::size_t(nv) * nx);
  for (Elem v = 0; v < nv; ++v)
    for (Elem e = 0; e < nx; ++e)
      lifted[std::size_t(v) * nx + e] = doubled.pi(v, unit[std::size_t(e)]);
  SupMap feta = pairs->classify(doubled.lattice_ptr(), lifted);
  std::vector<Elem> counit_bim(std::size_t(nv) * nt);
  for (Elem v = 0; v < nv; ++v)
    for (Elem t = 0; t < nt; ++t)
      counit_bim[std::size_t(v) * nt + t] = module->act(v, t);
  SupMap counit = doubled.classify(pairs->lattice_ptr(), counit_bim);
  for (Elem t = 0; t < nt; ++t) {
    if (counit(feta(t)) != t)
      throw internal_error("action_monad_apply: first triangle fails at " +
                           std::to_string(t));
    if (counit(doubled.pi(base->unit(), t)) != t)
      throw internal_error("action_monad_apply: second triangle fails at " +
                           std::to_string(t));
  }
  return FreeModule{std::move(pairs), std::move(module), std::move(unit)};
}

ModTensor tensor_mod(const VModule& m, const VModule& n) {
  if (!(*m.base() == *n.base())) throw input_error("tensor_mod: bases differ");
  const Quantale& v = *m.base();
  auto pairs = std::make_shared<TensorSup>(m.carrier(), n.carrier());
  const int nx = m.size(), ny = n.size(), nt = pairs->lattice().size();

  std::vector<std::pair<Elem, Elem>> seeds;
  for (Elem w = 0; w < v.size(); ++w)
    for (Elem x = 0; x < nx; ++x)
      for (Elem y = 0; y < ny; ++y) {
        Elem a = pairs->pi(m.act(w, x), y);
        Elem b = pairs->pi(x, n.act(w, y));
        if (a != b) seeds.emplace_back(a, b);
      }
  SupQuotient quot = quotient_by_pairs(pairs->lattice_ptr(), seeds);
  const int nq = quot.quotient->size();

  std::vector<Elem> action(std::size_t(v.size()) * nq);
  for (Elem w = 0; w < v.size(); ++w) {
    std::vector<Elem> bim(std::size_t(nx) * ny);
    for (Elem x = 0; x < nx; ++x)
      for (Elem y = 0; y < ny; ++y)
        bim[std::size_t(x) * ny + y] = pairs->pi(m.act(w, x), y);
    SupMap lift = pairs->classify(pairs->lattice_ptr(), bim);
    for (int q = 0; q < nq; ++q)
      action[std::size_t(w) * nq + q] =
          Elem(quot.class_of[std::size_t(lift(quot.class_max[std::size_t(q)]))]);
    // the action must descend to classes
    for (Elem t = 0; t < nt; ++t)
      if (quot.class_of[std::size_t(lift(t))] !=
          int(action[std::size_t(w) * nq + quot.class_of[std::size_t(t)]]))
        throw internal_error("tensor_mod: action does not respect the congruence");
  }
  auto module = [&] {
    try {
      return std::make_shared<VModule>(m.base(), quot.quotient, std::move(action));
    } catch (const input_error& e) {
      throw internal_error(std::string("tensor_mod: ") + e.what());
    }
  }();
  return ModTensor{std::move(pairs), std::move(quot), std::move(module)};
}

std::vector<Elem> left_unitor(const ModTensor& t, const VModule& m) {
  const Quantale& v = *m.base();
  if (t.pairs->left()->size() != v.size() || !(*t.pairs->right() == *m.carrier()))
    throw input_error("left_unitor: tensor is not V over this module");
  const int nq = t.quot.quotient->size(), nt = t.pairs->lattice().size();

  std::vector<Elem> bim(std::size_t(v.size()) * m.size());
  for (Elem w = 0; w < v.size(); ++w)
    for (Elem x = 0; x < m.size(); ++x)
      bim[std::size_t(w) * m.size() + x] = m.act(w, x);
  SupMap ev = t.pairs->classify(m.carrier(), bim);

  std::vector<Elem> uni(static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) uni[std::size_t(q)] = ev(t.quot.class_max[std::size_t(q)]);
  for (Elem s = 0; s < nt; ++s)
    if (ev(s) != uni[std::size_t(t.quot.class_of[std::size_t(s)])])
      throw internal_error("left_unitor: evaluation not constant on classes");
  if (nq != m.size()) throw internal_error("left_unitor: carrier sizes differ");
  for (Elem x = 0; x < m.size(); ++x) {
    Elem back = Elem(t.quot.class_of[std::size_t(t.pairs->pi(v.unit(), x))]);
    if (uni[std::size_t(back)] != x) throw internal_error("left_unitor: not inverse");
  }
  for (int q = 0; q < nq; ++q)
    for (int r = 0; r < nq; ++r)
      if (t.quot.quotient->leq(q, r) !=
          m.carrier()->leq(uni[std::size_t(q)], uni[std::size_t(r)]))
        throw internal_error("left_unitor: not an order isomorphism");
  for (Elem w = 0; w < v.size(); ++w)
    for (int q = 0; q < nq; ++q)
      if (uni[std::size_t(t.module->act(w, q))] != m.act(w, uni[std::size_t(q)]))
        throw internal_error("left_unitor: not equivariant");
  return uni;
}

std::vector<std::vector<Elem>> enumerate_module_maps(const VModule& m,
                                                     const VModule& n) {
  if (!(*m.base() == *n.base()))
    throw input_error("enumerate_module_maps: bases differ");
  std::vector<std::vector<Elem>> out;
  for (const SupMap& s : enumerate_supmaps(m.carrier(), n.carrier())) {
    bool equiv = true;
    for (Elem v = 0; v < m.base()->size() && equiv; ++v)
      for (Elem x = 0; x < m.size() && equiv; ++x)
        equiv = s(m.act(v, x)) == n.act(v, s(x));
    if (equiv) out.push_back(s.map);
  }
  return out;
}

LawReport verify_tensor_mod_universal(const ModTensor& t, const VModule& m,
                                      const VModule& n, const VModule& z) {
  LawReport rep;
  if (!(*m.base() == *z.base())) {
    rep.fail("modtensor.base", "probe module over a different base");
    return rep;
  }
  const Quantale& v = *m.base();
  const int nx = m.size(), ny = n.size();
  PowIndex idx(z.size(), nx * ny);
  if (idx.count > guard_cells())
    throw resource_error("verify_tensor_mod_universal: bimorphism space exceeds guard");

  std::vector<std::vector<Elem>> bimorphisms;
  for (std::int64_t r = 0; r < idx.count; ++r) {
    std::vector<Elem> f = idx.unrank(r);
    if (!check_bimorphism2(*m.carrier(), *n.carrier(), *z.carrier(), f).ok()) continue;
    bool good = true;
    for (Elem w = 0; w < v.size() && good; ++w)
      for (Elem x = 0; x < nx && good; ++x)
        for (Elem y = 0; y < ny && good; ++y) {
          Elem lhs = f[std::size_t(m.act(w, x)) * ny + y];
          good = lhs == f[std::size_t(x) * ny + n.act(w, y)] &&
                 lhs == z.act(w, f[std::size_t(x) * ny + y]);
        }
    if (good) bimorphisms.push_back(std::move(f));
  }

  std::vector<std::vector<Elem>> maps = enumerate_module_maps(*t.module, z);
  if (maps.size() != bimorphisms.size())
    rep.fail("modtensor.bijection", std::to_string(maps.size()) + " maps vs " +
                                        std::to_string(bimorphisms.size()) +
                                        " bimorphisms");
  std::sort(bimorphisms.begin(), bimorphisms.end());
  std::vector<std::vector<Elem>> induced;
  for (const auto& g : maps) {
    std::vector<Elem> f(std::size_t(nx) * ny);
    for (Elem x = 0; x < nx; ++x)
      for (Elem y = 0; y < ny; ++y)
        f[std::size_t(x) * ny + y] = g[std::size_t(t.pi(x, y))];
    if (!std::binary_search(bimorphisms.begin(), bimorphisms.end(), f))
      rep.fail("modtensor.factor_lands", "composite with pi is not balanced");
    induced.push_back(std::move(f));
  }
  std::sort(induced.begin(), induced.end());
  for (const auto& f : bimorphisms) {
    auto lo = std::lower_bound(induced.begin(), induced.end(), f);
    auto hi = std::upper_bound(induced.begin(), induced.end(), f);
    if (lo == hi) rep.fail("modtensor.factoring", "bimorphism with no factorization");
    if (hi - lo > 1) rep.fail("modtensor.unique", "bimorphism with several factorizations");
  }
  return rep;
}

PvIsoResult check_pv_iso(QuantalePtr base, int set_size) {
  require_commutative_base(*base, "check_pv_iso");
  if (set_size < 0) throw input_error("check_pv_iso: negative set size");
  if (set_size > 3)
    throw resource_error("check_pv_iso: set size " + std::to_string(set_size) +
                         " exceeds the supported bound 3");

  auto subsets = std::make_shared<FiniteLattice>(free_suplattice(set_size));
  FreeModule fm = action_monad_apply(base, subsets);
  auto tables =
      std::make_shared<FiniteLattice>(power_lattice(base->lattice(), set_size));

  PvIsoResult res;
  res.pairs = fm.pairs;
  res.tables = tables;
  LawReport& r = res.report;

  const int nv = base->size(), na = subsets->size();
  const int nt = fm.pairs->lattice().size();
  PowIndex idx(nv, set_size);

  std::vector<Elem> bim(std::size_t(nv) * na);
  for (Elem v = 0; v < nv; ++v)
    for (Elem a = 0; a < na; ++a) {
      std::vector<Elem> tbl(std::size_t(set_size), base->bottom());
      for (int x = 0; x < set_size; ++x)
        if (a >> x & 1) tbl[std::size_t(x)] = v;
      bim[std::size_t(v) * na + a] = Elem(idx.rank(tbl));
    }
  SupMap tau = fm.pairs->classify(tables, bim);
  res.to_rank = tau.map;

  if (nt != tables->size()) {
    r.fail("pviso.size",
           std::to_string(nt) + " vs " + std::to_string(tables->size()));
    return res;
  }

  // injective, hence bijective at equal finite size
  res.from_rank.assign(std::size_t(nt), Elem(-1));
  for (Elem t = 0; t < nt; ++t) {
    Elem& slot = res.from_rank[std::size_t(tau.map[std::size_t(t)])];
    if (slot != Elem(-1))
      r.fail("pviso.injective", show_pair(slot, t));
    else
      slot = t;
  }
  if (!r.ok()) return res;

  // order-embedding in both directions
  for (Elem s = 0; s < nt; ++s)
    for (Elem t = 0; t < nt; ++t)
      if (fm.pairs->lattice().leq(s, t) !=
          tables->leq(tau.map[std::size_t(s)], tau.map[std::size_t(t)]))
        r.fail("pviso.monotone", show_pair(s, t));

  // unit square: pi(k, {x}) must land on the unit table at x
  std::vector<Elem> units = pv_unit_ranks(*base, set_size);
  for (int x = 0; x < set_size; ++x) {
    Elem gen = fm.unit[std::size_t(Elem(1) << x)];
    if (tau.map[std::size_t(gen)] != units[std::size_t(x)])
      r.fail("pviso.unit", std::to_string(x));
  }

  // multiplication square on the join-dense generators pi(v, {t}): the
  // composite multiplication there is the free-module action, and its image
  // must be the pointwise scaling, computed as the table multiplication of a
  // scaled singleton. Both routes preserve joins, so generators settle it.
  for (Elem v = 0; v < nv; ++v)
    for (Elem t = 0; t < nt; ++t) {
      Elem route1 = tau.map[std::size_t(fm.module->act(v, t))];
      std::vector<Elem> big(std::size_t(idx.count), base->bottom());
      big[std::size_t(tau.map[std::size_t(t)])] = v;
      Elem route2 = Elem(idx.rank(pv_mult(*base, set_size, big)));
      if (route1 != route2) r.fail("pviso.mult", show_pair(v, t));
    }
  return res;
}

}  // namespace qlab
