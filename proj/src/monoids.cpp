#include "qlab/monoids.hpp"

#include <algorithm>

namespace qlab {

namespace {

// Station-prefixed aggregation for the chain report.
void merge_station(LawReport& into, const char* station, const LawReport& part) {
  for (const Violation& v : part.violations)
    into.fail(std::string(station) + ":" + v.law, v.witness);
  for (const std::string& n : part.notes)
    into.note(std::string(station) + ": " + n);
}

std::string show_quad(int a, int b, int c, int d) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" +
         std::to_string(c) + "," + std::to_string(d) + ")";
}

}  // namespace

LawReport ModMonoid::check(const VModule& m, const std::vector<Elem>& mult,
                           Elem unit) {
  LawReport rep;
  const int n = m.size();
  if (mult.size() != std::size_t(n) * n) {
    rep.fail("monmod.table", "multiplication has wrong size");
    return rep;
  }
  for (Elem e : mult)
    if (e < 0 || e >= n) {
      rep.fail("monmod.table", "multiplication value out of carrier");
      return rep;
    }
  if (unit < 0 || unit >= n) {
    rep.fail("monmod.table", "unit out of carrier");
    return rep;
  }
  auto times = [&](Elem x, Elem y) { return mult[std::size_t(x) * n + y]; };

  for (Elem x = 0; x < n; ++x) {
    if (times(unit, x) != x || times(x, unit) != x)
      rep.fail("monmod.unit", std::to_string(x));
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (times(times(x, y), z) != times(x, times(y, z)))
          rep.fail("monmod.assoc", show_triple(x, y, z));
  }
  rep.merge(check_bimorphism2(*m.carrier(), *m.carrier(), *m.carrier(), mult));
  for (Elem v = 0; v < m.base()->size(); ++v)
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        Elem whole = m.act(v, times(x, y));
        if (times(m.act(v, x), y) != whole)
          rep.fail("monmod.balance_left", show_triple(v, x, y));
        if (times(x, m.act(v, y)) != whole)
          rep.fail("monmod.balance_right", show_triple(v, x, y));
      }
  return rep;
}

ModMonoid::ModMonoid(VModPtr module_, std::vector<Elem> mult_, Elem unit_)
    : module(std::move(module_)), mult(std::move(mult_)), unit(unit_) {
  check(*module, mult, unit).require("module monoid");
}

LawReport CentralEmbedding::check(const Quantale& src, const Quantale& tgt,
                                  const std::vector<Elem>& map) {
  LawReport rep = QuantaleMorphism::check(src, tgt, map);
  if (!rep.ok()) return rep;
  for (Elem v = 0; v < src.size(); ++v)
    for (Elem u = 0; u < tgt.size(); ++u)
      if (tgt.tensor(map[std::size_t(v)], u) != tgt.tensor(u, map[std::size_t(v)]))
        rep.fail("central.central", show_pair(v, u));
  return rep;
}

CentralEmbedding::CentralEmbedding(QuantalePtr source_, QuantalePtr target_,
                                   std::vector<Elem> map_)
    : source(std::move(source_)), target(std::move(target_)), map(std::move(map_)) {
  require_commutative_base(*source, "CentralEmbedding");
  check(*source, *target, map).require("central embedding");
}

LawReport ActedQuantale::check(const Quantale& base, const Quantale& tgt,
                               const std::vector<Elem>& rho) {
  LawReport rep = VModule::check(base, tgt.lattice(), rho);
  if (!rep.ok()) return rep;
  const int nq = tgt.size();
  auto act = [&](Elem v, Elem q) { return rho[std::size_t(v) * nq + q]; };
  if (act(base.unit(), tgt.unit()) != tgt.unit()) rep.fail("acted.unit", "k");
  for (Elem v1 = 0; v1 < base.size(); ++v1)
    for (Elem v2 = 0; v2 < base.size(); ++v2)
      for (Elem q1 = 0; q1 < nq; ++q1)
        for (Elem q2 = 0; q2 < nq; ++q2)
          if (act(base.tensor(v1, v2), tgt.tensor(q1, q2)) !=
              tgt.tensor(act(v1, q1), act(v2, q2)))
            rep.fail("acted.hom", show_quad(v1, v2, q1, q2));
  return rep;
}

ActedQuantale::ActedQuantale(QuantalePtr base_, QuantalePtr target_,
                             std::vector<Elem> rho_)
    : base(std::move(base_)), target(std::move(target_)), rho(std::move(rho_)) {
  require_commutative_base(*base, "ActedQuantale");
  check(*base, *target, rho).require("acted quantale");
}

CentralEmbedding monoid_to_central(const ModMonoid& m) {
  try {
    auto q = std::make_shared<const Quantale>(FiniteLattice(*m.module->carrier()),
                                              m.mult, m.unit);
    std::vector<Elem> f(std::size_t(m.module->base()->size()));
    for (Elem v = 0; v < m.module->base()->size(); ++v)
      f[std::size_t(v)] = m.module->act(v, m.unit);
    return CentralEmbedding(m.module->base(), q, std::move(f));
  } catch (const input_error& e) {
    throw internal_error(std::string("monoid_to_central: ") + e.what());
  }
}

ModMonoid central_to_monoid(const CentralEmbedding& f) {
  const Quantale& q = *f.target;
  const int nv = f.source->size(), nq = q.size();
  std::vector<Elem> rho(std::size_t(nv) * nq);
  for (Elem v = 0; v < nv; ++v)
    for (Elem x = 0; x < nq; ++x)
      rho[std::size_t(v) * nq + x] = q.tensor(f(v), x);
  try {
    auto mod = std::make_shared<const VModule>(
        f.source, std::make_shared<FiniteLattice>(q.lattice()), std::move(rho));
    return ModMonoid(std::move(mod), q.tensor_table(), q.unit());
  } catch (const input_error& e) {
    throw internal_error(std::string("central_to_monoid: ") + e.what());
  }
}

ActedQuantale central_to_acted(const CentralEmbedding& f) {
  const Quantale& q = *f.target;
  const int nv = f.source->size(), nq = q.size();
  std::vector<Elem> rho(std::size_t(nv) * nq);
  for (Elem v = 0; v < nv; ++v)
    for (Elem x = 0; x < nq; ++x)
      rho[std::size_t(v) * nq + x] = q.tensor(f(v), x);
  try {
    return ActedQuantale(f.source, f.target, std::move(rho));
  } catch (const input_error& e) {
    throw internal_error(std::string("central_to_acted: ") + e.what());
  }
}

CentralEmbedding acted_to_central(const ActedQuantale& a) {
  std::vector<Elem> f(std::size_t(a.base->size()));
  for (Elem v = 0; v < a.base->size(); ++v)
    f[std::size_t(v)] = a.act(v, a.target->unit());
  try {
    return CentralEmbedding(a.base, a.target, std::move(f));
  } catch (const input_error& e) {
    throw internal_error(std::string("acted_to_central: ") + e.what());
  }
}

ModMonoid free_monoid_algebra(QuantalePtr base, const FiniteMonoid& m) {
  require_commutative_base(*base, "free_monoid_algebra");
  const int n = m.size;
  if (n < 1) throw input_error("free_monoid_algebra: empty exponent monoid");
  if (n > 4)
    throw resource_error("free_monoid_algebra: exponent monoid of size " +
                         std::to_string(n) + " exceeds the supported bound 4");
  if (m.mult.size() != std::size_t(n) * n)
    throw input_error("free_monoid_algebra: multiplication has wrong size");
  for (Elem e : m.mult)
    if (e < 0 || e >= n)
      throw input_error("free_monoid_algebra: multiplication value out of carrier");
  if (m.unit < 0 || m.unit >= n)
    throw input_error("free_monoid_algebra: unit out of carrier");
  auto dot = [&](Elem x, Elem y) { return m.mult[std::size_t(x) * n + y]; };
  for (Elem x = 0; x < n; ++x) {
    if (dot(m.unit, x) != x || dot(x, m.unit) != x)
      throw input_error("free_monoid_algebra: unit law fails at " +
                        std::to_string(x));
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (dot(dot(x, y), z) != dot(x, dot(y, z)))
          throw input_error("free_monoid_algebra: associativity fails at " +
                            show_triple(x, y, z));
  }

  VModule mod = algebra_to_module(free_algebra(base, n));
  PowIndex idx(base->size(), n);
  const int count = int(idx.count);

  // convolution = direct image of the box table along the multiplication
  std::vector<Elem> mult(std::size_t(count) * count);
  for (int r = 0; r < count; ++r) {
    std::vector<Elem> psi = idx.unrank(r);
    for (int s = 0; s < count; ++s) {
      std::vector<Elem> phi = idx.unrank(s);
      std::vector<Elem> prod =
          pv_apply(*base, m.mult, n, box(*base, psi, phi));
      mult[std::size_t(r) * count + s] = Elem(idx.rank(prod));
    }
  }
  Elem unit = Elem(idx.rank(pv_unit(*base, n, m.unit)));

  try {
    ModMonoid out(std::make_shared<const VModule>(std::move(mod)),
                  std::move(mult), unit);
    monoid_to_central(out);  // postcondition: the convolution quantale is lawful
    return out;
  } catch (const input_error& e) {
    throw internal_error(std::string("free_monoid_algebra: ") + e.what());
  }
}

namespace {

// Monoid multiplication classified through the module tensor at micro scale:
// the induced map on the quotient must factor the table and be equivariant.
void tensor_factoring(LawReport& rep, const ModMonoid& m) {
  ModTensor t = [&] {
    try {
      return tensor_mod(*m.module, *m.module);
    } catch (const resource_error&) {
      rep.note("tensor factoring skipped: module tensor exceeds the guard");
      return ModTensor{nullptr, {}, nullptr};
    }
  }();
  if (!t.module) return;
  const int n = m.module->size(), nq = t.module->size();
  std::vector<Elem> h(std::size_t(nq), m.module->carrier()->bottom());
  for (int qc = 0; qc < nq; ++qc) {
    std::uint64_t cells = t.pairs->cells_of(t.quot.class_max[std::size_t(qc)]);
    for (int c = 0; c < t.pairs->cell_count(); ++c)
      if (cells >> c & 1)
        h[std::size_t(qc)] = m.module->carrier()->join(
            h[std::size_t(qc)], m.times(Elem(c / n), Elem(c % n)));
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (h[std::size_t(t.pi(x, y))] != m.times(x, y))
        rep.fail("chain.tensor_factor", show_pair(x, y));
  if (!VModuleMap::check(*t.module, *m.module, h).ok())
    rep.fail("chain.tensor_map", "induced map is not an equivariant sup-map");
}

EquivChain build_chain(const CentralEmbedding& central) {
  ModMonoid monoid = central_to_monoid(central);
  ActedQuantale acted = central_to_acted(central);

  PVAlgebra alg = module_to_algebra(*monoid.module);
  AlgMonoid algebra{alg, monoid.mult, monoid.unit};

  LawReport rep;
  merge_station(rep, "acted",
                ActedQuantale::check(*acted.base, *acted.target, acted.rho));
  merge_station(rep, "central",
                CentralEmbedding::check(*central.source, *central.target,
                                        central.map));
  merge_station(rep, "monoid",
                ModMonoid::check(*monoid.module, monoid.mult, monoid.unit));

  if (!is_bimorphism_strength(algebra.algebra, algebra.algebra, algebra.algebra,
                              algebra.mult))
    rep.fail("algebra:algmon.bimorphism", "multiplication");
  try {
    AlgTensor t = tensor_alg(algebra.algebra, algebra.algebra);
    classify_bimorphism(t, algebra.algebra, algebra.algebra, algebra.algebra,
                        algebra.mult);
  } catch (const resource_error&) {
    rep.note("algebra: tensor classification skipped (guard)");
  } catch (const input_error& e) {
    rep.fail("algebra:algmon.tensor_factor", e.what());
  }
  tensor_factoring(rep, monoid);

  if (!(acted_to_central(acted) == central))
    rep.fail("chain.roundtrip.central", "acted station does not recover the embedding");
  if (!(monoid_to_central(monoid) == central))
    rep.fail("chain.roundtrip.embedding", "monoid station does not recover the embedding");
  if (!(central_to_monoid(monoid_to_central(monoid)) == monoid))
    rep.fail("chain.roundtrip.monoid", "monoid round trip is not the identity");
  if (!(central_to_acted(acted_to_central(acted)) == acted))
    rep.fail("chain.roundtrip.acted", "acted round trip is not the identity");
  if (!(algebra_to_module(algebra.algebra) == *monoid.module))
    rep.fail("chain.roundtrip.algebra", "algebra station does not recover the module");

  return EquivChain{std::move(acted), central, std::move(monoid),
                    std::move(algebra), std::move(rep)};
}

}  // namespace

EquivChain equivalence_chain(const ActedQuantale& a) {
  return build_chain(acted_to_central(a));
}

EquivChain equivalence_chain(const CentralEmbedding& f) { return build_chain(f); }

EquivChain equivalence_chain(const ModMonoid& m) {
  return build_chain(monoid_to_central(m));
}

const std::vector<ActedQuantale>& acted_catalog() {
  static const std::vector<ActedQuantale> entries = [] {
    std::vector<ActedQuantale> out;
    auto self_action = [](const QuantalePtr& q) {
      return ActedQuantale(q, q, q->tensor_table());
    };
    auto two_action = [](const QuantalePtr& q) {
      QuantalePtr two = quantale_two();
      std::vector<Elem> rho(std::size_t(2) * q->size());
      for (Elem x = 0; x < q->size(); ++x) {
        rho[std::size_t(x)] = q->bottom();
        rho[std::size_t(q->size()) + x] = x;
      }
      return ActedQuantale(two, q, std::move(rho));
    };

    for (const CatalogEntry& e : builtin_catalog())
      if (e.base_ok) out.push_back(self_action(e.q));

    QuantalePtr c3 = quantale_chain_min(3);
    out.push_back(two_action(quantale_chain_min(3)));
    out.push_back(two_action(quantale_bool_square()));
    out.push_back(two_action(quantale_endo(c3->lattice(), "endo(chain_min(3))")));
    out.push_back(two_action(quantale_lukasiewicz(3)));

    // embedded chain action on the square lattice
    out.push_back(central_to_acted(
        CentralEmbedding(c3, quantale_bool_square(), {0, 1, 3})));

    FiniteMonoid z2{2, {0, 1, 1, 0}, 0};
    out.push_back(central_to_acted(
        monoid_to_central(free_monoid_algebra(quantale_two(), z2))));
    out.push_back(
        central_to_acted(monoid_to_central(free_monoid_algebra(c3, z2))));
    return out;
  }();
  return entries;
}

}  // namespace qlab
