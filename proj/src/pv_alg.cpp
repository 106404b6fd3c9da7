#include "qlab/pv_alg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qlab {

namespace {

// Full associativity sweeps run unprompted below this input count.
constexpr std::int64_t kAutoSweep = 65536;

std::string show_rank_pair(Elem v, std::int64_t r) {
  return "(" + std::to_string(v) + "," + std::to_string(r) + ")";
}

void check_set_size(int set_size, const char* where) {
  if (set_size < 0) throw input_error(std::string(where) + ": negative set size");
}

}  // namespace

FiniteLattice power_lattice(const FiniteLattice& base, int exponent) {
  check_set_size(exponent, "power lattice");
  PowIndex idx(base.size(), exponent);
  if (idx.count > 1024)
    throw resource_error("power lattice carrier " + std::to_string(base.size()) + "^" +
                         std::to_string(exponent) + " exceeds the lattice ceiling");
  int n = int(idx.count);
  std::vector<std::vector<Elem>> digits(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) digits[std::size_t(r)] = idx.unrank(r);
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool le = true;
      for (int i = 0; i < exponent && le; ++i)
        le = base.leq(digits[std::size_t(a)][std::size_t(i)],
                      digits[std::size_t(b)][std::size_t(i)]);
      leq[std::size_t(a) * n + b] = le ? 1 : 0;
    }
  return FiniteLattice(n, std::move(leq));
}

std::vector<Elem> pv_apply(const Quantale& v, const std::vector<int>& f, int tgt_size,
                           std::span<const Elem> phi) {
  check_set_size(tgt_size, "direct image");
  if (phi.size() != f.size())
    throw input_error("direct image: table length " + std::to_string(phi.size()) +
                      " does not match map length " + std::to_string(f.size()));
  for (int y : f)
    if (y < 0 || y >= tgt_size)
      throw input_error("direct image: map value " + std::to_string(y) +
                        " outside target");
  std::vector<Elem> out(static_cast<std::size_t>(tgt_size), v.bottom());
  for (std::size_t x = 0; x < f.size(); ++x) {
    Elem& cell = out[std::size_t(f[x])];
    cell = v.join(cell, phi[x]);
  }
  return out;
}

std::vector<Elem> pv_unit(const Quantale& v, int set_size, Elem x) {
  check_set_size(set_size, "unit");
  if (x < 0 || x >= set_size)
    throw input_error("unit: element " + std::to_string(x) + " outside carrier");
  std::vector<Elem> out(static_cast<std::size_t>(set_size), v.bottom());
  out[std::size_t(x)] = v.unit();
  return out;
}

std::vector<Elem> pv_mult(const Quantale& v, int set_size, std::span<const Elem> big) {
  check_set_size(set_size, "multiplication");
  PowIndex idx(v.size(), set_size);
  if (std::int64_t(big.size()) != idx.count)
    throw input_error("multiplication: weight table length " +
                      std::to_string(big.size()) + ", expected " +
                      std::to_string(idx.count));
  std::vector<Elem> out(static_cast<std::size_t>(set_size), v.bottom());
  for (std::int64_t r = 0; r < idx.count; ++r) {
    Elem w = big[std::size_t(r)];
    if (w == v.bottom()) continue;  // bottom weights contribute bottom
    std::vector<Elem> phi = idx.unrank(r);
    for (int x = 0; x < set_size; ++x)
      out[std::size_t(x)] = v.join(out[std::size_t(x)], v.tensor(w, phi[std::size_t(x)]));
  }
  return out;
}

std::vector<Elem> pv_unit_ranks(const Quantale& v, int set_size) {
  check_set_size(set_size, "unit table");
  PowIndex idx(v.size(), set_size);
  if (idx.count > guard_cells())
    throw resource_error("unit table: " + std::to_string(idx.count) + " presheaves");
  std::vector<Elem> out(static_cast<std::size_t>(set_size));
  for (int x = 0; x < set_size; ++x)
    out[std::size_t(x)] = Elem(idx.rank(pv_unit(v, set_size, x)));
  return out;
}

std::vector<Elem> pv_mult_ranks(const Quantale& v, int set_size) {
  check_set_size(set_size, "multiplication table");
  PowIndex idx(v.size(), set_size);
  if (idx.count > guard_cells())
    throw resource_error("multiplication table: inner space " +
                         std::to_string(idx.count));
  PowIndex big(v.size(), int(idx.count));
  if (big.count > guard_cells())
    throw resource_error("multiplication table: " + std::to_string(big.count) +
                         " weight tables");
  std::vector<Elem> out(static_cast<std::size_t>(big.count));
  for (std::int64_t r = 0; r < big.count; ++r) {
    std::vector<Elem> weights = big.unrank(r);
    out[std::size_t(r)] = Elem(idx.rank(pv_mult(v, set_size, weights)));
  }
  return out;
}

LawReport check_pv_monad(QuantalePtr v, int set_size, bool exhaustive) {
  require_commutative_base(*v, "powerset monad");
  check_set_size(set_size, "powerset monad");
  LawReport rep;
  const Quantale& q = *v;
  PowIndex tx(q.size(), set_size);
  if (tx.count > guard_cells())
    throw resource_error("powerset monad: " + std::to_string(tx.count) + " presheaves");
  const int m = int(tx.count);

  // Functor laws: identity on every table, composition over all self-map
  // pairs when the map space is small, else a seeded sample.
  {
    std::vector<int> id(static_cast<std::size_t>(set_size));
    std::iota(id.begin(), id.end(), 0);
    for (std::int64_t r = 0; r < tx.count; ++r) {
      std::vector<Elem> phi = tx.unrank(r);
      if (pv_apply(q, id, set_size, phi) != phi)
        rep.fail("pvm.functor_id", std::to_string(r));
    }
    if (set_size > 0) {
      PowIndex maps(set_size, set_size);
      std::vector<std::vector<int>> pool;
      if (maps.count <= 32) {
        for (std::int64_t fr = 0; fr < maps.count; ++fr) {
          std::vector<Elem> t = maps.unrank(fr);
          pool.emplace_back(t.begin(), t.end());
        }
      } else {
        Rng rng(7);
        for (int i = 0; i < 8; ++i) {
          std::vector<int> t(static_cast<std::size_t>(set_size));
          for (int& c : t) c = rng.below(set_size);
          pool.push_back(std::move(t));
        }
        rep.note("functor composition sampled on 64 map pairs");
      }
      for (std::size_t fi = 0; fi < pool.size(); ++fi)
        for (std::size_t gi = 0; gi < pool.size(); ++gi) {
          std::vector<int> gf(static_cast<std::size_t>(set_size));
          for (int x = 0; x < set_size; ++x)
            gf[std::size_t(x)] = pool[gi][std::size_t(pool[fi][std::size_t(x)])];
          for (std::int64_t r = 0; r < tx.count; ++r) {
            std::vector<Elem> phi = tx.unrank(r);
            std::vector<Elem> one = pv_apply(q, gf, set_size, phi);
            std::vector<Elem> two =
                pv_apply(q, pool[gi], set_size, pv_apply(q, pool[fi], set_size, phi));
            if (one != two) {
              rep.fail("pvm.functor_comp", "(" + std::to_string(fi) + "," +
                                               std::to_string(gi) + "," +
                                               std::to_string(r) + ")");
              break;
            }
          }
        }
    }
  }

  // Unit laws.
  std::vector<Elem> unit_rank = pv_unit_ranks(q, set_size);
  for (std::int64_t r = 0; r < tx.count; ++r) {
    std::vector<Elem> phi = tx.unrank(r);
    std::vector<Elem> big(static_cast<std::size_t>(m), q.bottom());
    big[std::size_t(r)] = q.unit();
    if (pv_mult(q, set_size, big) != phi) rep.fail("pvm.unit_left", std::to_string(r));
    std::vector<Elem> img(static_cast<std::size_t>(m), q.bottom());
    for (int x = 0; x < set_size; ++x) {
      Elem& cell = img[std::size_t(unit_rank[std::size_t(x)])];
      cell = q.join(cell, phi[std::size_t(x)]);
    }
    if (pv_mult(q, set_size, img) != phi) rep.fail("pvm.unit_right", std::to_string(r));
  }

  // Associativity over the scaled-singleton family: weights concentrated on
  // one doubly-iterated table generate the rest under joins, which both
  // composites preserve by construction.
  PowIndex ttx(q.size(), m);
  if (ttx.count > guard_cells())
    throw resource_error("powerset monad associativity: " + std::to_string(ttx.count) +
                         " weight tables");
  std::vector<Elem> mult_of(static_cast<std::size_t>(ttx.count));
  for (std::int64_t pr = 0; pr < ttx.count; ++pr) {
    std::vector<Elem> weights = ttx.unrank(pr);
    mult_of[std::size_t(pr)] = Elem(tx.rank(pv_mult(q, set_size, weights)));
  }
  for (std::int64_t pr = 0; pr < ttx.count; ++pr) {
    std::vector<Elem> weights = ttx.unrank(pr);
    for (Elem w = 0; w < q.size(); ++w) {
      std::vector<Elem> scaled(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j)
        scaled[std::size_t(j)] = q.tensor(w, weights[std::size_t(j)]);
      std::vector<Elem> via_mult = pv_mult(q, set_size, scaled);
      std::vector<Elem> img(static_cast<std::size_t>(m), q.bottom());
      img[std::size_t(mult_of[std::size_t(pr)])] = w;
      std::vector<Elem> via_image = pv_mult(q, set_size, img);
      if (via_mult != via_image) rep.fail("pvm.assoc", show_rank_pair(w, pr));
    }
  }

  // Full associativity sweep when the space is small or forced.
  bool swept = false;
  std::int64_t full_count = -1;
  if (ttx.count <= 62) {
    // exponent fits; the rank space may still be astronomical
    PowIndex full(q.size(), int(ttx.count));
    full_count = full.count;
    bool feasible = full.count <= (exhaustive ? guard_cells() : kAutoSweep);
    if (exhaustive && full.count > guard_cells())
      throw resource_error("powerset monad associativity sweep: " +
                           std::to_string(full.count) + " inputs");
    if (feasible) {
      for (std::int64_t xr = 0; xr < full.count; ++xr) {
        std::vector<Elem> xi = full.unrank(xr);
        std::vector<Elem> step(static_cast<std::size_t>(m), q.bottom());
        std::vector<Elem> img(static_cast<std::size_t>(m), q.bottom());
        for (std::int64_t pr = 0; pr < ttx.count; ++pr) {
          Elem w = xi[std::size_t(pr)];
          if (w == q.bottom()) continue;
          std::vector<Elem> weights = ttx.unrank(pr);
          for (int j = 0; j < m; ++j)
            step[std::size_t(j)] =
                q.join(step[std::size_t(j)], q.tensor(w, weights[std::size_t(j)]));
          Elem& cell = img[std::size_t(mult_of[std::size_t(pr)])];
          cell = q.join(cell, w);
        }
        if (pv_mult(q, set_size, step) != pv_mult(q, set_size, img))
          rep.fail("pvm.assoc_full", std::to_string(xr));
      }
      swept = true;
    }
  } else if (exhaustive) {
    throw resource_error("powerset monad associativity sweep: rank space overflow");
  }
  if (swept)
    rep.note("associativity swept exhaustively over " + std::to_string(full_count) +
             " weight tables");
  else
    rep.note("associativity checked on the scaled-singleton family; full space " +
             (full_count >= 0 ? std::to_string(full_count) : std::string("> 2^62")) +
             " skipped");
  return rep;
}

LawReport PVAlgebra::check(const Quantale& base, int set_size,
                           const std::vector<Elem>& alpha, bool exhaustive) {
  require_commutative_base(base, "pv algebra");
  check_set_size(set_size, "pv algebra");
  LawReport rep;
  PowIndex tx(base.size(), set_size);
  if (tx.count > guard_cells())
    throw resource_error("pv algebra: " + std::to_string(tx.count) + " presheaves");
  if (std::int64_t(alpha.size()) != tx.count) {
    rep.fail("pval.table", "length " + std::to_string(alpha.size()) + ", expected " +
                               std::to_string(tx.count));
    return rep;
  }
  for (std::int64_t r = 0; r < tx.count; ++r)
    if (alpha[std::size_t(r)] < 0 || alpha[std::size_t(r)] >= set_size) {
      rep.fail("pval.table", "value at " + std::to_string(r) + " outside carrier");
      return rep;
    }

  for (int x = 0; x < set_size; ++x) {
    std::int64_t r = tx.rank(pv_unit(base, set_size, x));
    if (alpha[std::size_t(r)] != x) rep.fail("pval.unit", std::to_string(x));
  }

  // Associativity on the scaled-singleton family v-at-phi: the structure map
  // applied to a scaled table must match scaling its value. Arbitrary weight
  // tables are joins of these, and both composites preserve those joins, so
  // the family generates the full law; the complete sweep still runs when
  // small or on request.
  for (std::int64_t r = 0; r < tx.count; ++r) {
    std::vector<Elem> phi = tx.unrank(r);
    for (Elem w = 0; w < base.size(); ++w) {
      std::vector<Elem> scaled(static_cast<std::size_t>(set_size));
      for (int x = 0; x < set_size; ++x)
        scaled[std::size_t(x)] = base.tensor(w, phi[std::size_t(x)]);
      Elem lhs = alpha[std::size_t(tx.rank(scaled))];
      std::vector<Elem> at(static_cast<std::size_t>(set_size), base.bottom());
      at[std::size_t(alpha[std::size_t(r)])] = w;
      Elem rhs = alpha[std::size_t(tx.rank(at))];
      if (lhs != rhs) rep.fail("pval.assoc", show_rank_pair(w, r));
    }
  }

  bool swept = false;
  std::int64_t full_count = -1;
  if (tx.count <= 62) {
    PowIndex full(base.size(), int(tx.count));
    full_count = full.count;
    bool feasible = full.count <= (exhaustive ? guard_cells() : kAutoSweep);
    if (exhaustive && full.count > guard_cells())
      throw resource_error("pv algebra associativity sweep: " +
                           std::to_string(full.count) + " inputs");
    if (feasible) {
      for (std::int64_t xr = 0; xr < full.count; ++xr) {
        std::vector<Elem> psi = full.unrank(xr);
        Elem lhs = alpha[std::size_t(tx.rank(pv_mult(base, set_size, psi)))];
        std::vector<Elem> img(static_cast<std::size_t>(set_size), base.bottom());
        for (std::int64_t r = 0; r < tx.count; ++r) {
          Elem& cell = img[std::size_t(alpha[std::size_t(r)])];
          cell = base.join(cell, psi[std::size_t(r)]);
        }
        Elem rhs = alpha[std::size_t(tx.rank(img))];
        if (lhs != rhs) rep.fail("pval.assoc_full", std::to_string(xr));
      }
      swept = true;
    }
  } else if (exhaustive) {
    throw resource_error("pv algebra associativity sweep: rank space overflow");
  }
  if (swept)
    rep.note("associativity swept exhaustively over " + std::to_string(full_count) +
             " weight tables");
  else
    rep.note("associativity checked on the scaled-singleton family; full space " +
             (full_count >= 0 ? std::to_string(full_count) : std::string("> 2^62")) +
             " skipped");
  return rep;
}

PVAlgebra::PVAlgebra(QuantalePtr base, int set_size, std::vector<Elem> alpha,
                     bool exhaustive)
    : base_(std::move(base)), n_(set_size), alpha_(std::move(alpha)) {
  check(*base_, n_, alpha_, exhaustive).require("pv algebra");
}

Elem PVAlgebra::apply(std::span<const Elem> phi) const {
  PowIndex tx(base_->size(), n_);
  if (std::int64_t(phi.size()) != std::int64_t(n_))
    throw input_error("pv algebra: table length mismatch");
  return alpha_[std::size_t(tx.rank(phi))];
}

PVAlgebra free_algebra(QuantalePtr v, int set_size) {
  std::vector<Elem> table = pv_mult_ranks(*v, set_size);
  PowIndex tx(v->size(), set_size);
  try {
    return PVAlgebra(std::move(v), int(tx.count), std::move(table));
  } catch (const input_error& e) {
    throw internal_error(std::string("free algebra failed its own laws: ") + e.what());
  }
}

PVAlgebra algebra_from_cocomplete(const VCategory& x) {
  const Quantale& v = *x.base();
  if (!is_separated(x))
    throw input_error("algebra from category: base category is not separated");
  int n = x.size();
  PowIndex tx(v.size(), n);
  if (tx.count > guard_cells())
    throw resource_error("algebra from category: " + std::to_string(tx.count) +
                         " weight tables");
  std::vector<Elem> alpha(static_cast<std::size_t>(tx.count));
  std::vector<Elem> col(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < tx.count; ++r) {
    std::vector<Elem> psi = tx.unrank(r);
    // presheaf-ification: down-close the raw table along the hom
    std::vector<Elem> phi(static_cast<std::size_t>(n), v.bottom());
    for (int z = 0; z < n; ++z)
      for (int t = 0; t < n; ++t)
        phi[std::size_t(z)] = v.join(phi[std::size_t(z)],
                                     v.tensor(psi[std::size_t(t)], x.at(z, t)));
    for (int y = 0; y < n; ++y) {
      Elem m = v.top();
      for (int z = 0; z < n; ++z) m = v.meet(m, v.hom(phi[std::size_t(z)], x.at(z, y)));
      col[std::size_t(y)] = m;
    }
    int cand = -1;
    for (int s = 0; s < n; ++s) {
      bool hit = true;
      for (int y = 0; y < n && hit; ++y) hit = x.at(s, y) == col[std::size_t(y)];
      if (!hit) continue;
      if (cand >= 0)
        throw internal_error("algebra from category: two least upper bounds in a "
                             "separated category");
      cand = s;
    }
    if (cand < 0)
      throw input_error("algebra from category: weight table " + std::to_string(r) +
                        " has no least upper bound");
    alpha[std::size_t(r)] = cand;
  }
  try {
    return PVAlgebra(x.base(), n, std::move(alpha));
  } catch (const input_error& e) {
    throw internal_error(std::string("weighted joins of a cocomplete category failed "
                                     "the algebra laws: ") +
                         e.what());
  }
}

VCategory cocomplete_from_algebra(const PVAlgebra& a) {
  return module_to_vcat(algebra_to_module(a));
}

VModule algebra_to_module(const PVAlgebra& a) {
  const Quantale& v = *a.base();
  int n = a.size();
  PowIndex tx(v.size(), n);
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<Elem> pair(static_cast<std::size_t>(n), v.bottom());
      pair[std::size_t(x)] = v.join(pair[std::size_t(x)], v.unit());
      pair[std::size_t(y)] = v.join(pair[std::size_t(y)], v.unit());
      leq[std::size_t(x) * n + y] = a.apply_rank(tx.rank(pair)) == y ? 1 : 0;
    }
  LatticePtr carrier;
  try {
    carrier = std::make_shared<const FiniteLattice>(n, std::move(leq));
  } catch (const input_error& e) {
    throw input_error(std::string("algebra to module: binary joins do not order a "
                                  "lattice: ") +
                      e.what());
  }
  std::vector<Elem> action(std::size_t(v.size()) * n);
  for (Elem w = 0; w < v.size(); ++w)
    for (int x = 0; x < n; ++x) {
      std::vector<Elem> at(static_cast<std::size_t>(n), v.bottom());
      at[std::size_t(x)] = w;
      action[std::size_t(w) * n + x] = a.apply_rank(tx.rank(at));
    }
  try {
    return VModule(a.base(), std::move(carrier), std::move(action));
  } catch (const input_error& e) {
    throw input_error(std::string("algebra to module: scaled singletons do not act: ") +
                      e.what());
  }
}

PVAlgebra module_to_algebra(const VModule& m) {
  const Quantale& v = *m.base();
  int n = m.size();
  PowIndex tx(v.size(), n);
  if (tx.count > guard_cells())
    throw resource_error("module to algebra: " + std::to_string(tx.count) +
                         " weight tables");
  const FiniteLattice& lat = *m.carrier();
  std::vector<Elem> alpha(static_cast<std::size_t>(tx.count));
  for (std::int64_t r = 0; r < tx.count; ++r) {
    std::vector<Elem> psi = tx.unrank(r);
    Elem acc = lat.bottom();
    for (int x = 0; x < n; ++x) acc = lat.join(acc, m.act(psi[std::size_t(x)], x));
    alpha[std::size_t(r)] = acc;
  }
  try {
    return PVAlgebra(m.base(), n, std::move(alpha));
  } catch (const input_error& e) {
    throw internal_error(std::string("module joins failed the algebra laws: ") +
                         e.what());
  }
}

std::vector<Elem> box(const Quantale& v, std::span<const Elem> psi,
                      std::span<const Elem> phi) {
  std::vector<Elem> out(psi.size() * phi.size());
  for (std::size_t x = 0; x < psi.size(); ++x)
    for (std::size_t y = 0; y < phi.size(); ++y)
      out[x * phi.size() + y] = v.tensor(psi[x], phi[y]);
  return out;
}

LawReport strength_suite(QuantalePtr v, int nx, int ny) {
  const Quantale& q = *v;
  require_commutative_base(q, "strength");
  check_set_size(nx, "strength");
  check_set_size(ny, "strength");
  LawReport rep;
  PowIndex txi(q.size(), nx), tyi(q.size(), ny), txy(q.size(), nx * ny);
  if (txy.count > guard_cells())
    throw resource_error("strength: " + std::to_string(txy.count) + " product tables");
  PowIndex tty(q.size(), int(tyi.count));
  if (tty.count > guard_cells())
    throw resource_error("strength: " + std::to_string(tty.count) + " weight tables");

  // unit triangle: st(x, u(y)) = u(x,y)
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      if (box(q, pv_unit(q, nx, x), pv_unit(q, ny, y)) !=
          pv_unit(q, nx * ny, x * ny + y))
        rep.fail("strength.unit", show_pair(x, y));

  // unit object: a one-point left factor is invisible
  for (std::int64_t pr = 0; pr < tyi.count; ++pr) {
    std::vector<Elem> phi = tyi.unrank(pr);
    std::vector<Elem> point{q.unit()};
    if (box(q, point, phi) != phi) rep.fail("strength.unit_object", std::to_string(pr));
  }

  // associativity: st over a product set agrees with nested strengths; the
  // cartesian associator is the identity on the flattened index
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (std::int64_t pr = 0; pr < tyi.count; ++pr) {
        std::vector<Elem> phi = tyi.unrank(pr);
        std::vector<Elem> flat = box(q, pv_unit(q, nx * ny, x * ny + y), phi);
        std::vector<Elem> nested =
            box(q, pv_unit(q, nx, x), box(q, pv_unit(q, ny, y), phi));
        if (flat != nested)
          rep.fail("strength.pentagon", show_triple(x, y, int(pr)));
      }

  // multiplication square
  std::vector<std::vector<Elem>> st_rank(static_cast<std::size_t>(nx));
  for (int x = 0; x < nx; ++x) {
    st_rank[std::size_t(x)].resize(static_cast<std::size_t>(tyi.count));
    for (std::int64_t pr = 0; pr < tyi.count; ++pr)
      st_rank[std::size_t(x)][std::size_t(pr)] =
          Elem(txy.rank(box(q, pv_unit(q, nx, x), tyi.unrank(pr))));
  }
  for (int x = 0; x < nx; ++x)
    for (std::int64_t br = 0; br < tty.count; ++br) {
      std::vector<Elem> big = tty.unrank(br);
      std::vector<Elem> lhs = box(q, pv_unit(q, nx, x), pv_mult(q, ny, big));
      std::vector<Elem> img(static_cast<std::size_t>(txy.count), q.bottom());
      for (std::int64_t pr = 0; pr < tyi.count; ++pr) {
        Elem& cell = img[std::size_t(st_rank[std::size_t(x)][std::size_t(pr)])];
        cell = q.join(cell, big[std::size_t(pr)]);
      }
      if (lhs != pv_mult(q, nx * ny, img))
        rep.fail("strength.mult", show_pair(x, int(br)));
    }

  // costrength from the strength through the swap
  std::vector<int> swap(std::size_t(ny) * std::size_t(nx));
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) swap[std::size_t(y) * nx + x] = x * ny + y;
  for (std::int64_t sr = 0; sr < txi.count; ++sr) {
    std::vector<Elem> psi = txi.unrank(sr);
    for (int y = 0; y < ny; ++y) {
      std::vector<Elem> direct = box(q, psi, pv_unit(q, ny, y));
      std::vector<Elem> swapped =
          pv_apply(q, swap, nx * ny, box(q, pv_unit(q, ny, y), psi));
      if (direct != swapped) rep.fail("strength.costrength", show_pair(int(sr), y));
    }
  }

  // commutativity: both mixed composites, and both equal the closed form
  std::vector<std::vector<Elem>> co_rank(static_cast<std::size_t>(txi.count));
  for (std::int64_t sr = 0; sr < txi.count; ++sr) {
    co_rank[std::size_t(sr)].resize(static_cast<std::size_t>(ny));
    for (int y = 0; y < ny; ++y)
      co_rank[std::size_t(sr)][std::size_t(y)] =
          Elem(txy.rank(box(q, txi.unrank(sr), pv_unit(q, ny, y))));
  }
  for (std::int64_t sr = 0; sr < txi.count; ++sr) {
    std::vector<Elem> psi = txi.unrank(sr);
    for (std::int64_t pr = 0; pr < tyi.count; ++pr) {
      std::vector<Elem> phi = tyi.unrank(pr);
      std::vector<Elem> img_a(static_cast<std::size_t>(txy.count), q.bottom());
      for (int x = 0; x < nx; ++x) {
        Elem& cell = img_a[std::size_t(st_rank[std::size_t(x)][std::size_t(pr)])];
        cell = q.join(cell, psi[std::size_t(x)]);
      }
      std::vector<Elem> route_a = pv_mult(q, nx * ny, img_a);
      std::vector<Elem> img_b(static_cast<std::size_t>(txy.count), q.bottom());
      for (int y = 0; y < ny; ++y) {
        Elem& cell = img_b[std::size_t(co_rank[std::size_t(sr)][std::size_t(y)])];
        cell = q.join(cell, phi[std::size_t(y)]);
      }
      std::vector<Elem> route_b = pv_mult(q, nx * ny, img_b);
      if (route_a != route_b) rep.fail("strength.commute", show_pair(int(sr), int(pr)));
      if (route_a != box(q, psi, phi)) rep.fail("strength.dst", show_pair(int(sr), int(pr)));
    }
  }
  return rep;
}

bool is_algebra_morphism(const PVAlgebra& a, const PVAlgebra& b,
                         const std::vector<int>& g) {
  if (!(*a.base() == *b.base()))
    throw input_error("algebra morphism: base mismatch");
  if (std::int64_t(g.size()) != std::int64_t(a.size()))
    throw input_error("algebra morphism: map length mismatch");
  for (int z : g)
    if (z < 0 || z >= b.size())
      throw input_error("algebra morphism: value outside target carrier");
  const Quantale& v = *a.base();
  PowIndex tx(v.size(), a.size());
  PowIndex ty(v.size(), b.size());
  for (std::int64_t r = 0; r < tx.count; ++r) {
    std::vector<Elem> phi = tx.unrank(r);
    Elem lhs = g[std::size_t(a.apply_rank(r))];
    Elem rhs = b.apply_rank(ty.rank(pv_apply(v, g, b.size(), phi)));
    if (lhs != rhs) return false;
  }
  return true;
}

namespace {

void check_bimorphism_args(const PVAlgebra& a, const PVAlgebra& b, const PVAlgebra& c,
                           const std::vector<int>& f) {
  if (!(*a.base() == *b.base()) || !(*a.base() == *c.base()))
    throw input_error("bimorphism: base mismatch");
  if (std::int64_t(f.size()) != std::int64_t(a.size()) * b.size())
    throw input_error("bimorphism: table length mismatch");
  for (int z : f)
    if (z < 0 || z >= c.size())
      throw input_error("bimorphism: value outside target carrier");
}

}  // namespace

bool is_bimorphism_componentwise(const PVAlgebra& a, const PVAlgebra& b,
                                 const PVAlgebra& c, const std::vector<int>& f) {
  check_bimorphism_args(a, b, c, f);
  int nx = a.size(), ny = b.size();
  for (int x = 0; x < nx; ++x) {
    std::vector<int> slice(f.begin() + std::int64_t(x) * ny,
                           f.begin() + std::int64_t(x + 1) * ny);
    if (!is_algebra_morphism(b, c, slice)) return false;
  }
  for (int y = 0; y < ny; ++y) {
    std::vector<int> slice(static_cast<std::size_t>(nx));
    for (int x = 0; x < nx; ++x) slice[std::size_t(x)] = f[std::size_t(x) * ny + y];
    if (!is_algebra_morphism(a, c, slice)) return false;
  }
  return true;
}

bool is_bimorphism_strength(const PVAlgebra& a, const PVAlgebra& b, const PVAlgebra& c,
                            const std::vector<int>& f) {
  check_bimorphism_args(a, b, c, f);
  const Quantale& v = *a.base();
  int nx = a.size(), ny = b.size(), nz = c.size();
  PowIndex txi(v.size(), nx), tyi(v.size(), ny), tzi(v.size(), nz);
  bool ok = true;
  for (int x = 0; x < nx && ok; ++x)
    for (std::int64_t pr = 0; pr < tyi.count && ok; ++pr) {
      std::vector<Elem> phi = tyi.unrank(pr);
      Elem lhs = f[std::size_t(x) * ny + b.apply_rank(pr)];
      std::vector<Elem> image = pv_apply(v, f, nz, box(v, pv_unit(v, nx, x), phi));
      if (lhs != c.apply_rank(tzi.rank(image))) ok = false;
    }
  for (std::int64_t sr = 0; sr < txi.count && ok; ++sr) {
    std::vector<Elem> psi = txi.unrank(sr);
    for (int y = 0; y < ny && ok; ++y) {
      Elem lhs = f[std::size_t(a.apply_rank(sr)) * ny + y];
      std::vector<Elem> image = pv_apply(v, f, nz, box(v, psi, pv_unit(v, ny, y)));
      if (lhs != c.apply_rank(tzi.rank(image))) ok = false;
    }
  }
  if (ok != is_bimorphism_componentwise(a, b, c, f))
    throw internal_error("bimorphism criteria disagree");
  return ok;
}

AlgTensor tensor_alg(const PVAlgebra& a, const PVAlgebra& b) {
  VModule ma = algebra_to_module(a);
  VModule mb = algebra_to_module(b);
  ModTensor t = tensor_mod(ma, mb);
  PVAlgebra alg = module_to_algebra(*t.module);
  std::vector<Elem> pi(std::size_t(a.size()) * b.size());
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) pi[std::size_t(x) * b.size() + y] = t.pi(x, y);
  return {std::move(alg), std::move(pi), std::move(t)};
}

std::vector<int> classify_bimorphism(const AlgTensor& t, const PVAlgebra& a,
                                     const PVAlgebra& b, const PVAlgebra& c,
                                     const std::vector<int>& f) {
  if (!is_bimorphism_strength(a, b, c, f))
    throw input_error("classify: not a bimorphism");
  const Quantale& v = *a.base();
  int ny = b.size();
  int q = t.algebra.size();
  PowIndex tzi(v.size(), c.size());
  std::vector<int> fbar(static_cast<std::size_t>(q));
  for (int qc = 0; qc < q; ++qc) {
    // the class representative is a join of pure tensors; push its cells
    // through f and join in the target algebra
    Elem rep = t.mod.quot.class_max[std::size_t(qc)];
    std::uint64_t mask = t.mod.pairs->cells_of(rep);
    std::vector<Elem> xi(static_cast<std::size_t>(c.size()), v.bottom());
    for (int w = 0; w < t.mod.pairs->cell_count(); ++w)
      if (mask >> w & 1) {
        Elem& cell = xi[std::size_t(f[std::size_t(w)])];
        cell = v.join(cell, v.unit());
      }
    fbar[std::size_t(qc)] = c.apply_rank(tzi.rank(xi));
  }
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < ny; ++y)
      if (fbar[std::size_t(t.pi[std::size_t(x) * ny + y])] != f[std::size_t(x) * ny + y])
        throw internal_error("classify: factoring misses the universal bimorphism at " +
                             show_pair(x, y));
  if (!is_algebra_morphism(t.algebra, c, fbar))
    throw internal_error("classify: factoring is not an algebra morphism");
  return fbar;
}

LawReport verify_tensor_alg(const PVAlgebra& a, const PVAlgebra& b) {
  if (!(*a.base() == *b.base())) throw input_error("algebra tensor: base mismatch");
  const Quantale& v = *a.base();
  LawReport rep;
  int nx = a.size(), ny = b.size(), w = nx * ny;
  PowIndex txi(v.size(), nx), tyi(v.size(), ny), tw(v.size(), w);
  if (tw.count > guard_cells())
    throw resource_error("algebra tensor oracle: " + std::to_string(tw.count) +
                         " product tables");
  auto lat = std::make_shared<const FiniteLattice>(power_lattice(v.lattice(), w));
  auto scale = [&](Elem vv, Elem r) {
    std::vector<Elem> tab = tw.unrank(r);
    for (Elem& cell : tab) cell = v.tensor(vv, cell);
    return Elem(tw.rank(tab));
  };

  // fork on generators: the free structure of a scaled pure tensor against
  // the scaled singleton at the pair of structure values
  std::vector<std::pair<Elem, Elem>> seeds;
  for (Elem vv = 0; vv < v.size(); ++vv)
    for (std::int64_t sr = 0; sr < txi.count; ++sr) {
      std::vector<Elem> psi = txi.unrank(sr);
      for (std::int64_t pr = 0; pr < tyi.count; ++pr) {
        std::vector<Elem> phi = tyi.unrank(pr);
        Elem lhs = scale(vv, Elem(tw.rank(box(v, psi, phi))));
        std::vector<Elem> at(static_cast<std::size_t>(w), v.bottom());
        at[std::size_t(a.apply_rank(sr)) * ny + b.apply_rank(pr)] = vv;
        seeds.emplace_back(lhs, Elem(tw.rank(at)));
      }
    }

  // join closure comes from the quotient; iterate until scalar-stable
  SupQuotient quot = quotient_by_pairs(lat, seeds);
  for (;;) {
    bool added = false;
    for (Elem r = 0; r < Elem(lat->size()); ++r) {
      Elem rmax = quot.class_max[std::size_t(quot.class_of[std::size_t(r)])];
      if (rmax == r) continue;
      for (Elem vv = 0; vv < v.size(); ++vv) {
        Elem sr = scale(vv, r), sm = scale(vv, rmax);
        if (quot.class_of[std::size_t(sr)] != quot.class_of[std::size_t(sm)]) {
          seeds.emplace_back(sr, sm);
          added = true;
        }
      }
    }
    if (!added) break;
    quot = quotient_by_pairs(lat, seeds);
  }

  int q = quot.quotient->size();
  PowIndex tq(v.size(), q);
  if (tq.count > guard_cells())
    throw resource_error("algebra tensor oracle: " + std::to_string(tq.count) +
                         " quotient tables");
  std::vector<Elem> alphaq(static_cast<std::size_t>(tq.count));
  std::vector<Elem> lift(static_cast<std::size_t>(tw.count));
  for (std::int64_t xr = 0; xr < tq.count; ++xr) {
    std::vector<Elem> xi = tq.unrank(xr);
    for (std::int64_t tr = 0; tr < tw.count; ++tr)
      lift[std::size_t(tr)] = xi[std::size_t(quot.class_of[std::size_t(tr)])];
    alphaq[std::size_t(xr)] =
        Elem(quot.class_of[std::size_t(tw.rank(pv_mult(v, w, lift)))]);
  }
  PVAlgebra direct = [&] {
    try {
      return PVAlgebra(a.base(), q, alphaq);
    } catch (const input_error& e) {
      throw internal_error(std::string("fork quotient failed the algebra laws: ") +
                           e.what());
    }
  }();

  AlgTensor transported = tensor_alg(a, b);
  if (q != transported.algebra.size()) {
    rep.fail("algtensor.size", std::to_string(q) + " direct vs " +
                                   std::to_string(transported.algebra.size()) +
                                   " transported");
    return rep;
  }
  int qt = transported.algebra.size();
  PowIndex tqt(v.size(), qt);
  std::vector<int> h(static_cast<std::size_t>(q));
  for (int qc = 0; qc < q; ++qc) {
    std::vector<Elem> tab = tw.unrank(quot.class_max[std::size_t(qc)]);
    std::vector<Elem> xi(static_cast<std::size_t>(qt), v.bottom());
    for (int cell = 0; cell < w; ++cell) {
      Elem& slot = xi[std::size_t(transported.pi[std::size_t(cell)])];
      slot = v.join(slot, tab[std::size_t(cell)]);
    }
    h[std::size_t(qc)] = transported.algebra.apply_rank(tqt.rank(xi));
  }
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(qt), 0);
  for (int qc = 0; qc < q; ++qc) hit[std::size_t(h[std::size_t(qc)])] = 1;
  bool bij = std::all_of(hit.begin(), hit.end(), [](std::uint8_t u) { return u != 0; });
  if (!bij) {
    rep.fail("algtensor.bijective", "comparison map is not onto");
    return rep;
  }
  for (int cell = 0; cell < w; ++cell) {
    Elem direct_pi =
        Elem(quot.class_of[std::size_t(tw.rank(pv_unit(v, w, cell)))]);
    if (h[std::size_t(direct_pi)] != transported.pi[std::size_t(cell)])
      rep.fail("algtensor.pi", std::to_string(cell));
  }
  for (std::int64_t xr = 0; xr < tq.count; ++xr) {
    std::vector<Elem> xi = tq.unrank(xr);
    std::vector<Elem> pushed(static_cast<std::size_t>(qt), v.bottom());
    for (int qc = 0; qc < q; ++qc)
      pushed[std::size_t(h[std::size_t(qc)])] = xi[std::size_t(qc)];
    Elem lhs = h[std::size_t(direct.apply_rank(xr))];
    Elem rhs = transported.algebra.apply_rank(tqt.rank(pushed));
    if (lhs != rhs) {
      rep.fail("algtensor.alpha", std::to_string(xr));
      break;
    }
  }
  return rep;
}

}  // namespace qlab
