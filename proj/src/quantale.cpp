#include "qlab/quantale.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace qlab {

std::int64_t guard_cells() {
  static std::int64_t cached = [] {
    if (const char* env = std::getenv("QLAB_GUARD_CELLS")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end && *end == '\0' && v > 0) return std::int64_t(v);
    }
    return std::int64_t(1000000);
  }();
  return cached;
}

namespace {

constexpr int kMaxLatticeSize = 1024;

// Least upper bound of {a,b}, or -1 when none exists.
Elem least_upper_bound(int n, const std::vector<std::uint8_t>& leq, Elem a, Elem b) {
  Elem best = -1;
  for (Elem u = 0; u < n; ++u) {
    if (!leq[std::size_t(a) * n + u] || !leq[std::size_t(b) * n + u]) continue;
    if (best < 0 || leq[std::size_t(u) * n + best]) best = u;
  }
  if (best < 0) return -1;
  // best is minimal among upper bounds; confirm it is least.
  for (Elem u = 0; u < n; ++u) {
    if (leq[std::size_t(a) * n + u] && leq[std::size_t(b) * n + u] &&
        !leq[std::size_t(best) * n + u])
      return -1;
  }
  return best;
}

Elem greatest_lower_bound(int n, const std::vector<std::uint8_t>& leq, Elem a, Elem b) {
  Elem best = -1;
  for (Elem l = 0; l < n; ++l) {
    if (!leq[std::size_t(l) * n + a] || !leq[std::size_t(l) * n + b]) continue;
    if (best < 0 || leq[std::size_t(best) * n + l]) best = l;
  }
  if (best < 0) return -1;
  for (Elem l = 0; l < n; ++l) {
    if (leq[std::size_t(l) * n + a] && leq[std::size_t(l) * n + b] &&
        !leq[std::size_t(l) * n + best])
      return -1;
  }
  return best;
}

}  // namespace

LawReport FiniteLattice::check(int n, const std::vector<std::uint8_t>& leq,
                               bool exhaustive_subsets) {
  LawReport rep;
  if (n < 0 || n > kMaxLatticeSize) {
    rep.fail("lattice.size", "carrier size " + std::to_string(n) + " out of range");
    return rep;
  }
  if (leq.size() != std::size_t(n) * n) {
    rep.fail("lattice.table", "order table has wrong shape");
    return rep;
  }
  if (n == 0) {
    rep.fail("lattice.bottom", "empty carrier has no bottom");
    return rep;
  }
  auto at = [&](Elem a, Elem b) { return leq[std::size_t(a) * n + b] != 0; };
  for (Elem a = 0; a < n; ++a)
    if (!at(a, a)) rep.fail("lattice.reflexivity", std::to_string(a));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b && at(a, b) && at(b, a)) rep.fail("lattice.antisymmetry", show_pair(a, b));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!at(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (at(b, c) && !at(a, c)) rep.fail("lattice.transitivity", show_triple(a, b, c));
    }
  if (!rep.ok()) return rep;  // joins are meaningless on a broken order

  Elem bot = -1;
  for (Elem b = 0; b < n; ++b) {
    bool least = true;
    for (Elem x = 0; x < n; ++x) least = least && at(b, x);
    if (least) bot = b;
  }
  if (bot < 0) rep.fail("lattice.bottom", "no least element");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b)
      if (least_upper_bound(n, leq, a, b) < 0)
        rep.fail("lattice.join", show_pair(a, b) + " has no least upper bound");
  if (!rep.ok()) return rep;

  if (exhaustive_subsets) {
    if (n > 12)
      throw resource_error("exhaustive subset sweep limited to carriers <= 12");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Elem acc = bot;
      for (Elem x = 0; x < n; ++x)
        if (mask & (1u << x)) acc = least_upper_bound(n, leq, acc, x);
      // acc is the fold of binary joins; verify it is the least upper bound of the set.
      for (Elem u = 0; u < n; ++u) {
        bool ub = true;
        for (Elem x = 0; x < n; ++x)
          if (mask & (1u << x)) ub = ub && at(x, u);
        if (ub && !at(acc, u))
          rep.fail("lattice.join", "subset mask " + std::to_string(mask));
      }
    }
    rep.note("subset joins verified exhaustively");
  }
  return rep;
}

FiniteLattice::FiniteLattice(int size, std::vector<std::uint8_t> leq)
    : size_(size), leq_(std::move(leq)) {
  check(size_, leq_).require("finite lattice");
  join_.resize(std::size_t(size_) * size_);
  meet_.resize(std::size_t(size_) * size_);
  for (Elem a = 0; a < size_; ++a)
    for (Elem b = 0; b < size_; ++b) {
      Elem j = least_upper_bound(size_, leq_, a, b);
      Elem m = greatest_lower_bound(size_, leq_, a, b);
      if (j < 0 || m < 0) throw internal_error("validated lattice lost a bound");
      join_[std::size_t(a) * size_ + b] = j;
      meet_[std::size_t(a) * size_ + b] = m;
    }
  bottom_ = 0;
  top_ = 0;
  for (Elem x = 0; x < size_; ++x) {
    if (leq_[std::size_t(x) * size_ + bottom_]) bottom_ = x;
    if (leq_[std::size_t(top_) * size_ + x]) top_ = x;
  }
}

bool FiniteLattice::is_chain() const {
  for (Elem a = 0; a < size_; ++a)
    for (Elem b = 0; b < size_; ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

LawReport Quantale::check(const FiniteLattice& lat, const std::vector<Elem>& tensor,
                          Elem unit) {
  LawReport rep;
  const int n = lat.size();
  if (tensor.size() != std::size_t(n) * n) {
    rep.fail("quantale.table", "tensor table has wrong shape");
    return rep;
  }
  for (Elem v : tensor)
    if (v < 0 || v >= n) {
      rep.fail("quantale.table", "tensor entry out of carrier");
      return rep;
    }
  if (unit < 0 || unit >= n) {
    rep.fail("quantale.unit", "unit out of carrier");
    return rep;
  }
  auto t = [&](Elem a, Elem b) { return tensor[std::size_t(a) * n + b]; };

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (t(t(a, b), c) != t(a, t(b, c))) rep.fail("quantale.assoc", show_triple(a, b, c));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (t(a, b) != t(b, a)) rep.fail("quantale.comm", show_pair(a, b));
  for (Elem a = 0; a < n; ++a) {
    if (t(unit, a) != a) rep.fail("quantale.unit", "k*" + std::to_string(a));
    if (t(a, unit) != a) rep.fail("quantale.unit", std::to_string(a) + "*k");
  }
  // Join preservation in each argument, including the empty join.
  for (Elem a = 0; a < n; ++a) {
    if (t(a, lat.bottom()) != lat.bottom())
      rep.fail("quantale.join_pres", std::to_string(a) + "*bot");
    if (t(lat.bottom(), a) != lat.bottom())
      rep.fail("quantale.join_pres", "bot*" + std::to_string(a));
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (t(a, lat.join(b, c)) != lat.join(t(a, b), t(a, c)))
          rep.fail("quantale.join_pres", std::to_string(a) + "*join" + show_pair(b, c));
        if (t(lat.join(b, c), a) != lat.join(t(b, a), t(c, a)))
          rep.fail("quantale.join_pres", "join" + show_pair(b, c) + "*" + std::to_string(a));
      }
  }
  if (unit == lat.bottom()) rep.note("trivial quantale: unit equals bottom");
  return rep;
}

Quantale::Quantale(FiniteLattice lat, std::vector<Elem> tensor, Elem unit,
                   std::string name, std::vector<std::string> elem_names)
    : lat_(std::move(lat)),
      tensor_(std::move(tensor)),
      unit_(unit),
      name_(std::move(name)),
      elem_names_(std::move(elem_names)) {
  LawReport rep = check(lat_, tensor_, unit_);
  commutative_ = true;
  for (const Violation& v : rep.violations) {
    if (v.law == "quantale.comm")
      commutative_ = false;  // tolerated; restricts use to morphism targets
    else
      throw input_error("quantale: " + v.law + " [" + v.witness + "]");
  }
  const int n = lat_.size();
  hom_.assign(std::size_t(n) * n, lat_.bottom());
  for (Elem v = 0; v < n; ++v)
    for (Elem u = 0; u < n; ++u) {
      Elem acc = lat_.bottom();
      for (Elem w = 0; w < n; ++w)
        if (lat_.leq(tensor_[std::size_t(v) * n + w], u)) acc = lat_.join(acc, w);
      hom_[std::size_t(v) * n + u] = acc;
    }
  if (elem_names_.empty()) {
    for (Elem e = 0; e < n; ++e) elem_names_.push_back(std::to_string(e));
  }
  if (elem_names_.size() != std::size_t(n))
    throw input_error("quantale: element name list has wrong length");
}

void require_commutative_base(const Quantale& q, const char* where) {
  if (!q.commutative())
    throw input_error(std::string(where) + ": base quantale '" +
                      (q.name().empty() ? "<anonymous>" : q.name()) +
                      "' is not commutative");
}

LawReport QuantaleMorphism::check(const Quantale& src, const Quantale& tgt,
                                  const std::vector<Elem>& map) {
  LawReport rep;
  const int n = src.size();
  if (map.size() != std::size_t(n)) {
    rep.fail("qmor.table", "map has wrong length");
    return rep;
  }
  for (Elem v : map)
    if (v < 0 || v >= tgt.size()) {
      rep.fail("qmor.table", "map value out of target carrier");
      return rep;
    }
  if (map[std::size_t(src.bottom())] != tgt.bottom())
    rep.fail("qmor.bottom", std::to_string(src.bottom()));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (map[std::size_t(src.join(a, b))] != tgt.join(map[std::size_t(a)], map[std::size_t(b)]))
        rep.fail("qmor.join", show_pair(a, b));
      if (map[std::size_t(src.tensor(a, b))] !=
          tgt.tensor(map[std::size_t(a)], map[std::size_t(b)]))
        rep.fail("qmor.tensor", show_pair(a, b));
    }
  if (map[std::size_t(src.unit())] != tgt.unit()) rep.fail("qmor.unit", "k");
  return rep;
}

// --- builtins ---

namespace {

std::vector<std::uint8_t> chain_leq(int n) {
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) leq[std::size_t(a) * n + b] = 1;
  return leq;
}

}  // namespace

QuantalePtr quantale_two() {
  FiniteLattice lat(2, chain_leq(2));
  std::vector<Elem> t = {0, 0, 0, 1};  // meet
  return std::make_shared<Quantale>(std::move(lat), std::move(t), 1, "two",
                                    std::vector<std::string>{"0", "1"});
}

QuantalePtr quantale_chain_min(int n) {
  if (n < 1) throw input_error("chain_min: need at least one element");
  FiniteLattice lat(n, chain_leq(n));
  std::vector<Elem> t(std::size_t(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[std::size_t(a) * n + b] = std::min(a, b);
  return std::make_shared<Quantale>(std::move(lat), std::move(t), n - 1,
                                    "chain_min(" + std::to_string(n) + ")");
}

QuantalePtr quantale_lukasiewicz(int n) {
  if (n < 2) throw input_error("lukasiewicz: need at least two elements");
  FiniteLattice lat(n, chain_leq(n));
  std::vector<Elem> t(std::size_t(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[std::size_t(a) * n + b] = std::max(a + b - (n - 1), 0);
  return std::make_shared<Quantale>(std::move(lat), std::move(t), n - 1,
                                    "lukasiewicz(" + std::to_string(n) + ")");
}

QuantalePtr quantale_bool_square() {
  // Pairs (a,b) of booleans, componentwise order, index 2a+b.
  const int n = 4;
  std::vector<std::uint8_t> leq(16, 0);
  auto le = [](int x, int y) {
    return ((x >> 1) <= (y >> 1)) && ((x & 1) <= (y & 1));
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[std::size_t(a) * n + b] = le(a, b) ? 1 : 0;
  FiniteLattice lat(n, std::move(leq));
  std::vector<Elem> t(16);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = a & b;  // componentwise meet
  return std::make_shared<Quantale>(std::move(lat), std::move(t), 3, "bool_square",
                                    std::vector<std::string>{"00", "01", "10", "11"});
}

QuantalePtr quantale_endo(const FiniteLattice& lat, std::string name) {
  const int n = lat.size();
  PowIndex maps(n, n);
  if (maps.count > guard_cells()) throw resource_error("endo: map space exceeds guard");
  std::vector<std::vector<Elem>> carrier;
  for (std::int64_t r = 0; r < maps.count; ++r) {
    std::vector<Elem> f = maps.unrank(r);
    if (f[std::size_t(lat.bottom())] != lat.bottom()) continue;
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        ok = f[std::size_t(lat.join(a, b))] == lat.join(f[std::size_t(a)], f[std::size_t(b)]);
    if (ok) carrier.push_back(std::move(f));
  }
  const int m = int(carrier.size());
  if (m > kMaxLatticeSize) throw resource_error("endo: carrier exceeds lattice ceiling");
  std::vector<std::uint8_t> leq(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool le = true;
      for (Elem x = 0; x < n; ++x) le = le && lat.leq(carrier[i][std::size_t(x)], carrier[j][std::size_t(x)]);
      leq[std::size_t(i) * m + j] = le ? 1 : 0;
    }
  // Multiplication is composition: (f*g)(x) = f(g(x)).
  std::map<std::vector<Elem>, int> index;
  for (int i = 0; i < m; ++i) index[carrier[i]] = i;
  std::vector<Elem> t(std::size_t(m) * m);
  int unit = -1;
  for (int i = 0; i < m; ++i) {
    bool id = true;
    for (Elem x = 0; x < n; ++x) id = id && carrier[i][std::size_t(x)] == x;
    if (id) unit = i;
    for (int j = 0; j < m; ++j) {
      std::vector<Elem> comp(n);
      for (Elem x = 0; x < n; ++x) comp[std::size_t(x)] = carrier[i][std::size_t(carrier[j][std::size_t(x)])];
      auto it = index.find(comp);
      if (it == index.end()) throw internal_error("endo: composition left the carrier");
      t[std::size_t(i) * m + j] = it->second;
    }
  }
  if (unit < 0) throw internal_error("endo: identity map not found");
  std::vector<std::string> names;
  for (const auto& f : carrier) {
    std::string s = "[";
    for (Elem x = 0; x < n; ++x) s += (x ? " " : "") + std::to_string(f[std::size_t(x)]);
    names.push_back(s + "]");
  }
  return std::make_shared<Quantale>(FiniteLattice(m, std::move(leq)), std::move(t), unit,
                                    std::move(name), std::move(names));
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> cat = [] {
    std::vector<CatalogEntry> v;
    v.push_back({"two", quantale_two(), true});
    for (int n = 3; n <= 5; ++n)
      v.push_back({"chain_min(" + std::to_string(n) + ")", quantale_chain_min(n), true});
    for (int n = 3; n <= 5; ++n)
      v.push_back({"lukasiewicz(" + std::to_string(n) + ")", quantale_lukasiewicz(n), true});
    v.push_back({"bool_square", quantale_bool_square(), true});
    FiniteLattice c3(3, chain_leq(3));
    v.push_back({"endo(chain_min(3))", quantale_endo(c3, "endo(chain_min(3))"), false});
    return v;
  }();
  return cat;
}

QuantalePtr find_builtin(const std::string& name) {
  for (const CatalogEntry& e : builtin_catalog())
    if (e.name == name) return e.q;
  return nullptr;
}

}  // namespace qlab
