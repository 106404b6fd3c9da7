#include <doctest.h>

#include <algorithm>

#include "qlab/vcat.hpp"

using namespace qlab;

namespace {

bool has_law(const LawReport& rep, const std::string& law) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const Violation& v) { return v.law == law; });
}

VCatPtr share(VCategory c) { return std::make_shared<VCategory>(std::move(c)); }

// n-chain as a category over two: hom(x,y) = 1 iff x <= y.
VCatPtr chain_cat(int n) {
  QuantalePtr two = quantale_two();
  std::vector<Elem> cells(std::size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) cells[std::size_t(a) * n + b] = 1;
  return share(VCategory(VMatrix(two, n, n, std::move(cells))));
}

// Chain 0 < 1 < 2 whose unit sits strictly below the top:
// 1 is neutral, 2 * 2 = 2, 2 * 1 = 2, 0 annihilates.
QuantalePtr three_flat() {
  std::vector<std::uint8_t> leq(9, 0);
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) leq[std::size_t(a) * 3 + b] = 1;
  std::vector<Elem> t = {0, 0, 0, 0, 1, 2, 0, 2, 2};
  return std::make_shared<Quantale>(FiniteLattice(3, std::move(leq)), std::move(t), 1,
                                    "three_flat");
}

VCatPtr one_object(QuantalePtr base, Elem self_hom) {
  return share(VCategory(VMatrix(std::move(base), 1, 1, std::vector<Elem>{self_hom})));
}

// Random category: saturate a seeded matrix with the identity and composites.
VCategory random_category(QuantalePtr base, int n, Rng& rng) {
  VMatrix m = VMatrix::identity(base, n);
  std::vector<Elem> cells = m.entries();
  for (Elem& c : cells)
    c = base->join(c, Elem(rng.below(std::uint64_t(base->size()))));
  VMatrix cur(base, n, n, std::move(cells));
  for (;;) {
    VMatrix next = cur.join_with(compose(cur, cur));
    if (next == cur) break;
    cur = next;
  }
  return VCategory(cur);
}

}  // namespace

TEST_CASE("category checker: valid homs pass, broken diagonal and composition fail") {
  QuantalePtr c3 = quantale_chain_min(3);
  CHECK(VCategory::check(VMatrix(c3, 2, 2, {2, 1, 0, 2})).ok());

  LawReport unit = VCategory::check(VMatrix(c3, 2, 2, {1, 1, 0, 2}));
  REQUIRE_FALSE(unit.ok());
  CHECK(unit.violations.front().law == "vcat.unit");
  CHECK(unit.violations.front().witness == "0");

  // 0 -> 1 -> 2 related but 0 -> 2 missing: composition fails at (0,1,2).
  QuantalePtr two = quantale_two();
  LawReport comp =
      VCategory::check(VMatrix(two, 3, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1}));
  REQUIRE_FALSE(comp.ok());
  CHECK(has_law(comp, "vcat.comp"));
  CHECK(comp.violations.front().witness == "(0,1,2)");

  CHECK_THROWS_AS(VCategory(VMatrix(two, 2, 2, {1, 0, 0, 0})), input_error);
}

TEST_CASE("underlying order and separatedness") {
  QuantalePtr two = quantale_two();
  // Two objects isomorphic but not equal: a valid category, not separated.
  VCategory cycle(VMatrix(two, 2, 2, {1, 1, 1, 1}));
  CHECK(cycle.order_leq(0, 1));
  CHECK(cycle.order_leq(1, 0));
  CHECK_FALSE(is_separated(cycle));

  CHECK(is_separated(*chain_cat(3)));
  CHECK(is_separated(discrete_vcategory(two, 4)));
  for (QuantalePtr v : {quantale_chain_min(4), quantale_lukasiewicz(3),
                        quantale_bool_square()}) {
    VCategory sv = self_enriched(v);
    CHECK(is_separated(sv));
    for (Elem a = 0; a < v->size(); ++a)
      for (Elem b = 0; b < v->size(); ++b) CHECK(sv.order_leq(a, b) == v->leq(a, b));
  }
}

TEST_CASE("self-enrichment uses the internal hom; luk3 has a non-crisp cell") {
  QuantalePtr luk = quantale_lukasiewicz(3);
  VCategory sv = self_enriched(luk);
  CHECK(sv.at(2, 1) == 1);
  CHECK(sv.at(1, 2) == 2);
  CHECK(sv.at(2, 0) == 0);
}

TEST_CASE("opposite and tensor of categories") {
  QuantalePtr c3 = quantale_chain_min(3);
  VCategory x(VMatrix(c3, 2, 2, {2, 1, 0, 2}));
  VCategory op = opposite(x);
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) CHECK(op.at(a, b) == x.at(b, a));
  CHECK(opposite(op) == x);

  VCategory t = tensor_cat(x, x);
  CHECK(t.size() == 4);
  // hom((0,0),(1,1)) = x(0,1) * x(0,1) = min(1,1)
  CHECK(t.at(0, 3) == 1);
  CHECK(t.at(0, 0) == 2);
  CHECK(t.at(3, 0) == 0);
}

TEST_CASE("functor checker; constant maps can fail over a non-integral base") {
  QuantalePtr two = quantale_two();
  VCatPtr c2 = chain_cat(2);
  VCatPtr c3 = chain_cat(3);
  CHECK(VFunctor::check(*c2, *c3, {0, 2}).ok());
  LawReport bad = VFunctor::check(*c2, *c3, {2, 0});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations.front().law == "vfun.hom");
  CHECK(bad.violations.front().witness == "(0,1)");
  CHECK_FALSE(VFunctor::check(*c2, *c3, {0, 3}).ok());

  QuantalePtr tf = three_flat();
  CHECK(tf->unit() == 1);
  CHECK(tf->top() == 2);
  VCatPtr tight = one_object(tf, 2);
  VCatPtr loose = one_object(tf, 1);
  // The only map into the unit-self-hom object is not a functor: 2 <= 1 fails.
  CHECK_FALSE(VFunctor::check(*tight, *loose, {0}).ok());
  CHECK(VFunctor::check(*loose, *tight, {0}).ok());
}

TEST_CASE("full faithfulness distinguishes inclusions from collapses") {
  QuantalePtr two = quantale_two();
  VCatPtr c2 = chain_cat(2);
  VCatPtr c3 = chain_cat(3);
  CHECK(is_fully_faithful(VFunctor(c2, c3, {0, 2})));
  CHECK_FALSE(is_fully_faithful(VFunctor(c2, c2, {1, 1})));
  VCatPtr d2 = share(discrete_vcategory(two, 2));
  CHECK_FALSE(is_fully_faithful(VFunctor(d2, *&c2, {0, 1})));
}

TEST_CASE("functor category of the 2-chain in itself has the three monotone maps") {
  VCatPtr c2 = chain_cat(2);
  FunctorCategory fc = hom_category(c2, c2);
  REQUIRE(fc.carrier.size() == 3);
  CHECK(fc.carrier[0] == std::vector<int>{0, 0});
  CHECK(fc.carrier[1] == std::vector<int>{0, 1});
  CHECK(fc.carrier[2] == std::vector<int>{1, 1});
  CHECK(fc.index_of({0, 1}) == 1);
  CHECK(fc.index_of({1, 0}) == -1);
  CHECK(VCategory::check(fc.cat->hom()).ok());
  // hom in the functor category agrees with the pairwise formula
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      VFunctor fi(c2, c2, fc.carrier[std::size_t(i)]);
      VFunctor fj(c2, c2, fc.carrier[std::size_t(j)]);
      CHECK(functor_hom(fi, fj) == fc.cat->at(i, j));
    }
  // pointwise order: constant 0 <= identity <= constant 1
  CHECK(fc.cat->at(0, 1) == 1);
  CHECK(fc.cat->at(1, 2) == 1);
  CHECK(fc.cat->at(2, 0) == 0);
}

TEST_CASE("presheaves on the 2-chain over two are the three down-sets") {
  PresheafCategory dx = presheaf_category(chain_cat(2));
  REQUIRE(dx.carrier.size() == 3);
  CHECK(dx.carrier[0] == std::vector<Elem>{0, 0});
  CHECK(dx.carrier[1] == std::vector<Elem>{1, 0});
  CHECK(dx.carrier[2] == std::vector<Elem>{1, 1});
  // D(X) of a 2-chain is a 3-chain
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(dx.cat->at(i, j) == (i <= j ? 1 : 0));
  CHECK(dx.yoneda == std::vector<int>{1, 2});
  CHECK(yoneda_check(dx).ok());
}

TEST_CASE("presheaves on one object are scalars below the self-hom residual") {
  QuantalePtr c3 = quantale_chain_min(3);
  PresheafCategory dx = presheaf_category(one_object(c3, 2));
  CHECK(dx.carrier.size() == 3);
  // D(X) hom is the internal hom of scalars
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) CHECK(dx.cat->at(a, b) == c3->hom(a, b));
}

TEST_CASE("yoneda embedding: hom out of a representable evaluates the presheaf") {
  for (QuantalePtr v : {quantale_two(), quantale_chain_min(3), quantale_lukasiewicz(3),
                        quantale_bool_square()}) {
    PresheafCategory dv = presheaf_category(share(self_enriched(v)));
    CHECK(yoneda_check(dv).ok());
  }
  // seeded random categories, bases small enough to enumerate presheaves
  Rng rng(2026);
  for (int trial = 0; trial < 50; ++trial) {
    QuantalePtr v = (trial % 2) ? quantale_chain_min(3) : quantale_lukasiewicz(4);
    int n = 2 + int(rng.below(2));
    VCatPtr x = share(random_category(v, n, rng));
    PresheafCategory dx = presheaf_category(x);
    CHECK(yoneda_check(dx).ok());
    CHECK(is_separated(*dx.cat));
  }
}

TEST_CASE("distributor checker and the graph adjunction") {
  VCatPtr c2 = chain_cat(2);
  VCatPtr c3 = chain_cat(3);
  VFunctor f(c2, c3, {0, 2});

  Distributor fwd = graph_forward(f);
  Distributor bwd = graph_backward(f);
  CHECK(fwd.mat.at(0, 1) == 1);  // b(f0, 1) = b(0, 1)
  CHECK(bwd.mat.at(1, 1) == 1);  // b(1, f1) = b(1, 2)

  // unit: a(x,x') <= (fwd ; bwd)(x,x') and the composite is exactly b(fx, fx')
  VMatrix unit = compose(fwd.mat, bwd.mat);
  CHECK(c2->hom().leq(unit));
  for (Elem x = 0; x < 2; ++x)
    for (Elem y = 0; y < 2; ++y) CHECK(unit.at(x, y) == c3->at(f(x), f(y)));
  // counit: (bwd ; fwd) <= b
  CHECK(compose(bwd.mat, fwd.mat).leq(c3->hom()));
  // composites are again distributors
  CHECK(Distributor::check(*c2, *c2, unit).ok());

  // a matrix that ignores the source action is rejected
  QuantalePtr two = quantale_two();
  LawReport bad = Distributor::check(*c2, *c2, VMatrix(two, 2, 2, {0, 0, 1, 0}));
  REQUIRE_FALSE(bad.ok());
  CHECK(has_law(bad, "dist.src_action"));
}

TEST_CASE("distributors into a point correspond to presheaves and to functors") {
  QuantalePtr two = quantale_two();
  VCatPtr c2 = chain_cat(2);
  VCatPtr pt = one_object(two, 1);
  PresheafCategory dx = presheaf_category(c2);

  // mate of the hom distributor is the yoneda assignment itself
  Distributor homd(c2, c2, c2->hom());
  CHECK(mate(homd, dx).map == dx.yoneda);

  int valid = 0;
  for (int m = 0; m < 4; ++m) {
    VMatrix j(two, 2, 1, {m & 1, (m >> 1) & 1});
    if (!Distributor::check(*c2, *pt, j).ok()) continue;
    ++valid;
    Distributor d(c2, pt, j);
    VFunctor g = mate(d, dx);
    CHECK(unmate(g, dx).mat == j);
  }
  CHECK(valid == 3);
  FunctorCategory fc = hom_category(pt, dx.cat);
  CHECK(fc.carrier.size() == 3);
  for (const auto& table : fc.carrier) {
    VFunctor g(pt, dx.cat, table);
    CHECK(mate(unmate(g, dx), dx).map == table);
  }
}

TEST_CASE("weighted sups in a self-enriched quantale are tensored joins") {
  for (QuantalePtr v : {quantale_two(), quantale_chain_min(3), quantale_lukasiewicz(3)}) {
    VCatPtr sv = share(self_enriched(v));
    PresheafCategory dx = presheaf_category(sv);
    SupResult s = find_sup(dx);
    REQUIRE(s.cocomplete);
    for (std::size_t p = 0; p < dx.carrier.size(); ++p) {
      Elem expect = v->bottom();
      for (Elem w = 0; w < v->size(); ++w)
        expect = v->join(expect, v->tensor(dx.carrier[p][std::size_t(w)], w));
      CHECK(s.sup[p] == expect);
    }
  }
}

TEST_CASE("a discrete pair has no sups, starting with the empty weight") {
  QuantalePtr c3 = quantale_chain_min(3);
  PresheafCategory dx = presheaf_category(share(discrete_vcategory(c3, 2)));
  CHECK(dx.carrier.size() == 9);
  SupResult s = find_sup(dx);
  CHECK_FALSE(s.cocomplete);
  REQUIRE(s.witness.has_value());
  CHECK(*s.witness == std::vector<Elem>{0, 0});
  // representables still have sups: their own objects
  for (Elem ob = 0; ob < 2; ++ob) CHECK(s.sup[std::size_t(dx.yoneda[std::size_t(ob)])] == ob);
}

TEST_CASE("find_sup refuses a non-separated category") {
  QuantalePtr two = quantale_two();
  VCatPtr cycle = share(VCategory(VMatrix(two, 2, 2, {1, 1, 1, 1})));
  CHECK_THROWS_AS(find_sup(presheaf_category(cycle)), input_error);
}

TEST_CASE("presheaf categories are cocomplete with pointwise weighted joins") {
  auto check_formula = [](VCatPtr x) {
    PresheafCategory dx = presheaf_category(x);
    PresheafCategory dd = presheaf_category(dx.cat);
    SupResult s = find_sup(dd);
    REQUIRE(s.cocomplete);
    const Quantale& v = *x->base();
    for (std::size_t w = 0; w < dd.carrier.size(); ++w) {
      std::vector<Elem> expect(std::size_t(x->size()), v.bottom());
      for (std::size_t p = 0; p < dx.carrier.size(); ++p)
        for (Elem ob = 0; ob < x->size(); ++ob)
          expect[std::size_t(ob)] =
              v.join(expect[std::size_t(ob)],
                     v.tensor(dx.carrier[p][std::size_t(ob)], dd.carrier[w][p]));
      CHECK(dx.index_of(expect) == s.sup[w]);
    }
  };
  check_formula(chain_cat(2));
  check_formula(share(discrete_vcategory(quantale_chain_min(3), 2)));
}

TEST_CASE("cocontinuity: collapses and scalar-breaking maps fail, adjoints pass") {
  QuantalePtr two = quantale_two();
  VCatPtr c2 = chain_cat(2);
  VCatPtr pt = one_object(two, 1);
  CHECK(is_cocontinuous(VFunctor(c2, pt, {0, 0})));
  // sending everything to the top loses the empty sup
  CHECK_FALSE(is_cocontinuous(VFunctor(c2, c2, {1, 1})));

  QuantalePtr c3 = quantale_chain_min(3);
  VCatPtr sv = share(self_enriched(c3));
  CHECK(is_cocontinuous(VFunctor(sv, sv, {0, 1, 2})));
  CHECK_FALSE(is_cocontinuous(VFunctor(sv, sv, {2, 2, 2})));
  // join-preserving but not scalar-preserving: 1 = 1 . 1 maps to 2 > 1 . f(1)
  CHECK_FALSE(is_cocontinuous(VFunctor(sv, sv, {0, 2, 2})));
  // truncation at 1 respects both joins and scalars
  CHECK(is_cocontinuous(VFunctor(sv, sv, {0, 1, 1})));
}

TEST_CASE("left extension along yoneda restricts back and is cocontinuous") {
  QuantalePtr c3 = quantale_chain_min(3);
  VCatPtr d2 = share(discrete_vcategory(c3, 2));
  VCatPtr sv = share(self_enriched(c3));
  PresheafCategory dy = presheaf_category(d2);
  VFunctor yon(d2, dy.cat, dy.yoneda);
  CHECK(is_fully_faithful(yon));

  VFunctor f(d2, sv, {1, 2});
  VFunctor ext = extend_along(f, yon);
  for (Elem ob = 0; ob < 2; ++ob) CHECK(ext(yon(ob)) == f(ob));
  // on a weight phi the extension is the weighted join of the two images
  for (std::size_t p = 0; p < dy.carrier.size(); ++p) {
    Elem expect = c3->join(c3->tensor(dy.carrier[p][0], f(0)),
                           c3->tensor(dy.carrier[p][1], f(1)));
    CHECK(ext(int(p)) == expect);
  }
  CHECK(is_cocontinuous(ext));

  // a collapse is not fully faithful, so it cannot be extended along
  VCatPtr ptv = one_object(c3, 2);
  CHECK_THROWS_AS(extend_along(f, VFunctor(d2, ptv, {0, 0})), input_error);
}

TEST_CASE("functor and presheaf enumerations respect the cell guard") {
  QuantalePtr two = quantale_two();
  CHECK_THROWS_AS(hom_category(share(discrete_vcategory(two, 11)),
                               share(discrete_vcategory(two, 4))),
                  resource_error);
  QuantalePtr c5 = quantale_chain_min(5);
  CHECK_THROWS_AS(presheaf_category(share(discrete_vcategory(c5, 9))), resource_error);
}
