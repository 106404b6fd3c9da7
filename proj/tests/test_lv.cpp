#include <doctest.h>

#include <algorithm>

#include "qlab/lv.hpp"
#include "qlab/vcat.hpp"

using namespace qlab;

namespace {

bool has_law(const LawReport& rep, const std::string& law) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const Violation& v) { return v.law == law; });
}

bool has_note(const LawReport& rep, const std::string& needle) {
  return std::any_of(rep.notes.begin(), rep.notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

// hom(list, y) = [fold of the base tensor over the list, y]
TruncatedLVCategory base_instance(QuantalePtr v, int max_len) {
  MonoidalVCat m(std::make_shared<const VCategory>(self_enriched(v)),
                 v->tensor_table(), v->unit());
  return representable_lv(m, max_len);
}

// hom(list, y) = unit when the list is the singleton (y), bottom otherwise
TruncatedLVCategory discrete_instance(QuantalePtr v, int carrier, int max_len) {
  ListIndex li(carrier, max_len);
  std::vector<Elem> hom(std::size_t(li.count()) * carrier, v->bottom());
  for (Elem y = 0; y < carrier; ++y) {
    const Elem single[1] = {y};
    hom[std::size_t(li.rank(single)) * carrier + y] = v->unit();
  }
  return TruncatedLVCategory(std::move(v), carrier, max_len, std::move(hom));
}

}  // namespace

TEST_CASE("list indexing orders by length then lexicographically") {
  ListIndex li(2, 3);
  CHECK(li.carrier() == 2);
  CHECK(li.max_len() == 3);
  CHECK(li.count() == 15);

  const std::vector<std::vector<Elem>> expected = {
      {},        {0},       {1},       {0, 0},    {0, 1},
      {1, 0},    {1, 1},    {0, 0, 0}, {0, 0, 1}, {0, 1, 0},
      {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  for (std::int64_t r = 0; r < li.count(); ++r) {
    CHECK(li.unrank(r) == expected[std::size_t(r)]);
    CHECK(li.rank(expected[std::size_t(r)]) == r);
    CHECK(li.length_of(r) == int(expected[std::size_t(r)].size()));
  }

  ListIndex one(1, 4);
  CHECK(one.count() == 5);
  ListIndex empty(0, 2);
  CHECK(empty.count() == 1);
  CHECK(empty.unrank(0).empty());

  CHECK_THROWS_AS(ListIndex(-1, 2), input_error);
  CHECK_THROWS_AS(ListIndex(2, -1), input_error);
  CHECK_THROWS_AS(ListIndex(1000, 10), resource_error);
  CHECK_THROWS_AS(li.rank(std::vector<Elem>{0, 1, 0, 1}), input_error);
  CHECK_THROWS_AS(li.rank(std::vector<Elem>{2}), input_error);
  CHECK_THROWS_AS(li.unrank(-1), input_error);
  CHECK_THROWS_AS(li.unrank(15), input_error);
}

TEST_CASE("list flattening satisfies the monad laws") {
  const std::vector<std::vector<Elem>> parts = {{0}, {}, {1, 2}};
  CHECK(list_concat(parts) == std::vector<Elem>{0, 1, 2});
  CHECK(list_concat(std::vector<std::vector<Elem>>{{}}).empty());

  CHECK(check_list_monad(2, 3).ok());
  CHECK(check_list_monad(3, 2).ok());
  CHECK(check_list_monad(0, 2).ok());
}

TEST_CASE("pointwise matrix extension is functorial") {
  QuantalePtr two = quantale_two();
  VMatrix id2 = VMatrix::identity(two, 2);

  const std::vector<Elem> xs = {0, 1}, ys = {0, 1}, flip = {1, 0};
  CHECK(lv_extension(id2, xs, ys) == two->unit());
  CHECK(lv_extension(id2, xs, flip) == two->bottom());
  CHECK(lv_extension(id2, std::vector<Elem>{}, std::vector<Elem>{}) == two->unit());
  CHECK(lv_extension(id2, std::vector<Elem>{0}, ys) == two->bottom());
  CHECK_THROWS_AS(lv_extension(id2, std::vector<Elem>{2}, std::vector<Elem>{0}),
                  input_error);

  // extension commutes with composition: joins over middle tuples match
  QuantalePtr c3 = quantale_chain_min(3);
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Elem> re(4), se(4);
    for (Elem& e : re) e = Elem(rng.below(3));
    for (Elem& e : se) e = Elem(rng.below(3));
    VMatrix r(c3, 2, 2, re), s(c3, 2, 2, se);
    VMatrix rs = compose(r, s);
    ListIndex li(2, 2);
    for (std::int64_t a = 0; a < li.count(); ++a)
      for (std::int64_t b = 0; b < li.count(); ++b) {
        std::vector<Elem> from = li.unrank(a), to = li.unrank(b);
        if (from.size() != to.size()) continue;
        Elem direct = lv_extension(rs, from, to);
        Elem joined = c3->bottom();
        // all middle tuples of the shared length
        std::vector<Elem> mid(from.size(), 0);
        for (;;) {
          joined = c3->join(joined, c3->tensor(lv_extension(r, from, mid),
                                               lv_extension(s, mid, to)));
          int i = int(mid.size()) - 1;
          while (i >= 0 && ++mid[std::size_t(i)] == 2) {
            mid[std::size_t(i)] = 0;
            --i;
          }
          if (i < 0) break;
        }
        CHECK(direct == joined);
      }
  }
}

TEST_CASE("truncated categories satisfy unit and composition laws") {
  QuantalePtr two = quantale_two();
  QuantalePtr c3 = quantale_chain_min(3);

  TruncatedLVCategory disc = discrete_instance(two, 2, 2);
  LawReport dr = check_lv_category(disc, 2);
  CHECK(dr.ok());
  CHECK(has_note(dr, "max_len=2"));

  TruncatedLVCategory inst = base_instance(c3, 2);
  CHECK(inst.representable);
  LawReport ir = check_lv_category(inst, 3);
  CHECK(ir.ok());
  CHECK(has_note(ir, "by construction"));
  CHECK(has_note(ir, "skipped"));  // block count 3 exceeds max_len 2

  // hom((x1,x2), y) = [min(x1,x2), y] in the chain instance
  const Elem pair[2] = {1, 2};
  CHECK(inst.at(pair, 0) == 0);
  CHECK(inst.at(pair, 1) == 2);

  // corrupting one hom cell breaks composition
  std::vector<Elem> bad = inst.hom;
  const Elem twotwo[2] = {2, 2};
  bad[std::size_t(inst.lists.rank(twotwo)) * 3 + 2] = 0;
  TruncatedLVCategory broken(c3, 3, 2, std::move(bad));
  LawReport br = check_lv_category(broken, 2);
  CHECK_FALSE(br.ok());
  CHECK(has_law(br, "lv.compose"));

  CHECK_THROWS_AS(check_lv_category(disc, 0), input_error);
  CHECK_THROWS_AS(TruncatedLVCategory(two, 2, 2, std::vector<Elem>{0, 1}),
                  input_error);
  CHECK_THROWS_AS(TruncatedLVCategory(two, 2, 2, std::vector<Elem>(14, 3)),
                  input_error);
}

TEST_CASE("monoidal structures induce representable instances") {
  QuantalePtr two = quantale_two();

  // one-object monoid: every hom cell is the unit
  MonoidalVCat point(std::make_shared<const VCategory>(discrete_vcategory(two, 1)),
                     std::vector<Elem>{0}, 0);
  TruncatedLVCategory pt = representable_lv(point, 3);
  CHECK(pt.lists.count() == 4);
  CHECK(std::all_of(pt.hom.begin(), pt.hom.end(),
                    [&](Elem e) { return e == two->unit(); }));
  CHECK(check_lv_category(pt, 3).ok());

  // join is monotone, so it enriches the self-instance
  auto self2 = std::make_shared<const VCategory>(self_enriched(two));
  LawReport joinrep = MonoidalVCat::check(*self2, {0, 1, 1, 1}, 0);
  CHECK(joinrep.ok());

  // exclusive-or is not monotone and fails the functor law
  LawReport xorrep = MonoidalVCat::check(*self2, {0, 1, 1, 0}, 0);
  CHECK_FALSE(xorrep.ok());
  CHECK(has_law(xorrep, "monvc.functor"));
  CHECK_THROWS_AS(MonoidalVCat(self2, {0, 1, 1, 0}, 0), input_error);

  LawReport unitrep = MonoidalVCat::check(*self2, {1, 1, 1, 1}, 0);
  CHECK(has_law(unitrep, "monvc.unit"));
  LawReport shaperep = MonoidalVCat::check(*self2, {0, 1}, 0);
  CHECK(has_law(shaperep, "monvc.table"));
}

TEST_CASE("functors between truncated categories grow homs") {
  QuantalePtr two = quantale_two();
  QuantalePtr l3 = quantale_lukasiewicz(3);

  TruncatedLVCategory inst = base_instance(two, 2);
  LawReport idrep = check_lv_functor(inst, inst, {0, 1});
  CHECK(idrep.ok());
  CHECK(has_note(idrep, "fully faithful"));

  // collapsing everything to bottom shrinks the empty-list hom
  TruncatedLVCategory luk = base_instance(l3, 2);
  LawReport crep = check_lv_functor(luk, luk, {0, 0, 0});
  CHECK_FALSE(crep.ok());
  CHECK(has_law(crep, "lvf.grow"));

  // the unit object embeds the point instance fully faithfully
  MonoidalVCat point(std::make_shared<const VCategory>(discrete_vcategory(two, 1)),
                     std::vector<Elem>{0}, 0);
  TruncatedLVCategory pt = representable_lv(point, 2);
  LawReport emb = check_lv_functor(pt, inst, {1});
  CHECK(emb.ok());

  CHECK_THROWS_AS(check_lv_functor(inst, luk, {0, 1}), input_error);
  CHECK_THROWS_AS(check_lv_functor(inst, inst, {0}), input_error);
  CHECK_THROWS_AS(check_lv_functor(inst, inst, {0, 2}), input_error);
  CHECK_THROWS_AS(check_lv_functor(inst, base_instance(two, 3), {0, 1}),
                  input_error);
}

TEST_CASE("presheaves respect truncated composition") {
  QuantalePtr two = quantale_two();
  auto inst = std::make_shared<const TruncatedLVCategory>(base_instance(two, 2));

  LVPresheaf y0 = lv_yoneda(inst, 0);
  CHECK(y0.values == std::vector<Elem>{0, 1, 0, 1, 1, 1, 0});
  LVPresheaf y1 = lv_yoneda(inst, 1);
  CHECK(std::all_of(y1.values.begin(), y1.values.end(),
                    [](Elem e) { return e == 1; }));
  CHECK(check_lv_presheaf(y0, 2).ok());
  CHECK(check_lv_presheaf(y1, 2).ok());

  // raising one value above its compositional bound is caught
  std::vector<Elem> bad = y0.values;
  const Elem pair[2] = {0, 1};
  bad[std::size_t(inst->lists.rank(pair))] = 0;
  LVPresheaf broken(inst, std::move(bad));
  LawReport br = check_lv_presheaf(broken, 2);
  CHECK_FALSE(br.ok());
  CHECK(has_law(br, "lvp.compat"));

  CHECK_THROWS_AS(LVPresheaf(inst, std::vector<Elem>{0, 1}), input_error);
  CHECK_THROWS_AS(LVPresheaf(inst, std::vector<Elem>(7, 9)), input_error);
  CHECK_THROWS_AS(lv_yoneda(inst, 5), input_error);
  CHECK_THROWS_AS(check_lv_presheaf(y0, 0), input_error);
}

TEST_CASE("distributor homs interpolate presheaf values") {
  QuantalePtr two = quantale_two();
  auto inst = std::make_shared<const TruncatedLVCategory>(base_instance(two, 2));
  LVPresheaf y0 = lv_yoneda(inst, 0);
  LVPresheaf y1 = lv_yoneda(inst, 1);

  DlValue single = dl_hom(std::vector<LVPresheaf>{y1}, y0);
  CHECK(single.value == 0);
  CHECK(single.skipped == 0);

  DlValue pair = dl_hom(std::vector<LVPresheaf>{y1, y1}, y0);
  CHECK(pair.value == 0);
  CHECK(pair.skipped == 32);  // 49 index pairs, 17 stay within length 2

  DlValue empty = dl_hom(std::span<const LVPresheaf>{}, y0);
  CHECK(empty.value == y0.at(0));
  CHECK(empty.skipped == 0);

  auto other = std::make_shared<const TruncatedLVCategory>(
      base_instance(quantale_chain_min(3), 2));
  LVPresheaf foreign = lv_yoneda(other, 0);
  CHECK_THROWS_AS(dl_hom(std::vector<LVPresheaf>{foreign}, y0), input_error);
}

TEST_CASE("yoneda values are recovered from distributor homs") {
  QuantalePtr two = quantale_two();
  QuantalePtr c3 = quantale_chain_min(3);
  QuantalePtr l3 = quantale_lukasiewicz(3);

  auto disc = std::make_shared<const TruncatedLVCategory>(
      discrete_instance(two, 2, 2));
  CHECK(lv_yoneda_check(disc).ok());

  auto small = std::make_shared<const TruncatedLVCategory>(base_instance(two, 3));
  CHECK(lv_yoneda_check(small).ok());

  auto chain = std::make_shared<const TruncatedLVCategory>(base_instance(c3, 2));
  LawReport cr = lv_yoneda_check(chain);
  CHECK(cr.ok());
  CHECK(has_note(cr, "skipped"));

  auto luk = std::make_shared<const TruncatedLVCategory>(base_instance(l3, 2));
  CHECK(lv_yoneda_check(luk).ok());
}

TEST_CASE("powerset multiplications agree on truncated lists") {
  QuantalePtr two = quantale_two();
  QuantalePtr c3 = quantale_chain_min(3);

  LawReport tiny = compare_pl_pvl(two, 1, 2, 10, 0);
  CHECK(tiny.ok());
  CHECK(has_note(tiny, "exhaustively"));
  CHECK(has_note(tiny, "truncated"));

  LawReport sampled = compare_pl_pvl(two, 2, 3, 200, 42);
  CHECK(sampled.ok());
  CHECK(has_note(sampled, "seeded"));

  LawReport chain = compare_pl_pvl(c3, 2, 3, 200, 7);
  CHECK(chain.ok());

  CHECK_THROWS_AS(compare_pl_pvl(two, 3, 2, 10, 0), resource_error);
  CHECK_THROWS_AS(compare_pl_pvl(two, 2, 4, 10, 0), resource_error);
  CHECK_THROWS_AS(compare_pl_pvl(quantale_lukasiewicz(4), 2, 2, 10, 0),
                  resource_error);
  CHECK_THROWS_AS(compare_pl_pvl(two, 0, 2, 10, 0), input_error);
  CHECK_THROWS_AS(compare_pl_pvl(two, 2, 0, 10, 0), input_error);
  CHECK_THROWS_AS(compare_pl_pvl(two, 2, 2, 0, 0), input_error);
  QuantalePtr endo = quantale_endo(quantale_chain_min(3)->lattice(), "endo");
  CHECK_THROWS_AS(compare_pl_pvl(endo, 2, 2, 10, 0), input_error);
}

TEST_CASE("acted quantales induce certified representable instances") {
  QuantalePtr two = quantale_two();

  // the self-action reproduces the base instance
  ActedQuantale self(two, two, two->tensor_table());
  InjStation st = injective_station(self, 2);
  CHECK(st.certificate.ok());
  CHECK(st.category.representable);
  CHECK(st.category.hom == base_instance(two, 2).hom);

  // a two-action classifies hom by order: hom(list, y) = [fold <= y]
  const std::vector<ActedQuantale>& cat = acted_catalog();
  auto entry = std::find_if(cat.begin(), cat.end(), [&](const ActedQuantale& a) {
    return a.base->size() == 2 && a.target->name() == "bool_square";
  });
  REQUIRE(entry != cat.end());
  InjStation sq = injective_station(*entry, 2);
  CHECK(sq.certificate.ok());
  const Quantale& q = *entry->target;
  for (Elem x1 = 0; x1 < q.size(); ++x1)
    for (Elem x2 = 0; x2 < q.size(); ++x2)
      for (Elem y = 0; y < q.size(); ++y) {
        const Elem pair[2] = {x1, x2};
        Elem want = q.leq(q.tensor(x1, x2), y) ? 1 : 0;
        CHECK(sq.category.at(pair, y) == want);
      }

  // a chain base grades the same homs by how much scaling stays below
  auto graded = std::find_if(cat.begin(), cat.end(), [&](const ActedQuantale& a) {
    return a.base->size() == 3 && a.base->name() == "chain_min(3)" &&
           a.target->name() == "bool_square";
  });
  REQUIRE(graded != cat.end());
  InjStation gr = injective_station(*graded, 2);
  CHECK(gr.certificate.ok());
  const Elem unit_single[1] = {3};
  CHECK(gr.category.at(unit_single, 1) == 1);
  CHECK(gr.category.at(unit_single, 3) == 2);
  CHECK(gr.category.at(std::vector<Elem>{}, 0) == 0);
}
