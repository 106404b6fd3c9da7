#include <doctest.h>
#include <json.hpp>

#include <string>

#include "qlab/driver.hpp"

using namespace qlab;

namespace {

const char* const kTwoDoc = R"(format: 1
quantale V {
  elements: [a, b]
  order: a < b
  tensor: { (a,a): a, (a,b): a, (b,a): a, (b,b): b }
  unit: b
}
)";

const char* const kBrokenTensor = R"(format: 1
quantale V {
  elements: [a, b]
  order: a < b
  tensor: { (a,a): a, (a,b): b, (b,a): a, (b,b): b }
  unit: b
}

vcategory P over V {
  objects: [x]
}
)";

RunOptions opts() {
  RunOptions o;
  o.echo = "test";
  return o;
}

const CheckLine* find_line(const RunReport& rep, const std::string& id) {
  for (const CheckLine& c : rep.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("lawful document passes with exit 0") {
  RunReport rep = cmd_check(kTwoDoc, "", opts());
  CHECK(rep.exit_code() == 0);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].id == "check.quantale.V");
  CHECK(rep.checks[0].status == "pass");
  CHECK(rep.verified() == "full");
}

TEST_CASE("a broken tensor cell fails its law and poisons dependents") {
  RunReport rep = cmd_check(kBrokenTensor, "", opts());
  CHECK(rep.exit_code() == 1);
  const CheckLine* q = find_line(rep, "check.quantale.V");
  REQUIRE(q != nullptr);
  CHECK(q->status == "fail");
  // (a,b): b breaks monotone join preservation against the unit row.
  CHECK(q->detail.find("[") != std::string::npos);
  const CheckLine* p = find_line(rep, "check.vcategory.P");
  REQUIRE(p != nullptr);
  CHECK(p->status == "fail");
  CHECK(p->detail == "depends on failed definition 'V'");
}

TEST_CASE("parse errors exit 2 and carry the location") {
  RunReport rep = cmd_check("format: 1\nquantale V {\n", "", opts());
  CHECK(rep.exit_code() == 2);
  REQUIRE(!rep.checks.empty());
  CHECK(rep.checks[0].id == "parse");
}

TEST_CASE("check can filter to a single definition") {
  std::string doc = std::string(kTwoDoc) +
                    "\nvcategory P over V {\n  objects: [x]\n}\n";
  RunReport rep = cmd_check(doc, "P", opts());
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].id == "check.vcategory.P");

  RunReport missing = cmd_check(doc, "nope", opts());
  CHECK(missing.exit_code() == 2);
}

TEST_CASE("derive requires a known name") {
  RunReport rep = cmd_derive("", "residuation", "nope", opts());
  CHECK(rep.exit_code() == 2);
  RunReport ok = cmd_derive("", "residuation", "two", opts());
  CHECK(ok.exit_code() == 0);
  REQUIRE(ok.artifacts.size() == 1);
  CHECK(ok.artifacts[0].first == "residuation two");
}

TEST_CASE("derive sup reports the witness on a non-cocomplete category") {
  const char* doc = R"(format: 1
vcategory D over two {
  objects: [x, y]
}
)";
  RunReport rep = cmd_derive(doc, "sup", "D", opts());
  CHECK(rep.exit_code() == 1);
  const CheckLine* line = find_line(rep, "derive.sup.D");
  REQUIRE(line != nullptr);
  CHECK(line->status == "fail");
  CHECK(line->detail.find("presheaf") != std::string::npos);
}

TEST_CASE("oversized presheaf spaces skip with exit 3") {
  std::string doc = "format: 1\nvcategory Big over two {\n  objects: [";
  for (int i = 0; i < 20; ++i) doc += (i ? " a" : "a") + std::to_string(i);
  doc += "]\n}\n";
  RunReport rep = cmd_derive(doc, "presheaf", "Big", opts());
  CHECK(rep.exit_code() == 3);
  const CheckLine* line = find_line(rep, "derive.presheaf.Big");
  REQUIRE(line != nullptr);
  CHECK(line->status == "resource-skipped");
  CHECK(line->detail.find("guard") != std::string::npos);
}

TEST_CASE("equiv runs its round trips when asked") {
  RunOptions o = opts();
  o.roundtrip = true;
  RunReport rep = cmd_equiv("", "mod-vcat", "two", o);
  CHECK(rep.exit_code() == 0);
  CHECK(find_line(rep, "equiv.mod-vcat.two") != nullptr);
  const CheckLine* rt = find_line(rep, "equiv.mod-vcat.two.roundtrip");
  REQUIRE(rt != nullptr);
  CHECK(rt->status == "pass");

  RunReport chain = cmd_equiv("", "chain", "chain_min(3)", o);
  CHECK(chain.exit_code() == 0);
  CHECK(find_line(chain, "equiv.chain.chain_min(3).roundtrip") != nullptr);
}

TEST_CASE("tensor validates its operand count and unitor") {
  RunReport bad = cmd_tensor("", "sup", {"two"}, opts());
  CHECK(bad.exit_code() == 2);

  RunOptions o = opts();
  o.verify_universal = true;
  RunReport rep = cmd_tensor("", "sup", {"two", "chain_min(3)"}, o);
  CHECK(rep.exit_code() == 0);
  const CheckLine* line = find_line(rep, "tensor.sup.two.chain_min(3)");
  REQUIRE(line != nullptr);
  CHECK(line->detail == "carrier size 3");
  CHECK(find_line(rep, "tensor.sup.two.chain_min(3).universal.left") != nullptr);

  RunReport mod = cmd_tensor("", "mod", {"two", "two"}, opts());
  const CheckLine* unitor = find_line(mod, "tensor.mod.two.two.unitor");
  REQUIRE(unitor != nullptr);
  CHECK(unitor->status == "pass");
}

TEST_CASE("reports are deterministic and sorted") {
  RunOptions o = opts();
  o.seed = 42;
  RunReport a = cmd_suite("core-order", o);
  RunReport b = cmd_suite("core-order", o);
  CHECK(a.text() == b.text());
  CHECK(a.json_text() == b.json_text());
  for (std::size_t i = 1; i < a.checks.size(); ++i)
    CHECK(a.checks[i - 1].id <= a.checks[i].id);
  CHECK(a.exit_code() == 0);
}

TEST_CASE("json reports parse and mirror the text") {
  RunReport rep = cmd_check(kTwoDoc, "", opts());
  nlohmann::json j = nlohmann::json::parse(rep.json_text());
  CHECK(j["command"] == "test");
  CHECK(j["exit"] == 0);
  CHECK(j["verified"] == "full");
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["checks"][0]["id"] == "check.quantale.V");
}

TEST_CASE("unknown suite scope is an input error") {
  RunReport rep = cmd_suite("nonsense", opts());
  CHECK(rep.exit_code() == 2);
}

TEST_CASE("lv dispatches on the definition kind") {
  const char* doc = R"(format: 1
lvcategory J over two {
  objects: [p]
  max_len: 2
  representable: true
  hom: {
    ( -> p): 1
    (p p -> p): 1
  }
}
)";
  RunReport rep = cmd_lv(doc, "J", opts());
  CHECK(rep.exit_code() == 0);
  const CheckLine* y = find_line(rep, "lv.yoneda.J");
  REQUIRE(y != nullptr);
  CHECK(y->status == "verified-to-truncation");

  RunReport q = cmd_lv("", "two", opts());
  CHECK(q.exit_code() == 0);
  CHECK(find_line(q, "lv.station.two") != nullptr);
  CHECK(find_line(q, "lv.compare.two") != nullptr);
}
