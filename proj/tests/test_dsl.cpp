#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlab/common.hpp"
#include "qlab/dsl.hpp"
#include "qlab/lv.hpp"
#include "qlab/quantale.hpp"

using namespace qlab;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(QLAB_CORPUS_DIR))
    if (e.path().extension() == ".qlab") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  REQUIRE(!out.empty());
  return out;
}

bool has_error(const ParseResult& r, const std::string& needle) {
  for (const Diagnostic& d : r.diagnostics)
    if (d.severity == Severity::error &&
        d.message.find(needle) != std::string::npos)
      return true;
  return false;
}

bool has_note(const ParseResult& r, const std::string& needle) {
  for (const std::string& n : r.notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

// Lengths of each line, the last possibly empty.
std::vector<int> line_lengths(const std::string& s) {
  std::vector<int> lens;
  int cur = 0;
  for (char c : s) {
    if (c == '\n') {
      lens.push_back(cur);
      cur = 0;
    } else {
      ++cur;
    }
  }
  lens.push_back(cur);
  return lens;
}

void check_spans(const std::string& text, const ParseResult& r) {
  const std::vector<int> lens = line_lengths(text);
  const int nl = int(lens.size());
  for (const Diagnostic& d : r.diagnostics) {
    REQUIRE(d.line >= 1);
    REQUIRE(d.line <= nl);
    REQUIRE(d.col >= 1);
    REQUIRE(d.col <= lens[std::size_t(d.line - 1)] + 1);
    REQUIRE(d.end_line >= d.line);
    REQUIRE(d.end_line <= nl);
    REQUIRE(d.end_col >= 1);
    REQUIRE(d.end_col <= lens[std::size_t(d.end_line - 1)] + 2);
    REQUIRE((d.end_line > d.line || d.end_col > d.col));
  }
}

}  // namespace

TEST_CASE("corpus files parse cleanly and round trip") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path.string());
    const std::string text = read_file(path);
    ParseResult first = parse_qlab(text);
    for (const Diagnostic& d : first.diagnostics) CAPTURE(d.message);
    REQUIRE(first.ok());
    REQUIRE(!first.doc.definitions.empty());

    const std::string emitted = emit_qlab(first.doc);
    ParseResult second = parse_qlab(emitted);
    REQUIRE(second.ok());
    CHECK(first.doc == second.doc);
    CHECK(emit_qlab(second.doc) == emitted);

    const auto j = nlohmann::json::parse(emit_json(first.doc));
    CHECK(j["format"] == 1);
    CHECK(j["definitions"].size() == first.doc.definitions.size());
  }
}

TEST_CASE("quantale definitions carry their declared data") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "two.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  REQUIRE(r.doc.definitions.size() == 1);
  const auto& d = std::get<QuantaleDef>(r.doc.definitions[0].body);
  CHECK(d.name == "V2");
  CHECK(d.elements == std::vector<std::string>{"lo", "hi"});
  CHECK(d.leq == std::vector<std::uint8_t>{1, 1, 0, 1});
  CHECK(d.tensor == std::vector<Elem>{0, 0, 0, 1});
  CHECK(d.unit == 1);
  CHECK(r.notes.empty());
  CHECK(r.doc.definitions[0].kind() == "quantale");
  CHECK(r.doc.find("V2") == &r.doc.definitions[0]);
  CHECK(r.doc.find("nope") == nullptr);
}

TEST_CASE("builtin tensor shorthand copies the catalog table") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "chain_sugar.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  const auto& d = std::get<QuantaleDef>(r.doc.definitions[0].body);
  CHECK(d.tensor == find_builtin("chain_min(3)")->tensor_table());
  CHECK(d.unit == 2);
  CHECK(has_note(r, "copied from builtin 'chain_min(3)'"));

  // The declared order must agree with the builtin it borrows from.
  ParseResult bad = parse_qlab(
      "format: 1\n"
      "quantale X {\n"
      "  elements: [a, b, c]\n"
      "  order: { a < b, a < c }\n"
      "  tensor: builtin chain_min(3)\n"
      "  unit: a\n"
      "}\n");
  CHECK(!bad.ok());
  CHECK(has_error(bad, "declared order differs from builtin"));
}

TEST_CASE("unspecified hom cells default with a note") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "functors.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  REQUIRE(r.doc.definitions.size() == 5);

  const auto& p = std::get<VCatDef>(r.doc.definitions[1].body);
  CHECK(p.hom == std::vector<Elem>{1, 1, 0, 1});
  CHECK(has_note(r, "vcategory P: 1 hom cells defaulted to bottom, "
                    "2 diagonal cells defaulted to unit"));

  const auto& t = std::get<VCatDef>(r.doc.definitions[2].body);
  CHECK(t.hom == std::vector<Elem>{1});

  const auto& f = std::get<VFunctorDef>(r.doc.definitions[3].body);
  CHECK(f.from == "P");
  CHECK(f.to == "T");
  CHECK(f.map == std::vector<int>{0, 0});
}

TEST_CASE("list category hom cells land at their ranks") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "lvcat.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  const auto& d = std::get<LVCatDef>(r.doc.definitions[0].body);
  CHECK(d.over == "two");
  CHECK(d.max_len == 2);
  CHECK(d.representable);
  const std::vector<Elem> expect = {1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1};
  CHECK(d.hom == expect);
  CHECK(has_note(r, "lvcategory J: 7 hom cells defaulted to bottom, "
                    "2 singleton cells defaulted to unit"));
}

TEST_CASE("missing required fields point at the closing brace") {
  const std::string text =
      "format: 1\n"
      "quantale V {\n"
      "  elements: [a]\n"
      "  order: a\n"
      "  tensor: { (a,a): a }\n"
      "}\n";
  ParseResult r = parse_qlab(text);
  REQUIRE(!r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.message == "quantale V: unit required");
  CHECK(d.line == 6);
  CHECK(d.col == 1);
  CHECK(d.end_col == 2);
  CHECK(r.doc.definitions.empty());
}

TEST_CASE("unknown names carry the offending token span") {
  const std::string text =
      "format: 1\n"
      "quantale V {\n"
      "  elements: [a, b]\n"
      "  order: a < b\n"
      "  tensor: { (a,a): a, (a,b): a, (b,a): a, (b,b): zz }\n"
      "  unit: b\n"
      "}\n";
  ParseResult r = parse_qlab(text);
  REQUIRE(!r.ok());
  REQUIRE(r.diagnostics.size() >= 1);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.message == "quantale V: unknown element 'zz'");
  CHECK(d.line == 5);
  CHECK(d.col == 50);
  CHECK(d.end_col == 52);
}

TEST_CASE("references resolve only to earlier healthy definitions") {
  ParseResult r = parse_qlab(
      "format: 1\n"
      "vcategory C over nosuch { objects: [x] }\n");
  CHECK(!r.ok());
  CHECK(has_error(r, "unknown quantale 'nosuch'"));

  ParseResult fwd = parse_qlab(
      "format: 1\n"
      "vcategory C over V2 { objects: [x] }\n"
      "quantale V2 { elements: [a] order: a tensor: { (a,a): a } unit: a }\n");
  CHECK(!fwd.ok());
  CHECK(has_error(fwd, "unknown quantale 'V2'"));

  ParseResult tomb = parse_qlab(
      "format: 1\n"
      "quantale V { elements: [a] order: a tensor: { (a,a): a } }\n"
      "vcategory C over V { objects: [x] }\n");
  CHECK(!tomb.ok());
  CHECK(has_error(tomb, "quantale V: unit required"));
  CHECK(has_error(tomb, "definition 'V' has errors"));

  ParseResult wrongkind = parse_qlab(
      "format: 1\n"
      "quantale V { elements: [a] order: a tensor: { (a,a): a } unit: a }\n"
      "monoid M over V { mult: { (a,a): a } unit: a }\n");
  CHECK(!wrongkind.ok());
  CHECK(has_error(wrongkind, "'V' is a quantale, expected a module"));
}

TEST_CASE("names must be unique and must not shadow the catalog") {
  ParseResult dup = parse_qlab(
      "format: 1\n"
      "quantale V { elements: [a] order: a tensor: { (a,a): a } unit: a }\n"
      "quantale V { elements: [b] order: b tensor: { (b,b): b } unit: b }\n");
  CHECK(!dup.ok());
  CHECK(has_error(dup, "name 'V' is already defined"));
  CHECK(dup.doc.definitions.size() == 1);

  ParseResult shadow = parse_qlab(
      "format: 1\n"
      "quantale two { elements: [a] order: a tensor: { (a,a): a } unit: a }\n");
  CHECK(!shadow.ok());
  CHECK(has_error(shadow, "definition 'two' shadows a builtin quantale"));
}

TEST_CASE("duplicate cells warn when equal and fail when conflicting") {
  const std::string base =
      "format: 1\n"
      "quantale V {\n"
      "  elements: [a, b]\n"
      "  order: a < b\n"
      "  tensor: { (a,a): a, (a,b): a, (b,a): a, (b,b): b, (a,b): VAL }\n"
      "  unit: b\n"
      "}\n";
  std::string same = base, diff = base;
  same.replace(same.find("VAL"), 3, "a");
  diff.replace(diff.find("VAL"), 3, "b");

  ParseResult rs = parse_qlab(same);
  CHECK(rs.ok());
  REQUIRE(rs.diagnostics.size() == 1);
  CHECK(rs.diagnostics[0].severity == Severity::warning);
  CHECK(rs.diagnostics[0].message ==
        "quantale V: duplicate cell (a,b) repeats the same value");

  ParseResult rd = parse_qlab(diff);
  CHECK(!rd.ok());
  CHECK(has_error(rd, "cell (a,b) is already set to a different value"));
}

TEST_CASE("first error mode stops at one diagnostic") {
  const std::string text =
      "format: 1\n"
      "quantale V { elements: [a, a] order: zz tensor: { } }\n";
  ParseResult all = parse_qlab(text, true);
  CHECK(all.diagnostics.size() >= 2);
  ParseResult one = parse_qlab(text, false);
  REQUIRE(one.diagnostics.size() == 1);
  CHECK(one.diagnostics[0].message == all.diagnostics[0].message);
  CHECK(one.diagnostics[0].line == all.diagnostics[0].line);
  CHECK(one.doc.definitions.empty());
}

TEST_CASE("the header and the envelope are enforced") {
  ParseResult empty = parse_qlab("");
  CHECK(!empty.ok());
  CHECK(has_error(empty, "expected 'format: 1' header"));

  ParseResult v2 = parse_qlab("format: 2\n");
  CHECK(!v2.ok());
  CHECK(has_error(v2, "unsupported format version"));

  ParseResult junk = parse_qlab("format: 1\nwibble wobble\n");
  CHECK(!junk.ok());
  CHECK(has_error(junk, "expected a definition keyword"));

  ParseResult stray = parse_qlab("format: 1\n\xc3\xa9\n");
  CHECK(!stray.ok());
  CHECK(has_error(stray, "unexpected character"));
}

TEST_CASE("recovery resumes at the next definition") {
  ParseResult r = parse_qlab(
      "format: 1\n"
      "quantale V { elements: [a] order: a tensor: { (a,a): a }\n"
      "quantale W { elements: [b] order: b tensor: { (b,b): b } unit: b }\n");
  CHECK(!r.ok());
  REQUIRE(r.doc.definitions.size() == 1);
  CHECK(r.doc.definitions[0].name() == "W");
}

TEST_CASE("emit writes the canonical form") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "two.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  const std::string expect =
      "format: 1\n"
      "\n"
      "quantale V2 {\n"
      "  elements: [lo, hi]\n"
      "  order: lo < hi\n"
      "  tensor: {\n"
      "    (lo,lo): lo\n"
      "    (lo,hi): lo\n"
      "    (hi,lo): lo\n"
      "    (hi,hi): hi\n"
      "  }\n"
      "  unit: hi\n"
      "}\n";
  CHECK(emit_qlab(r.doc) == expect);

  // Cell order in the source does not matter: emit sorts by element index.
  ParseResult scrambled = parse_qlab(
      "format: 1\n"
      "quantale V2 {\n"
      "  elements: [lo, hi]\n"
      "  order: lo < hi\n"
      "  tensor: { (hi,hi): hi, (lo,hi): lo, (hi,lo): lo, (lo,lo): lo }\n"
      "  unit: hi\n"
      "}\n");
  REQUIRE(scrambled.ok());
  CHECK(emit_qlab(scrambled.doc) == expect);
}

TEST_CASE("emit regenerates chain shorthand only for total orders") {
  const std::string sq =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "square.qlab");
  ParseResult r = parse_qlab(sq);
  REQUIRE(r.ok());
  const std::string emitted = emit_qlab(r.doc);
  CHECK(emitted.find("order: { bot < left, bot < right, left < top, "
                     "right < top }") != std::string::npos);

  const std::string luk =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "luk3.qlab");
  ParseResult rl = parse_qlab(luk);
  REQUIRE(rl.ok());
  CHECK(emit_qlab(rl.doc).find("order: z < h < o") != std::string::npos);
}

TEST_CASE("json emission mirrors the document") {
  const std::string text =
      read_file(std::filesystem::path(QLAB_CORPUS_DIR) / "module_monoid.qlab");
  ParseResult r = parse_qlab(text);
  REQUIRE(r.ok());
  const auto j = nlohmann::json::parse(emit_json(r.doc));
  CHECK(j["format"] == 1);
  REQUIRE(j["definitions"].size() == 2);
  const auto& m = j["definitions"][0];
  CHECK(m["kind"] == "module");
  CHECK(m["name"] == "M");
  CHECK(m["over"] == "two");
  CHECK(m["carrier"] == nlohmann::json({"a", "b"}));
  CHECK(m["leq"] == nlohmann::json({1, 1, 0, 1}));
  CHECK(m["action"] == nlohmann::json({0, 0, 0, 1}));
  const auto& mo = j["definitions"][1];
  CHECK(mo["kind"] == "monoid");
  CHECK(mo["mult"] == nlohmann::json({0, 0, 0, 1}));
  CHECK(mo["unit"] == 1);
}

TEST_CASE("oversized list spaces are rejected at parse time") {
  ParseResult r = parse_qlab(
      "format: 1\n"
      "lvcategory L over two {\n"
      "  objects: [a, b, c, d]\n"
      "  max_len: 9999\n"
      "}\n");
  CHECK(!r.ok());
  CHECK(has_error(r, "list space exceeds the enumeration guard"));
}

TEST_CASE("fuzzed inputs never crash and keep spans in bounds") {
  std::vector<std::string> bases;
  for (const auto& path : corpus_files()) bases.push_back(read_file(path));
  bases.push_back("format: 1\n");
  bases.push_back("");

  const std::string pool = "{}[]()<>:,#->\n\t abcxyz019_qualentmodi";
  Rng rng(2026);
  for (int iter = 0; iter < 20000; ++iter) {
    std::string s = bases[std::size_t(rng.below(int(bases.size())))];
    const int edits = 1 + rng.below(8);
    for (int e = 0; e < edits; ++e) {
      const int kind = rng.below(3);
      if (s.empty() || kind == 0) {
        const std::size_t at = std::size_t(rng.below(int(s.size()) + 1));
        s.insert(s.begin() + std::ptrdiff_t(at),
                 pool[std::size_t(rng.below(int(pool.size())))]);
      } else if (kind == 1) {
        s.erase(std::size_t(rng.below(int(s.size()))), 1);
      } else {
        s[std::size_t(rng.below(int(s.size())))] =
            pool[std::size_t(rng.below(int(pool.size())))];
      }
    }
    ParseResult r = parse_qlab(s, iter % 2 == 0);
    check_spans(s, r);
    if (r.ok() && !r.doc.definitions.empty()) {
      // Emitted canonical text of any accepted document must parse back.
      ParseResult again = parse_qlab(emit_qlab(r.doc));
      REQUIRE(again.ok());
      REQUIRE(again.doc == r.doc);
    }
  }
}
