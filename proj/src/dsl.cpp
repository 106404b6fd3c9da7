#include "qlab/dsl.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>

#include "qlab/lv.hpp"
#include "qlab/quantale.hpp"

namespace qlab {

namespace {

constexpr std::string_view kKinds[] = {"quantale", "vcategory", "vfunctor",
                                       "module",   "monoid",    "embedding",
                                       "acted",    "lvcategory"};

bool is_kind_word(std::string_view s) {
  return std::find(std::begin(kKinds), std::end(kKinds), s) != std::end(kKinds);
}

struct Token {
  enum Kind {
    Atom,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Less,
    Arrow,
    End
  };
  Kind kind = End;
  std::string text;
  int line = 1, col = 1, end_line = 1, end_col = 2;
};

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Commas are decorative separators; the lexer drops them outright.
std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int l, int c, int el, int ec) {
    out.push_back({k, std::move(t), l, c, el, ec});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
      continue;
    }
    const int l = line, cstart = col;
    if (atom_char(c)) {
      std::size_t j = i;
      while (j < text.size() && atom_char(text[j])) ++j;
      const int len = int(j - i);
      push(Token::Atom, std::string(text.substr(i, j - i)), l, cstart, l,
           cstart + len);
      i = j;
      col += len;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Token::Arrow, "->", l, cstart, l, cstart + 2);
      i += 2;
      col += 2;
      continue;
    }
    Token::Kind k = Token::End;
    switch (c) {
      case '{': k = Token::LBrace; break;
      case '}': k = Token::RBrace; break;
      case '[': k = Token::LBracket; break;
      case ']': k = Token::RBracket; break;
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case ':': k = Token::Colon; break;
      case '<': k = Token::Less; break;
      default:
        diags.push_back({Severity::error,
                         std::string("unexpected character '") + c + "'", l,
                         cstart, l, cstart + 1});
        ++i;
        ++col;
        continue;
    }
    push(k, std::string(1, c), l, cstart, l, cstart + 1);
    ++i;
    ++col;
  }
  push(Token::End, "", line, col, line, col + 1);
  return out;
}

const char* kind_word(Token::Kind k) {
  switch (k) {
    case Token::Atom: return "a name";
    case Token::LBrace: return "'{'";
    case Token::RBrace: return "'}'";
    case Token::LBracket: return "'['";
    case Token::RBracket: return "']'";
    case Token::LParen: return "'('";
    case Token::RParen: return "')'";
    case Token::Colon: return "':'";
    case Token::Less: return "'<'";
    case Token::Arrow: return "'->'";
    case Token::End: return "end of input";
  }
  return "?";
}

struct BlockAbort {};

// Element names plus the indices needed for defaulting hom cells.
struct BaseInfo {
  std::vector<std::string> names;
  Elem unit = 0;
  Elem bottom = 0;
  bool has_bottom = false;
};

int name_index(const std::vector<std::string>& names, std::string_view s) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return int(i);
  return -1;
}

// Reflexive-transitive closure of the declared relations.
std::vector<std::uint8_t> order_closure(int n,
                                        const std::vector<std::pair<int, int>>& rel) {
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[std::size_t(i) * n + i] = 1;
  for (auto [a, b] : rel) leq[std::size_t(a) * n + b] = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (leq[std::size_t(a) * n + k])
        for (int b = 0; b < n; ++b)
          if (leq[std::size_t(k) * n + b]) leq[std::size_t(a) * n + b] = 1;
  return leq;
}

bool find_order_bottom(int n, const std::vector<std::uint8_t>& leq, Elem& out) {
  for (int b = 0; b < n; ++b) {
    bool all = true;
    for (int x = 0; x < n && all; ++x) all = leq[std::size_t(b) * n + x] != 0;
    if (all) {
      out = Elem(b);
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, bool all_errors) : all_errors_(all_errors) {
    toks_ = lex(text, out_.diagnostics);
    if (!all_errors_ && !out_.diagnostics.empty()) {
      out_.diagnostics.resize(1);
      stop_ = true;
    }
  }

  ParseResult run() {
    if (!stop_) {
      if (peek().kind == Token::Atom && peek().text == "format") {
        next();
        expect_soft(Token::Colon, "expected ':' after 'format'");
        const Token v = peek();
        if (v.kind == Token::Atom && v.text == "1") {
          next();
        } else {
          err(v, "unsupported format version");
          if (v.kind == Token::Atom) next();
        }
      } else {
        err(peek(), "expected 'format: 1' header");
      }
    }
    while (!stop_ && peek().kind != Token::End) {
      const Token head = peek();
      if (head.kind != Token::Atom || !is_kind_word(head.text)) {
        err(head, "expected a definition keyword");
        skip_to_next_def();
        continue;
      }
      try {
        parse_def(head.text);
      } catch (const BlockAbort&) {
        tombstone_current();
        skip_to_next_def();
      } catch (const resource_error& e) {
        err(head, std::string("enumeration guard: ") + e.what());
        tombstone_current();
        skip_to_next_def();
      } catch (const input_error& e) {
        err(head, std::string("invalid definition: ") + e.what());
        tombstone_current();
        skip_to_next_def();
      }
    }
    return std::move(out_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseResult out_;
  bool all_errors_;
  bool stop_ = false;
  std::string current_name_;

  struct EnvEntry {
    std::string kind;  // definition kind, or "invalid" for a failed block
    std::vector<std::string> names;
  };
  std::map<std::string, EnvEntry, std::less<>> env_;

  const Token& peek(int ahead = 0) const {
    const std::size_t i = pos_ + std::size_t(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  void err(const Token& t, std::string msg) {
    if (stop_) return;
    out_.diagnostics.push_back({Severity::error, std::move(msg), t.line, t.col,
                                t.end_line, t.end_col});
    if (!all_errors_) stop_ = true;
  }
  void warn(const Token& t, std::string msg) {
    if (stop_) return;
    out_.diagnostics.push_back({Severity::warning, std::move(msg), t.line,
                                t.col, t.end_line, t.end_col});
  }

  const Token& expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) {
      err(peek(), what + ", found " + kind_word(peek().kind));
      throw BlockAbort{};
    }
    return next();
  }
  void expect_soft(Token::Kind k, const std::string& what) {
    if (peek().kind == k)
      next();
    else
      err(peek(), what + ", found " + kind_word(peek().kind));
  }
  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  void skip_to_next_def() {
    int depth = 0;
    while (peek().kind != Token::End) {
      const Token& t = peek();
      if (t.kind == Token::LBrace) ++depth;
      if (t.kind == Token::RBrace) {
        --depth;
        next();
        if (depth <= 0) {
          if (depth < 0) continue;  // stray brace; keep scanning
          if (peek().kind == Token::Atom && is_kind_word(peek().text)) return;
          continue;
        }
        continue;
      }
      if (depth <= 0 && t.kind == Token::Atom && is_kind_word(t.text)) return;
      next();
    }
  }

  // Skip a malformed field: stop before the next `name :` at this level or '}'.
  void skip_field() {
    int depth = 0;
    while (peek().kind != Token::End) {
      const Token& t = peek();
      if (depth == 0 && t.kind == Token::RBrace) return;
      if (depth == 0 && t.kind == Token::Atom && peek(1).kind == Token::Colon)
        return;
      if (t.kind == Token::LBrace || t.kind == Token::LBracket ||
          t.kind == Token::LParen)
        ++depth;
      if (t.kind == Token::RBrace || t.kind == Token::RBracket ||
          t.kind == Token::RParen)
        --depth;
      next();
    }
  }

  Token read_name(const std::string& kind) {
    if (peek().kind != Token::Atom) {
      err(peek(), "expected a name after '" + kind + "'");
      throw BlockAbort{};
    }
    Token t = next();
    if (env_.count(t.text)) {
      err(t, "name '" + t.text + "' is already defined");
      throw BlockAbort{};
    }
    if (find_builtin(t.text)) {
      err(t, "definition '" + t.text + "' shadows a builtin quantale");
      throw BlockAbort{};
    }
    current_name_ = t.text;
    return t;
  }

  void tombstone_current() {
    if (current_name_.empty()) return;
    env_[current_name_] = {"invalid", {}};
    current_name_.clear();
  }

  // Reference token; reassembles catalog keys like chain_min(3).
  Token read_ref(const std::string& what) {
    if (peek().kind != Token::Atom) {
      err(peek(), "expected " + what + ", found " + kind_word(peek().kind));
      throw BlockAbort{};
    }
    Token t = next();
    if (peek().kind == Token::LParen && peek(1).kind == Token::Atom &&
        peek(2).kind == Token::RParen) {
      next();
      const Token& arg = next();
      const Token& close = next();
      t.text += "(" + arg.text + ")";
      t.end_line = close.end_line;
      t.end_col = close.end_col;
    }
    return t;
  }

  bool resolve_quantale(const Token& ref, BaseInfo& info) {
    auto it = env_.find(ref.text);
    if (it != env_.end()) {
      if (it->second.kind == "invalid") {
        err(ref, "definition '" + ref.text + "' has errors");
        return false;
      }
      if (it->second.kind != "quantale") {
        err(ref, "'" + ref.text + "' is a " + it->second.kind +
                     ", expected a quantale");
        return false;
      }
      const QuantaleDef* d = find_quantale_def(ref.text);
      info.names = it->second.names;
      info.unit = d->unit;
      info.has_bottom = find_order_bottom(int(info.names.size()), d->leq, info.bottom);
      return true;
    }
    if (QuantalePtr q = find_builtin(ref.text)) {
      info.names = q->elem_names();
      info.unit = q->unit();
      info.bottom = q->bottom();
      info.has_bottom = true;
      return true;
    }
    err(ref, "unknown quantale '" + ref.text + "'");
    return false;
  }

  const QuantaleDef* find_quantale_def(std::string_view name) const {
    for (const Definition& d : out_.doc.definitions)
      if (auto* q = std::get_if<QuantaleDef>(&d.body))
        if (q->name == name) return q;
    return nullptr;
  }

  const EnvEntry* resolve_kind(const Token& ref, const std::string& kind) {
    auto it = env_.find(ref.text);
    if (it == env_.end()) {
      err(ref, "unknown " + kind + " '" + ref.text + "'");
      return nullptr;
    }
    if (it->second.kind == "invalid") {
      err(ref, "definition '" + ref.text + "' has errors");
      return nullptr;
    }
    if (it->second.kind != kind) {
      err(ref, "'" + ref.text + "' is a " + it->second.kind + ", expected a " +
                   kind);
      return nullptr;
    }
    return &it->second;
  }

  // --- field pieces ---

  std::vector<std::string> read_name_list(const std::string& owner) {
    std::vector<std::string> names;
    expect(Token::LBracket, owner + ": expected '['");
    while (peek().kind == Token::Atom) {
      const Token& t = next();
      if (name_index(names, t.text) >= 0)
        err(t, owner + ": duplicate element '" + t.text + "'");
      else
        names.push_back(t.text);
    }
    expect(Token::RBracket, owner + ": expected ']'");
    return names;
  }

  std::vector<std::uint8_t> read_order(const std::string& owner,
                                       const std::vector<std::string>& names) {
    std::vector<std::pair<int, int>> rel;
    auto idx = [&](const Token& t) {
      const int i = name_index(names, t.text);
      if (i < 0) err(t, owner + ": unknown element '" + t.text + "'");
      return i;
    };
    if (accept(Token::LBrace)) {
      while (peek().kind == Token::Atom) {
        const Token& a = next();
        expect(Token::Less, owner + ": expected '<' in an order pair");
        if (peek().kind != Token::Atom) {
          err(peek(), owner + ": expected an element after '<'");
          throw BlockAbort{};
        }
        const Token& b = next();
        const int ia = idx(a), ib = idx(b);
        if (ia >= 0 && ib >= 0) rel.emplace_back(ia, ib);
      }
      expect(Token::RBrace, owner + ": expected '}' after order pairs");
    } else {
      if (peek().kind != Token::Atom) {
        err(peek(), owner + ": expected an order chain or '{' pairs");
        throw BlockAbort{};
      }
      int prev = idx(next());
      while (accept(Token::Less)) {
        if (peek().kind != Token::Atom) {
          err(peek(), owner + ": expected an element after '<'");
          throw BlockAbort{};
        }
        const int cur = idx(next());
        if (prev >= 0 && cur >= 0) rel.emplace_back(prev, cur);
        prev = cur;
      }
    }
    return order_closure(int(names.size()), rel);
  }

  // `{ (a,b): v ... }` with key atoms in `rows`/`cols` and values in `vals`.
  struct CellTable {
    std::vector<Elem> t;
    std::vector<std::uint8_t> set;
  };
  CellTable read_cells2(const std::string& owner,
                        const std::vector<std::string>& rows,
                        const std::vector<std::string>& cols,
                        const std::vector<std::string>& vals) {
    CellTable out;
    out.t.assign(rows.size() * cols.size(), 0);
    out.set.assign(rows.size() * cols.size(), 0);
    expect(Token::LBrace, owner + ": expected '{'");
    while (peek().kind == Token::LParen) {
      const Token open = next();
      if (peek().kind != Token::Atom) {
        err(peek(), owner + ": expected an element in the cell key");
        throw BlockAbort{};
      }
      const Token a = next();
      if (peek().kind != Token::Atom) {
        err(peek(), owner + ": expected a second element in the cell key");
        throw BlockAbort{};
      }
      const Token b = next();
      expect(Token::RParen, owner + ": expected ')'");
      expect(Token::Colon, owner + ": expected ':' after the cell key");
      if (peek().kind != Token::Atom) {
        err(peek(), owner + ": expected a value, found " + kind_word(peek().kind));
        throw BlockAbort{};
      }
      const Token v = next();
      const int ia = name_index(rows, a.text);
      const int ib = name_index(cols, b.text);
      const int iv = name_index(vals, v.text);
      if (ia < 0) err(a, owner + ": unknown element '" + a.text + "'");
      if (ib < 0) err(b, owner + ": unknown element '" + b.text + "'");
      if (iv < 0) err(v, owner + ": unknown element '" + v.text + "'");
      if (ia < 0 || ib < 0 || iv < 0) continue;
      const std::size_t cell = std::size_t(ia) * cols.size() + std::size_t(ib);
      if (out.set[cell]) {
        if (out.t[cell] == Elem(iv))
          warn(open, owner + ": duplicate cell (" + a.text + "," + b.text +
                         ") repeats the same value");
        else
          err(open, owner + ": cell (" + a.text + "," + b.text +
                        ") is already set to a different value");
        continue;
      }
      out.t[cell] = Elem(iv);
      out.set[cell] = 1;
    }
    expect(Token::RBrace, owner + ": expected '}' after the cell map");
    return out;
  }

  // `{ a: b ... }` keyed by `keys`, valued in `vals`.
  CellTable read_cells1(const std::string& owner,
                        const std::vector<std::string>& keys,
                        const std::vector<std::string>& vals) {
    CellTable out;
    out.t.assign(keys.size(), 0);
    out.set.assign(keys.size(), 0);
    expect(Token::LBrace, owner + ": expected '{'");
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token k = next();
      next();  // ':'
      if (peek().kind != Token::Atom) {
        err(peek(), owner + ": expected a value, found " + kind_word(peek().kind));
        throw BlockAbort{};
      }
      const Token v = next();
      const int ik = name_index(keys, k.text);
      const int iv = name_index(vals, v.text);
      if (ik < 0) err(k, owner + ": unknown element '" + k.text + "'");
      if (iv < 0) err(v, owner + ": unknown element '" + v.text + "'");
      if (ik < 0 || iv < 0) continue;
      if (out.set[std::size_t(ik)]) {
        if (out.t[std::size_t(ik)] == Elem(iv))
          warn(k, owner + ": duplicate entry '" + k.text +
                      "' repeats the same value");
        else
          err(k, owner + ": entry '" + k.text +
                     "' is already set to a different value");
        continue;
      }
      out.t[std::size_t(ik)] = Elem(iv);
      out.set[std::size_t(ik)] = 1;
    }
    expect(Token::RBrace, owner + ": expected '}' after the map");
    return out;
  }

  void require_complete2(const std::string& owner, const Token& at,
                         const CellTable& c, const std::vector<std::string>& rows,
                         const std::vector<std::string>& cols,
                         const std::string& field, bool& ok) {
    for (std::size_t i = 0; i < c.set.size(); ++i)
      if (!c.set[i]) {
        err(at, owner + ": " + field + " cell (" + rows[i / cols.size()] + "," +
                    cols[i % cols.size()] + ") required");
        ok = false;
        return;
      }
  }

  // Takes the body whole to avoid unsequenced reads of moved-from fields.
  void finish_def(const std::string& kind, bool ok, DefBody body) {
    if (stop_) ok = false;
    const std::string name =
        std::visit([](const auto& b) { return b.name; }, body);
    current_name_.clear();
    if (!ok) {
      env_[name] = {"invalid", {}};
      return;
    }
    std::vector<std::string> names;
    if (auto* q = std::get_if<QuantaleDef>(&body))
      names = q->elements;
    else if (auto* c = std::get_if<VCatDef>(&body))
      names = c->objects;
    else if (auto* m = std::get_if<ModuleDef>(&body))
      names = m->carrier;
    else if (auto* l = std::get_if<LVCatDef>(&body))
      names = l->objects;
    env_[name] = {kind, std::move(names)};
    out_.doc.definitions.push_back({std::move(body)});
  }

  void parse_def(const std::string& kind) {
    next();  // the kind keyword
    if (kind == "quantale") return parse_quantale();
    if (kind == "vcategory") return parse_vcategory();
    if (kind == "vfunctor") return parse_vfunctor();
    if (kind == "module") return parse_module();
    if (kind == "monoid") return parse_monoid();
    if (kind == "embedding") return parse_embedding();
    if (kind == "acted") return parse_acted();
    parse_lvcategory();
  }

  void parse_quantale() {
    const Token name = read_name("quantale");
    const std::string owner = "quantale " + name.text;
    expect(Token::LBrace, owner + ": expected '{'");
    QuantaleDef d;
    d.name = name.text;
    bool ok = true;
    bool has_elems = false, has_order = false, has_tensor = false,
         has_unit = false;
    Token unit_tok;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();  // ':'
      if (field.text == "elements") {
        d.elements = read_name_list(owner);
        has_elems = true;
      } else if (field.text == "order") {
        if (!has_elems) {
          err(field, owner + ": elements must be declared before order");
          ok = false;
          skip_field();
          continue;
        }
        d.leq = read_order(owner, d.elements);
        has_order = true;
      } else if (field.text == "tensor") {
        if (!has_elems) {
          err(field, owner + ": elements must be declared before tensor");
          ok = false;
          skip_field();
          continue;
        }
        if (peek().kind == Token::Atom && peek().text == "builtin") {
          next();
          const Token ref = read_ref("a builtin quantale name");
          QuantalePtr q = find_builtin(ref.text);
          if (!q) {
            err(ref, owner + ": unknown builtin '" + ref.text + "'");
            ok = false;
            continue;
          }
          if (q->size() != int(d.elements.size())) {
            err(ref, owner + ": builtin '" + ref.text + "' has " +
                         std::to_string(q->size()) + " elements, not " +
                         std::to_string(d.elements.size()));
            ok = false;
            continue;
          }
          if (!has_order) {
            err(ref, owner + ": order must be declared before a builtin tensor");
            ok = false;
            continue;
          }
          if (d.leq != q->lattice().leq_table()) {
            err(ref, owner + ": declared order differs from builtin '" +
                         ref.text + "'");
            ok = false;
            continue;
          }
          d.tensor = q->tensor_table();
          has_tensor = true;
          out_.notes.push_back(owner + ": tensor table copied from builtin '" +
                               ref.text + "'");
        } else {
          CellTable c = read_cells2(owner, d.elements, d.elements, d.elements);
          require_complete2(owner, peek(), c, d.elements, d.elements, "tensor",
                            ok);
          d.tensor = std::move(c.t);
          has_tensor = true;
        }
      } else if (field.text == "unit") {
        if (!has_elems) {
          err(field, owner + ": elements must be declared before unit");
          ok = false;
          skip_field();
          continue;
        }
        if (peek().kind != Token::Atom) {
          err(peek(), owner + ": expected an element after 'unit:'");
          throw BlockAbort{};
        }
        unit_tok = next();
        const int i = name_index(d.elements, unit_tok.text);
        if (i < 0) {
          err(unit_tok, owner + ": unknown element '" + unit_tok.text + "'");
          ok = false;
        } else {
          d.unit = Elem(i);
        }
        has_unit = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_elems) err(close, owner + ": elements required"), ok = false;
    if (has_elems && d.elements.empty())
      err(close, owner + ": at least one element required"), ok = false;
    if (!has_order) err(close, owner + ": order required"), ok = false;
    if (!has_tensor) err(close, owner + ": tensor required"), ok = false;
    if (!has_unit) err(close, owner + ": unit required"), ok = false;
    finish_def("quantale", ok, std::move(d));
  }

  void parse_vcategory() {
    const Token name = read_name("vcategory");
    const std::string owner = "vcategory " + name.text;
    expect_keyword("over", owner);
    const Token ref = read_ref("a quantale name");
    BaseInfo base;
    bool ok = resolve_quantale(ref, base);
    expect(Token::LBrace, owner + ": expected '{'");
    VCatDef d;
    d.name = name.text;
    d.over = ref.text;
    bool has_objects = false;
    CellTable hom;
    bool has_hom = false;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "objects") {
        d.objects = read_name_list(owner);
        has_objects = true;
      } else if (field.text == "hom") {
        if (!has_objects || !ok) {
          err(field, owner + ": objects must be declared before hom");
          ok = false;
          skip_field();
          continue;
        }
        hom = read_cells2(owner, d.objects, d.objects, base.names);
        has_hom = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_objects) err(close, owner + ": objects required"), ok = false;
    if (ok) {
      const std::size_t n = d.objects.size();
      if (!has_hom) {
        hom.t.assign(n * n, 0);
        hom.set.assign(n * n, 0);
      }
      int def_bottom = 0, def_diag = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (hom.set[i * n + j]) continue;
          if (i == j) {
            hom.t[i * n + j] = base.unit;
            ++def_diag;
          } else {
            if (!base.has_bottom) {
              err(close, owner + ": cannot default hom cells, base has no bottom");
              ok = false;
              i = n;
              break;
            }
            hom.t[i * n + j] = base.bottom;
            ++def_bottom;
          }
        }
      if (ok && (def_bottom || def_diag))
        out_.notes.push_back(
            owner + ": " + std::to_string(def_bottom) +
            " hom cells defaulted to bottom, " + std::to_string(def_diag) +
            " diagonal cells defaulted to unit");
      d.hom = std::move(hom.t);
    }
    finish_def("vcategory", ok, std::move(d));
  }

  void parse_vfunctor() {
    const Token name = read_name("vfunctor");
    const std::string owner = "vfunctor " + name.text;
    expect(Token::Colon, owner + ": expected ':'");
    const Token from = read_ref("a vcategory name");
    expect(Token::Arrow, owner + ": expected '->'");
    const Token to = read_ref("a vcategory name");
    const EnvEntry* src = resolve_kind(from, "vcategory");
    const EnvEntry* tgt = resolve_kind(to, "vcategory");
    bool ok = src && tgt;
    expect(Token::LBrace, owner + ": expected '{'");
    VFunctorDef d;
    d.name = name.text;
    d.from = from.text;
    d.to = to.text;
    CellTable map;
    bool has_map = false;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "map") {
        if (!ok) {
          skip_field();
          continue;
        }
        map = read_cells1(owner, src->names, tgt->names);
        has_map = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_map) err(close, owner + ": map required"), ok = false;
    if (ok)
      for (std::size_t i = 0; i < map.set.size(); ++i)
        if (!map.set[i]) {
          err(close, owner + ": map for '" + src->names[i] + "' required");
          ok = false;
          break;
        }
    if (ok) d.map.assign(map.t.begin(), map.t.end());
    finish_def("vfunctor", ok, std::move(d));
  }

  void parse_module() {
    const Token name = read_name("module");
    const std::string owner = "module " + name.text;
    expect_keyword("over", owner);
    const Token ref = read_ref("a quantale name");
    BaseInfo base;
    bool ok = resolve_quantale(ref, base);
    expect(Token::LBrace, owner + ": expected '{'");
    ModuleDef d;
    d.name = name.text;
    d.over = ref.text;
    bool has_carrier = false, has_order = false, has_action = false;
    CellTable action;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "carrier") {
        d.carrier = read_name_list(owner);
        has_carrier = true;
      } else if (field.text == "order") {
        if (!has_carrier) {
          err(field, owner + ": carrier must be declared before order");
          ok = false;
          skip_field();
          continue;
        }
        d.leq = read_order(owner, d.carrier);
        has_order = true;
      } else if (field.text == "action") {
        if (!has_carrier || !ok) {
          err(field, owner + ": carrier must be declared before action");
          ok = false;
          skip_field();
          continue;
        }
        action = read_cells2(owner, base.names, d.carrier, d.carrier);
        has_action = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_carrier) err(close, owner + ": carrier required"), ok = false;
    if (has_carrier && d.carrier.empty())
      err(close, owner + ": at least one carrier element required"), ok = false;
    if (!has_order) err(close, owner + ": order required"), ok = false;
    if (!has_action)
      err(close, owner + ": action required"), ok = false;
    else if (ok)
      require_complete2(owner, close, action, base.names, d.carrier, "action",
                        ok);
    if (ok) d.action = std::move(action.t);
    finish_def("module", ok, std::move(d));
  }

  void parse_monoid() {
    const Token name = read_name("monoid");
    const std::string owner = "monoid " + name.text;
    expect_keyword("over", owner);
    const Token ref = read_ref("a module name");
    const EnvEntry* mod = resolve_kind(ref, "module");
    bool ok = mod != nullptr;
    expect(Token::LBrace, owner + ": expected '{'");
    MonoidDef d;
    d.name = name.text;
    d.over = ref.text;
    CellTable mult;
    bool has_mult = false, has_unit = false;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "mult") {
        if (!ok) {
          skip_field();
          continue;
        }
        mult = read_cells2(owner, mod->names, mod->names, mod->names);
        has_mult = true;
      } else if (field.text == "unit") {
        if (peek().kind != Token::Atom) {
          err(peek(), owner + ": expected an element after 'unit:'");
          throw BlockAbort{};
        }
        const Token u = next();
        if (!ok) continue;
        const int i = name_index(mod->names, u.text);
        if (i < 0) {
          err(u, owner + ": unknown element '" + u.text + "'");
          ok = false;
        } else {
          d.unit = Elem(i);
        }
        has_unit = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_mult) err(close, owner + ": mult required"), ok = false;
    if (!has_unit) err(close, owner + ": unit required"), ok = false;
    if (ok) require_complete2(owner, close, mult, mod->names, mod->names, "mult", ok);
    if (ok) d.mult = std::move(mult.t);
    finish_def("monoid", ok, std::move(d));
  }

  void parse_embedding() {
    const Token name = read_name("embedding");
    const std::string owner = "embedding " + name.text;
    expect(Token::Colon, owner + ": expected ':'");
    const Token from = read_ref("a quantale name");
    expect(Token::Arrow, owner + ": expected '->'");
    const Token to = read_ref("a quantale name");
    BaseInfo src, tgt;
    bool ok = resolve_quantale(from, src);
    ok = resolve_quantale(to, tgt) && ok;
    expect(Token::LBrace, owner + ": expected '{'");
    EmbeddingDef d;
    d.name = name.text;
    d.from = from.text;
    d.to = to.text;
    CellTable map;
    bool has_map = false;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "map") {
        if (!ok) {
          skip_field();
          continue;
        }
        map = read_cells1(owner, src.names, tgt.names);
        has_map = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_map) err(close, owner + ": map required"), ok = false;
    if (ok)
      for (std::size_t i = 0; i < map.set.size(); ++i)
        if (!map.set[i]) {
          err(close, owner + ": map for '" + src.names[i] + "' required");
          ok = false;
          break;
        }
    if (ok) d.map = std::move(map.t);
    finish_def("embedding", ok, std::move(d));
  }

  void parse_acted() {
    const Token name = read_name("acted");
    const std::string owner = "acted " + name.text;
    expect_keyword("over", owner);
    const Token over = read_ref("a quantale name");
    expect_keyword("on", owner);
    const Token on = read_ref("a quantale name");
    BaseInfo base, tgt;
    bool ok = resolve_quantale(over, base);
    ok = resolve_quantale(on, tgt) && ok;
    expect(Token::LBrace, owner + ": expected '{'");
    ActedDef d;
    d.name = name.text;
    d.over = over.text;
    d.on = on.text;
    CellTable action;
    bool has_action = false;
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "action") {
        if (!ok) {
          skip_field();
          continue;
        }
        action = read_cells2(owner, base.names, tgt.names, tgt.names);
        has_action = true;
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_action)
      err(close, owner + ": action required"), ok = false;
    else if (ok)
      require_complete2(owner, close, action, base.names, tgt.names, "action",
                        ok);
    if (ok) d.action = std::move(action.t);
    finish_def("acted", ok, std::move(d));
  }

  void parse_lvcategory() {
    const Token name = read_name("lvcategory");
    const std::string owner = "lvcategory " + name.text;
    expect_keyword("over", owner);
    const Token ref = read_ref("a quantale name");
    BaseInfo base;
    bool ok = resolve_quantale(ref, base);
    expect(Token::LBrace, owner + ": expected '{'");
    LVCatDef d;
    d.name = name.text;
    d.over = ref.text;
    bool has_objects = false, has_len = false;
    // (list rank, object) -> value
    std::vector<Elem> hom;
    std::vector<std::uint8_t> set;
    std::int64_t list_count = 0;
    int def_bottom = 0, def_diag = 0;
    auto ensure_index = [&](const Token& at) -> bool {
      if (list_count) return true;
      try {
        ListIndex li(int(d.objects.size()), d.max_len);
        list_count = li.count();
        hom.assign(std::size_t(list_count) * d.objects.size(),
                   base.has_bottom ? base.bottom : Elem(0));
        set.assign(hom.size(), 0);
        return true;
      } catch (const resource_error&) {
        err(at, owner + ": list space exceeds the enumeration guard");
        return false;
      }
    };
    while (peek().kind == Token::Atom && peek(1).kind == Token::Colon) {
      const Token field = next();
      next();
      if (field.text == "objects") {
        d.objects = read_name_list(owner);
        has_objects = true;
      } else if (field.text == "max_len") {
        if (peek().kind != Token::Atom) {
          err(peek(), owner + ": expected a number after 'max_len:'");
          throw BlockAbort{};
        }
        const Token v = next();
        bool digits = !v.text.empty() &&
                      std::all_of(v.text.begin(), v.text.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                      });
        if (!digits || v.text.size() > 4) {
          err(v, owner + ": max_len must be a small nonnegative integer");
          ok = false;
        } else {
          d.max_len = std::stoi(v.text);
          has_len = true;
        }
      } else if (field.text == "representable") {
        if (peek().kind != Token::Atom ||
            (peek().text != "true" && peek().text != "false")) {
          err(peek(), owner + ": representable must be true or false");
          ok = false;
          skip_field();
          continue;
        }
        d.representable = next().text == "true";
      } else if (field.text == "hom") {
        if (!has_objects || !has_len || !ok) {
          err(field, owner + ": objects and max_len must come before hom");
          ok = false;
          skip_field();
          continue;
        }
        if (!base.has_bottom) {
          err(field, owner + ": cannot default hom cells, base has no bottom");
          ok = false;
          skip_field();
          continue;
        }
        if (!ensure_index(field)) {
          ok = false;
          skip_field();
          continue;
        }
        ListIndex li(int(d.objects.size()), d.max_len);
        expect(Token::LBrace, owner + ": expected '{'");
        while (peek().kind == Token::LParen) {
          const Token open = next();
          std::vector<Elem> xs;
          bool cell_ok = true;
          while (peek().kind == Token::Atom) {
            const Token x = next();
            const int i = name_index(d.objects, x.text);
            if (i < 0) {
              err(x, owner + ": unknown object '" + x.text + "'");
              cell_ok = false;
            } else {
              xs.push_back(Elem(i));
            }
          }
          expect(Token::Arrow, owner + ": expected '->' in the hom key");
          if (peek().kind != Token::Atom) {
            err(peek(), owner + ": expected a target object");
            throw BlockAbort{};
          }
          const Token y = next();
          expect(Token::RParen, owner + ": expected ')'");
          expect(Token::Colon, owner + ": expected ':' after the hom key");
          if (peek().kind != Token::Atom) {
            err(peek(), owner + ": expected a value, found " +
                            kind_word(peek().kind));
            throw BlockAbort{};
          }
          const Token v = next();
          const int iy = name_index(d.objects, y.text);
          const int iv = name_index(base.names, v.text);
          if (iy < 0) err(y, owner + ": unknown object '" + y.text + "'"), cell_ok = false;
          if (iv < 0) err(v, owner + ": unknown element '" + v.text + "'"), cell_ok = false;
          if (int(xs.size()) > d.max_len) {
            err(open, owner + ": list longer than max_len");
            cell_ok = false;
          }
          if (!cell_ok) continue;
          const std::size_t cell =
              std::size_t(li.rank(xs)) * d.objects.size() + std::size_t(iy);
          if (set[cell]) {
            if (hom[cell] == Elem(iv))
              warn(open, owner + ": duplicate hom cell repeats the same value");
            else
              err(open, owner + ": hom cell is already set to a different value");
            continue;
          }
          hom[cell] = Elem(iv);
          set[cell] = 1;
        }
        expect(Token::RBrace, owner + ": expected '}' after the hom map");
      } else {
        err(field, owner + ": unknown field '" + field.text + "'");
        ok = false;
        skip_field();
      }
    }
    const Token close = peek();
    expect(Token::RBrace, owner + ": expected '}'");
    if (!has_objects) err(close, owner + ": objects required"), ok = false;
    if (has_objects && d.objects.empty())
      err(close, owner + ": at least one object required"), ok = false;
    if (!has_len) err(close, owner + ": max_len required"), ok = false;
    if (ok && !base.has_bottom) {
      err(close, owner + ": cannot default hom cells, base has no bottom");
      ok = false;
    }
    if (ok && !ensure_index(close)) ok = false;
    if (ok) {
      ListIndex li(int(d.objects.size()), d.max_len);
      for (std::int64_t r = 0; r < list_count; ++r) {
        const std::vector<Elem> xs = li.unrank(r);
        for (std::size_t y = 0; y < d.objects.size(); ++y) {
          const std::size_t cell = std::size_t(r) * d.objects.size() + y;
          if (set[cell]) continue;
          if (xs.size() == 1 && xs[0] == Elem(y)) {
            hom[cell] = base.unit;
            ++def_diag;
          } else {
            ++def_bottom;  // already filled with bottom
          }
        }
      }
      if (def_bottom || def_diag)
        out_.notes.push_back(
            owner + ": " + std::to_string(def_bottom) +
            " hom cells defaulted to bottom, " + std::to_string(def_diag) +
            " singleton cells defaulted to unit");
      d.hom = std::move(hom);
    }
    finish_def("lvcategory", ok, std::move(d));
  }

  void expect_keyword(const std::string& word, const std::string& owner) {
    if (peek().kind == Token::Atom && peek().text == word) {
      next();
      return;
    }
    err(peek(), owner + ": expected '" + word + "', found " +
                    kind_word(peek().kind));
    throw BlockAbort{};
  }
};

// --- emitters ---

bool order_total(int n, const std::vector<std::uint8_t>& leq) {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!leq[std::size_t(a) * n + b] && !leq[std::size_t(b) * n + a])
        return false;
  return true;
}

std::vector<int> order_sorted(int n, const std::vector<std::uint8_t>& leq) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[std::size_t(i)] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    int below_a = 0, below_b = 0;
    for (int x = 0; x < n; ++x) {
      below_a += leq[std::size_t(x) * n + a];
      below_b += leq[std::size_t(x) * n + b];
    }
    return below_a < below_b;
  });
  return idx;
}

std::string order_text(const std::vector<std::string>& names,
                       const std::vector<std::uint8_t>& leq) {
  const int n = int(names.size());
  if (order_total(n, leq)) {
    std::string s;
    for (int i : order_sorted(n, leq)) {
      if (!s.empty()) s += " < ";
      s += names[std::size_t(i)];
    }
    return s;
  }
  // covering pairs, sorted by index
  std::string s = "{ ";
  bool first = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq[std::size_t(a) * n + b]) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && leq[std::size_t(a) * n + c] &&
            leq[std::size_t(c) * n + b])
          cover = false;
      if (!cover) continue;
      if (!first) s += ", ";
      s += names[std::size_t(a)] + " < " + names[std::size_t(b)];
      first = false;
    }
  return s + " }";
}

struct EmitBase {
  std::vector<std::string> names;
  Elem unit = 0;
  Elem bottom = 0;
  bool known = false;  // defaults are suppressed only when the base resolves
};

EmitBase emit_base_info(const SpecDocument& doc, const std::string& over) {
  EmitBase out;
  for (const Definition& def : doc.definitions)
    if (const auto* q = std::get_if<QuantaleDef>(&def.body))
      if (q->name == over) {
        out.names = q->elements;
        out.unit = q->unit;
        Elem b = 0;
        if (!find_order_bottom(int(q->elements.size()), q->leq, b)) return out;
        out.bottom = b;
        out.known = true;
        return out;
      }
  if (QuantalePtr q = find_builtin(over)) {
    out.names = q->elem_names();
    out.unit = q->unit();
    out.bottom = q->bottom();
    out.known = true;
  }
  return out;
}

std::string bracket_list(const std::vector<std::string>& names) {
  std::string s = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s + "]";
}

void emit_quantale(std::string& o, const QuantaleDef& d) {
  const std::size_t n = d.elements.size();
  o += "quantale " + d.name + " {\n";
  o += "  elements: " + bracket_list(d.elements) + "\n";
  o += "  order: " + order_text(d.elements, d.leq) + "\n";
  o += "  tensor: {\n";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      o += "    (" + d.elements[a] + "," + d.elements[b] +
           "): " + d.elements[std::size_t(d.tensor[a * n + b])] + "\n";
  o += "  }\n";
  o += "  unit: " + d.elements[std::size_t(d.unit)] + "\n";
  o += "}\n";
}

void emit_vcategory(std::string& o, const SpecDocument& doc, const VCatDef& d) {
  const std::size_t n = d.objects.size();
  const EmitBase base = emit_base_info(doc, d.over);
  o += "vcategory " + d.name + " over " + d.over + " {\n";
  o += "  objects: " + bracket_list(d.objects) + "\n";
  std::string cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Elem v = d.hom[i * n + j];
      if (base.known && (i == j ? v == base.unit : v == base.bottom)) continue;
      cells += "    (" + d.objects[i] + "," + d.objects[j] +
               "): " + base.names[std::size_t(v)] + "\n";
    }
  if (!cells.empty()) o += "  hom: {\n" + cells + "  }\n";
  o += "}\n";
}

void emit_vfunctor(std::string& o, const SpecDocument& doc, const VFunctorDef& d) {
  o += "vfunctor " + d.name + " : " + d.from + " -> " + d.to + " {\n";
  const Definition* src = doc.find(d.from);
  const Definition* tgt = doc.find(d.to);
  const auto& from_names = std::get<VCatDef>(src->body).objects;
  const auto& to_names = std::get<VCatDef>(tgt->body).objects;
  o += "  map: {\n";
  for (std::size_t i = 0; i < d.map.size(); ++i)
    o += "    " + from_names[i] + ": " + to_names[std::size_t(d.map[i])] + "\n";
  o += "  }\n}\n";
}

void emit_module(std::string& o, const SpecDocument& doc, const ModuleDef& d) {
  const EmitBase base = emit_base_info(doc, d.over);
  const std::size_t n = d.carrier.size();
  o += "module " + d.name + " over " + d.over + " {\n";
  o += "  carrier: " + bracket_list(d.carrier) + "\n";
  o += "  order: " + order_text(d.carrier, d.leq) + "\n";
  o += "  action: {\n";
  for (std::size_t v = 0; v < base.names.size(); ++v)
    for (std::size_t x = 0; x < n; ++x)
      o += "    (" + base.names[v] + "," + d.carrier[x] +
           "): " + d.carrier[std::size_t(d.action[v * n + x])] + "\n";
  o += "  }\n}\n";
}

void emit_monoid(std::string& o, const SpecDocument& doc, const MonoidDef& d) {
  const Definition* mod = doc.find(d.over);
  const auto& names = std::get<ModuleDef>(mod->body).carrier;
  const std::size_t n = names.size();
  o += "monoid " + d.name + " over " + d.over + " {\n";
  o += "  mult: {\n";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      o += "    (" + names[a] + "," + names[b] +
           "): " + names[std::size_t(d.mult[a * n + b])] + "\n";
  o += "  }\n";
  o += "  unit: " + names[std::size_t(d.unit)] + "\n";
  o += "}\n";
}

void emit_embedding(std::string& o, const SpecDocument& doc,
                    const EmbeddingDef& d) {
  const EmitBase src = emit_base_info(doc, d.from);
  const EmitBase tgt = emit_base_info(doc, d.to);
  o += "embedding " + d.name + " : " + d.from + " -> " + d.to + " {\n";
  o += "  map: {\n";
  for (std::size_t i = 0; i < d.map.size(); ++i)
    o += "    " + src.names[i] + ": " + tgt.names[std::size_t(d.map[i])] + "\n";
  o += "  }\n}\n";
}

void emit_acted(std::string& o, const SpecDocument& doc, const ActedDef& d) {
  const EmitBase base = emit_base_info(doc, d.over);
  const EmitBase tgt = emit_base_info(doc, d.on);
  const std::size_t n = tgt.names.size();
  o += "acted " + d.name + " over " + d.over + " on " + d.on + " {\n";
  o += "  action: {\n";
  for (std::size_t v = 0; v < base.names.size(); ++v)
    for (std::size_t q = 0; q < n; ++q)
      o += "    (" + base.names[v] + "," + tgt.names[q] +
           "): " + tgt.names[std::size_t(d.action[v * n + q])] + "\n";
  o += "  }\n}\n";
}

void emit_lvcategory(std::string& o, const SpecDocument& doc, const LVCatDef& d) {
  const EmitBase base = emit_base_info(doc, d.over);
  const std::size_t n = d.objects.size();
  o += "lvcategory " + d.name + " over " + d.over + " {\n";
  o += "  objects: " + bracket_list(d.objects) + "\n";
  o += "  max_len: " + std::to_string(d.max_len) + "\n";
  if (d.representable) o += "  representable: true\n";
  ListIndex li(int(n), d.max_len);
  std::string cells;
  for (std::int64_t r = 0; r < li.count(); ++r) {
    const std::vector<Elem> xs = li.unrank(r);
    for (std::size_t y = 0; y < n; ++y) {
      const Elem v = d.hom[std::size_t(r) * n + y];
      if (base.known) {
        const bool diag = xs.size() == 1 && xs[0] == Elem(y);
        if (diag ? v == base.unit : v == base.bottom) continue;
      }
      std::string key = "(";
      for (Elem x : xs) key += d.objects[std::size_t(x)] + " ";
      key += "-> " + d.objects[y] + ")";
      cells += "    " + key + ": " + base.names[std::size_t(v)] + "\n";
    }
  }
  if (!cells.empty()) o += "  hom: {\n" + cells + "  }\n";
  o += "}\n";
}

nlohmann::ordered_json json_ints(const std::vector<Elem>& v) {
  return nlohmann::ordered_json(v);
}

nlohmann::ordered_json json_def(const Definition& def) {
  using J = nlohmann::ordered_json;
  J j;
  j["kind"] = std::string(def.kind());
  j["name"] = def.name();
  if (const auto* q = std::get_if<QuantaleDef>(&def.body)) {
    j["elements"] = q->elements;
    j["leq"] = J(std::vector<int>(q->leq.begin(), q->leq.end()));
    j["tensor"] = json_ints(q->tensor);
    j["unit"] = q->unit;
  } else if (const auto* c = std::get_if<VCatDef>(&def.body)) {
    j["over"] = c->over;
    j["objects"] = c->objects;
    j["hom"] = json_ints(c->hom);
  } else if (const auto* f = std::get_if<VFunctorDef>(&def.body)) {
    j["from"] = f->from;
    j["to"] = f->to;
    j["map"] = f->map;
  } else if (const auto* m = std::get_if<ModuleDef>(&def.body)) {
    j["over"] = m->over;
    j["carrier"] = m->carrier;
    j["leq"] = J(std::vector<int>(m->leq.begin(), m->leq.end()));
    j["action"] = json_ints(m->action);
  } else if (const auto* mo = std::get_if<MonoidDef>(&def.body)) {
    j["over"] = mo->over;
    j["mult"] = json_ints(mo->mult);
    j["unit"] = mo->unit;
  } else if (const auto* e = std::get_if<EmbeddingDef>(&def.body)) {
    j["from"] = e->from;
    j["to"] = e->to;
    j["map"] = json_ints(e->map);
  } else if (const auto* a = std::get_if<ActedDef>(&def.body)) {
    j["over"] = a->over;
    j["on"] = a->on;
    j["action"] = json_ints(a->action);
  } else if (const auto* l = std::get_if<LVCatDef>(&def.body)) {
    j["over"] = l->over;
    j["objects"] = l->objects;
    j["max_len"] = l->max_len;
    j["representable"] = l->representable;
    j["hom"] = json_ints(l->hom);
  }
  return j;
}

}  // namespace

const std::string& Definition::name() const {
  return std::visit([](const auto& d) -> const std::string& { return d.name; },
                    body);
}

std::string_view Definition::kind() const {
  return kKinds[body.index()];
}

const Definition* SpecDocument::find(std::string_view name) const {
  for (const Definition& d : definitions)
    if (d.name() == name) return &d;
  return nullptr;
}

bool ParseResult::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) {
                        return d.severity == Severity::error;
                      });
}

ParseResult parse_qlab(std::string_view text, bool all_errors) {
  return Parser(text, all_errors).run();
}

std::string emit_qlab(const SpecDocument& doc) {
  std::string o = "format: 1\n";
  for (const Definition& def : doc.definitions) {
    o += "\n";
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, QuantaleDef>)
            emit_quantale(o, d);
          else if constexpr (std::is_same_v<T, VCatDef>)
            emit_vcategory(o, doc, d);
          else if constexpr (std::is_same_v<T, VFunctorDef>)
            emit_vfunctor(o, doc, d);
          else if constexpr (std::is_same_v<T, ModuleDef>)
            emit_module(o, doc, d);
          else if constexpr (std::is_same_v<T, MonoidDef>)
            emit_monoid(o, doc, d);
          else if constexpr (std::is_same_v<T, EmbeddingDef>)
            emit_embedding(o, doc, d);
          else if constexpr (std::is_same_v<T, ActedDef>)
            emit_acted(o, doc, d);
          else
            emit_lvcategory(o, doc, d);
        },
        def.body);
  }
  return o;
}

std::string emit_json(const SpecDocument& doc) {
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["definitions"] = nlohmann::ordered_json::array();
  for (const Definition& def : doc.definitions)
    j["definitions"].push_back(json_def(def));
  return j.dump(2) + "\n";
}

}  // namespace qlab
