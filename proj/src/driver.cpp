#include "qlab/driver.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qlab/dsl.hpp"
#include "qlab/lv.hpp"
#include "qlab/monoids.hpp"

namespace qlab {

namespace {

constexpr const char* kByConstruction =
    "holds at every truncation by construction";

std::string first_violation(const LawReport& r) {
  const Violation& v = r.violations.front();
  std::string d = v.law + " [" + v.witness + "]";
  if (r.violations.size() > 1)
    d += " (+" + std::to_string(r.violations.size() - 1) + " more)";
  return d;
}

// Aligned name grid for table artifacts.
std::string grid(const std::vector<std::string>& rows,
                 const std::vector<std::string>& cols,
                 const std::function<std::string(std::size_t, std::size_t)>& cell) {
  std::vector<std::size_t> w(cols.size() + 1, 0);
  for (const std::string& r : rows) w[0] = std::max(w[0], r.size());
  std::vector<std::vector<std::string>> cells(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cells[i].resize(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      cells[i][j] = cell(i, j);
      w[j + 1] = std::max({w[j + 1], cols[j].size(), cells[i][j].size()});
    }
  }
  auto pad = [](const std::string& s, std::size_t n) {
    return s + std::string(n - s.size(), ' ');
  };
  auto trim_right = [](std::string& line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
  };
  std::string out;
  {
    std::string line = pad("", w[0]);
    for (std::size_t j = 0; j < cols.size(); ++j)
      line += "  " + pad(cols[j], w[j + 1]);
    trim_right(line);
    out += line + "\n";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line = pad(rows[i], w[0]);
    for (std::size_t j = 0; j < cols.size(); ++j)
      line += "  " + pad(cells[i][j], w[j + 1]);
    trim_right(line);
    out += line + "\n";
  }
  return out;
}

struct Registry {
  std::map<std::string, QuantalePtr> quantales;
  std::map<std::string, VCatPtr> vcats;
  std::map<std::string, VModPtr> modules;
  std::map<std::string, std::shared_ptr<const ModMonoid>> monoids;
  std::map<std::string, std::shared_ptr<const CentralEmbedding>> embeddings;
  std::map<std::string, std::shared_ptr<const ActedQuantale>> acteds;
  std::map<std::string, LVCatPtr> lvcats;
  std::set<std::string> failed;
};

void add_report(RunReport& rep, const std::string& id, const LawReport& r) {
  if (!r.ok())
    rep.add(id, "fail", first_violation(r));
  else
    rep.add(id, "pass");
  for (const std::string& n : r.notes) rep.notes.push_back(id + ": " + n);
}

// Materializes law-passing definitions in order; every definition gets one
// check line, and dependents of a failed definition fail by reference.
class Builder {
 public:
  Builder(RunReport& rep, const RunOptions& opt) : rep_(rep), opt_(opt) {}

  Registry build(const SpecDocument& doc) {
    for (const Definition& def : doc.definitions)
      std::visit([&](const auto& d) { this->handle(d); }, def.body);
    return std::move(reg_);
  }

 private:
  RunReport& rep_;
  const RunOptions& opt_;
  Registry reg_;

  // Base lookup shared by every enriched kind.
  QuantalePtr dep_quantale(const std::string& name, const std::string& id,
                           const std::string& def_name) {
    if (auto it = reg_.quantales.find(name); it != reg_.quantales.end())
      return it->second;
    if (QuantalePtr q = find_builtin(name)) return q;
    rep_.add(id, "fail", "depends on failed definition '" + name + "'");
    reg_.failed.insert(def_name);
    return nullptr;
  }

  template <typename T>
  const T* dep(const std::map<std::string, T>& table, const std::string& name,
               const std::string& id, const std::string& def_name) {
    if (auto it = table.find(name); it != table.end()) return &it->second;
    rep_.add(id, "fail", "depends on failed definition '" + name + "'");
    reg_.failed.insert(def_name);
    return nullptr;
  }

  void handle(const QuantaleDef& d) {
    const std::string id = "check.quantale." + d.name;
    const int n = int(d.elements.size());
    LawReport r = FiniteLattice::check(n, d.leq, opt_.exhaustive);
    if (r.ok()) r.merge(Quantale::check(FiniteLattice(n, d.leq), d.tensor, d.unit));
    add_report(rep_, id, r);
    if (!r.ok()) {
      reg_.failed.insert(d.name);
      return;
    }
    reg_.quantales[d.name] = std::make_shared<Quantale>(
        FiniteLattice(n, d.leq), d.tensor, d.unit, d.name, d.elements);
  }

  void handle(const VCatDef& d) {
    const std::string id = "check.vcategory." + d.name;
    QuantalePtr base = dep_quantale(d.over, id, d.name);
    if (!base) return;
    try {
      VMatrix hom(base, int(d.objects.size()), int(d.objects.size()), d.hom);
      LawReport r = VCategory::check(hom);
      add_report(rep_, id, r);
      if (!r.ok()) {
        reg_.failed.insert(d.name);
        return;
      }
      reg_.vcats[d.name] = std::make_shared<VCategory>(std::move(hom));
    } catch (const input_error& e) {
      rep_.add(id, "fail", e.what());
      reg_.failed.insert(d.name);
    }
  }

  void handle(const VFunctorDef& d) {
    const std::string id = "check.vfunctor." + d.name;
    const VCatPtr* src = dep(reg_.vcats, d.from, id, d.name);
    if (!src) return;
    const VCatPtr* tgt = dep(reg_.vcats, d.to, id, d.name);
    if (!tgt) return;
    LawReport r = VFunctor::check(**src, **tgt, d.map);
    add_report(rep_, id, r);
    if (!r.ok()) reg_.failed.insert(d.name);
  }

  void handle(const ModuleDef& d) {
    const std::string id = "check.module." + d.name;
    QuantalePtr base = dep_quantale(d.over, id, d.name);
    if (!base) return;
    const int n = int(d.carrier.size());
    LawReport r = FiniteLattice::check(n, d.leq, opt_.exhaustive);
    if (r.ok()) r.merge(VModule::check(*base, FiniteLattice(n, d.leq), d.action));
    add_report(rep_, id, r);
    if (!r.ok()) {
      reg_.failed.insert(d.name);
      return;
    }
    reg_.modules[d.name] = std::make_shared<VModule>(
        base, std::make_shared<FiniteLattice>(n, d.leq), d.action);
  }

  void handle(const MonoidDef& d) {
    const std::string id = "check.monoid." + d.name;
    const VModPtr* mod = dep(reg_.modules, d.over, id, d.name);
    if (!mod) return;
    LawReport r = ModMonoid::check(**mod, d.mult, d.unit);
    add_report(rep_, id, r);
    if (!r.ok()) {
      reg_.failed.insert(d.name);
      return;
    }
    reg_.monoids[d.name] = std::make_shared<ModMonoid>(*mod, d.mult, d.unit);
  }

  void handle(const EmbeddingDef& d) {
    const std::string id = "check.embedding." + d.name;
    QuantalePtr src = dep_quantale(d.from, id, d.name);
    if (!src) return;
    QuantalePtr tgt = dep_quantale(d.to, id, d.name);
    if (!tgt) return;
    LawReport r = CentralEmbedding::check(*src, *tgt, d.map);
    add_report(rep_, id, r);
    if (!r.ok()) {
      reg_.failed.insert(d.name);
      return;
    }
    reg_.embeddings[d.name] =
        std::make_shared<CentralEmbedding>(src, tgt, d.map);
  }

  void handle(const ActedDef& d) {
    const std::string id = "check.acted." + d.name;
    QuantalePtr base = dep_quantale(d.over, id, d.name);
    if (!base) return;
    QuantalePtr tgt = dep_quantale(d.on, id, d.name);
    if (!tgt) return;
    LawReport r = ActedQuantale::check(*base, *tgt, d.action);
    add_report(rep_, id, r);
    if (!r.ok()) {
      reg_.failed.insert(d.name);
      return;
    }
    reg_.acteds[d.name] = std::make_shared<ActedQuantale>(base, tgt, d.action);
  }

  void handle(const LVCatDef& d) {
    const std::string id = "check.lvcategory." + d.name;
    QuantalePtr base = dep_quantale(d.over, id, d.name);
    if (!base) return;
    try {
      TruncatedLVCategory c(base, int(d.objects.size()), d.max_len, d.hom,
                            d.representable);
      LawReport r = check_lv_category(c, opt_.max_blocks);
      for (const std::string& n : r.notes) rep_.notes.push_back(id + ": " + n);
      if (!r.ok()) {
        rep_.add(id, "fail", first_violation(r));
        reg_.failed.insert(d.name);
        return;
      }
      if (d.representable)
        rep_.add(id, "pass", kByConstruction);
      else
        rep_.add(id, "verified-to-truncation",
                 "max_len=" + std::to_string(d.max_len) +
                     ", max_blocks=" + std::to_string(opt_.max_blocks));
      reg_.lvcats[d.name] = std::make_shared<TruncatedLVCategory>(std::move(c));
    } catch (const input_error& e) {
      rep_.add(id, "fail", e.what());
      reg_.failed.insert(d.name);
    } catch (const resource_error& e) {
      rep_.add(id, "resource-skipped", e.what());
      reg_.failed.insert(d.name);
    }
  }
};

// Parses `text` into `doc`, reporting diagnostics. Empty text means the
// command runs against the builtin catalog only.
bool load_doc(const std::string& text, RunReport& rep, SpecDocument& doc) {
  if (text.empty()) return true;
  ParseResult r = parse_qlab(text);
  for (const Diagnostic& d : r.diagnostics) {
    const std::string where =
        std::to_string(d.line) + ":" + std::to_string(d.col);
    if (d.severity == Severity::error) {
      rep.add("parse", "fail", where + ": " + d.message);
      rep.input_error_seen = true;
    } else {
      rep.notes.push_back("parse warning " + where + ": " + d.message);
    }
  }
  for (const std::string& n : r.notes) rep.notes.push_back("parse: " + n);
  if (!r.ok()) return false;
  doc = std::move(r.doc);
  return true;
}

void input_fail(RunReport& rep, const std::string& message) {
  rep.add("input", "fail", message);
  rep.input_error_seen = true;
}

QuantalePtr find_quantale(const Registry& reg, const std::string& name) {
  if (auto it = reg.quantales.find(name); it != reg.quantales.end())
    return it->second;
  return find_builtin(name);
}

// Named category, or a quantale enriched in itself.
VCatPtr find_vcat(const Registry& reg, const std::string& name) {
  if (auto it = reg.vcats.find(name); it != reg.vcats.end()) return it->second;
  if (QuantalePtr q = find_quantale(reg, name))
    return std::make_shared<VCategory>(self_enriched(q));
  return nullptr;
}

// Named module, or a quantale acting on itself.
VModPtr find_module(const Registry& reg, const std::string& name) {
  if (auto it = reg.modules.find(name); it != reg.modules.end())
    return it->second;
  if (QuantalePtr q = find_quantale(reg, name))
    return std::make_shared<VModule>(self_module(q));
  return nullptr;
}

std::shared_ptr<const ModMonoid> find_monoid(const Registry& reg,
                                             const std::string& name) {
  if (auto it = reg.monoids.find(name); it != reg.monoids.end())
    return it->second;
  if (QuantalePtr q = find_quantale(reg, name))
    return std::make_shared<ModMonoid>(
        std::make_shared<VModule>(self_module(q)), q->tensor_table(),
        q->unit());
  return nullptr;
}

std::shared_ptr<const CentralEmbedding> find_embedding(
    const Registry& reg, const std::string& name) {
  if (auto it = reg.embeddings.find(name); it != reg.embeddings.end())
    return it->second;
  if (QuantalePtr q = find_quantale(reg, name)) {
    std::vector<Elem> id_map(std::size_t(q->size()));
    for (int i = 0; i < q->size(); ++i) id_map[std::size_t(i)] = Elem(i);
    return std::make_shared<CentralEmbedding>(q, q, std::move(id_map));
  }
  return nullptr;
}

std::shared_ptr<const ActedQuantale> find_acted(const Registry& reg,
                                                const std::string& name) {
  if (auto it = reg.acteds.find(name); it != reg.acteds.end())
    return it->second;
  if (QuantalePtr q = find_quantale(reg, name))
    return std::make_shared<ActedQuantale>(q, q, q->tensor_table());
  return nullptr;
}

// Underlying suplattice of a quantale or of a module carrier.
LatticePtr find_lattice(const Registry& reg, const std::string& name) {
  if (auto it = reg.modules.find(name); it != reg.modules.end())
    return it->second->carrier();
  if (QuantalePtr q = find_quantale(reg, name))
    return std::make_shared<FiniteLattice>(q->lattice());
  return nullptr;
}

std::string object_name(int i) { return "x" + std::to_string(i); }

std::vector<std::string> object_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(object_name(i));
  return out;
}

std::string show_table(const std::vector<Elem>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace

void RunReport::add(std::string id, std::string status, std::string detail) {
  checks.push_back({std::move(id), std::move(status), std::move(detail)});
}

std::string RunReport::verified() const {
  for (const CheckLine& c : checks)
    if (c.status == "verified-to-truncation") return "truncated";
  return "full";
}

int RunReport::exit_code() const {
  if (input_error_seen) return 2;
  bool any_fail = false, any_skip = false;
  for (const CheckLine& c : checks) {
    if (c.status == "fail") any_fail = true;
    if (c.status == "resource-skipped") any_skip = true;
  }
  if (any_fail) return 1;
  if (any_skip) return 3;
  return 0;
}

void RunReport::finish() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckLine& a, const CheckLine& b) {
                     return a.id < b.id;
                   });
}

std::string RunReport::text() const {
  std::string out = "command: " + command + "\n";
  out += "seed: " + std::to_string(seed) + "\n";
  for (const CheckLine& c : checks) {
    out += c.id + ": " + c.status;
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  for (const std::string& n : notes) out += "note: " + n + "\n";
  out += "verified: " + verified() + "\n";
  for (const auto& [name, body] : artifacts) {
    out += "--- artifact: " + name + " ---\n";
    out += body;
    if (!body.empty() && body.back() != '\n') out += "\n";
  }
  out += "exit: " + std::to_string(exit_code()) + "\n";
  return out;
}

std::string RunReport::json_text() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["seed"] = seed;
  j["verified"] = verified();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckLine& c : checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["status"] = c.status;
    jc["detail"] = c.detail;
    j["checks"].push_back(std::move(jc));
  }
  j["notes"] = notes;
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& [name, body] : artifacts) {
    nlohmann::ordered_json ja;
    ja["name"] = name;
    ja["text"] = body;
    j["artifacts"].push_back(std::move(ja));
  }
  j["exit"] = exit_code();
  return j.dump(2) + "\n";
}

RunReport cmd_check(const std::string& text, const std::string& name,
                    const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  if (text.empty()) {
    input_fail(rep, "no document provided");
    rep.finish();
    return rep;
  }
  SpecDocument doc;
  if (load_doc(text, rep, doc)) {
    Builder b(rep, opt);
    Registry reg = b.build(doc);
    if (!name.empty()) {
      if (!doc.find(name)) {
        input_fail(rep, "definition '" + name + "' not found");
      } else {
        const std::string suffix = "." + name;
        std::erase_if(rep.checks, [&](const CheckLine& c) {
          return c.id.size() < suffix.size() ||
                 c.id.compare(c.id.size() - suffix.size(), suffix.size(),
                              suffix) != 0;
        });
      }
    }
  }
  rep.finish();
  return rep;
}

RunReport cmd_derive(const std::string& text, const std::string& what,
                     const std::string& name, const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  SpecDocument doc;
  if (!load_doc(text, rep, doc)) {
    rep.finish();
    return rep;
  }
  Builder b(rep, opt);
  Registry reg = b.build(doc);
  const std::string id = "derive." + what + "." + name;
  try {
    if (what == "residuation") {
      QuantalePtr q = find_quantale(reg, name);
      if (!q) {
        input_fail(rep, "unknown quantale '" + name + "'");
      } else {
        LawReport r;
        for (Elem v = 0; v < q->size(); ++v)
          for (Elem w = 0; w < q->size(); ++w)
            for (Elem u = 0; u < q->size(); ++u)
              if (q->leq(q->tensor(v, w), u) != q->leq(w, q->hom(v, u))) {
                r.fail("residuation.adjoint", show_triple(v, w, u));
              }
        add_report(rep, id, r);
        rep.artifacts.emplace_back(
            "residuation " + name,
            grid(q->elem_names(), q->elem_names(), [&](std::size_t i, std::size_t j) {
              return q->elem_name(q->hom(Elem(i), Elem(j)));
            }));
      }
    } else if (what == "order") {
      VCatPtr c = find_vcat(reg, name);
      if (!c) {
        input_fail(rep, "unknown category '" + name + "'");
      } else {
        LawReport r;
        r.note(is_separated(*c) ? "the underlying order is antisymmetric"
                                : "the underlying order is not antisymmetric");
        add_report(rep, id, r);
        const auto names = object_names(c->size());
        rep.artifacts.emplace_back(
            "order " + name,
            grid(names, names, [&](std::size_t i, std::size_t j) {
              return c->order_leq(Elem(i), Elem(j)) ? "1" : "0";
            }));
      }
    } else if (what == "presheaf") {
      VCatPtr c = find_vcat(reg, name);
      if (!c) {
        input_fail(rep, "unknown category '" + name + "'");
      } else {
        PresheafCategory dx = presheaf_category(c);
        add_report(rep, id, yoneda_check(dx));
        std::string body = "presheaves: " +
                           std::to_string(dx.carrier.size()) + "\n";
        for (std::size_t g = 0; g < dx.carrier.size(); ++g)
          body += "g" + std::to_string(g) + " = " + show_table(dx.carrier[g]) +
                  "\n";
        for (std::size_t x = 0; x < dx.yoneda.size(); ++x)
          body += "yoneda " + object_name(int(x)) + " -> g" +
                  std::to_string(dx.yoneda[x]) + "\n";
        rep.artifacts.emplace_back("presheaf " + name, std::move(body));
      }
    } else if (what == "sup") {
      VCatPtr c = find_vcat(reg, name);
      if (!c) {
        input_fail(rep, "unknown category '" + name + "'");
      } else {
        PresheafCategory dx = presheaf_category(c);
        SupResult s = find_sup(dx);
        if (!s.cocomplete) {
          rep.add(id, "fail",
                  "cocomplete [no sup for presheaf " + show_table(*s.witness) +
                      "]");
        } else {
          rep.add(id, "pass");
          std::string body;
          for (std::size_t g = 0; g < s.sup.size(); ++g)
            body += "sup g" + std::to_string(g) + " = " +
                    object_name(s.sup[g]) + "\n";
          rep.artifacts.emplace_back("sup " + name, std::move(body));
        }
      }
    } else if (what == "copower") {
      VCatPtr c = find_vcat(reg, name);
      if (!c) {
        input_fail(rep, "unknown category '" + name + "'");
      } else {
        VModule m = vcat_to_module(*c);
        RoundtripResult rt = roundtrip_vcat(*c);
        if (rt.ok)
          rep.add(id, "pass");
        else
          rep.add(id, "fail", "roundtrip [" + rt.diff + "]");
        const auto rows = m.base()->elem_names();
        const auto cols = object_names(m.size());
        rep.artifacts.emplace_back(
            "copower " + name,
            grid(rows, cols, [&](std::size_t v, std::size_t x) {
              return object_name(m.act(Elem(v), Elem(x)));
            }));
      }
    } else {
      input_fail(rep, "unknown derivation '" + what + "'");
    }
  } catch (const resource_error& e) {
    rep.add(id, "resource-skipped", e.what());
  } catch (const input_error& e) {
    input_fail(rep, e.what());
  }
  rep.finish();
  return rep;
}

RunReport cmd_equiv(const std::string& text, const std::string& route,
                    const std::string& name, const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  SpecDocument doc;
  if (!load_doc(text, rep, doc)) {
    rep.finish();
    return rep;
  }
  Builder b(rep, opt);
  Registry reg = b.build(doc);
  const std::string id = "equiv." + route + "." + name;
  try {
    if (route == "mod-vcat") {
      VModPtr m = find_module(reg, name);
      if (!m) {
        input_fail(rep, "unknown module '" + name + "'");
      } else {
        VCategory x = module_to_vcat(*m);
        add_report(rep, id, VCategory::check(x.hom()));
        const auto names = object_names(x.size());
        rep.artifacts.emplace_back(
            "mod-vcat " + name,
            grid(names, names, [&](std::size_t i, std::size_t j) {
              return m->base()->elem_name(x.at(Elem(i), Elem(j)));
            }));
        if (opt.roundtrip) {
          RoundtripResult rt = roundtrip_module(*m);
          rep.add(id + ".roundtrip", rt.ok ? "pass" : "fail", rt.diff);
        }
      }
    } else if (route == "monoid-quant") {
      std::shared_ptr<const ModMonoid> m = find_monoid(reg, name);
      if (!m) {
        input_fail(rep, "unknown monoid '" + name + "'");
      } else {
        CentralEmbedding f = monoid_to_central(*m);
        add_report(rep, id,
                   CentralEmbedding::check(*f.source, *f.target, f.map));
        rep.artifacts.emplace_back(
            "monoid-quant " + name,
            grid(f.target->elem_names(), f.target->elem_names(),
                 [&](std::size_t i, std::size_t j) {
                   return f.target->elem_name(f.target->tensor(Elem(i), Elem(j)));
                 }));
        if (opt.roundtrip) {
          const ModMonoid back = central_to_monoid(f);
          rep.add(id + ".roundtrip", back == *m ? "pass" : "fail",
                  back == *m ? "" : "monoid differs after the round trip");
        }
      }
    } else if (route == "quant-acted") {
      std::shared_ptr<const CentralEmbedding> f = find_embedding(reg, name);
      if (!f) {
        input_fail(rep, "unknown embedding '" + name + "'");
      } else {
        ActedQuantale a = central_to_acted(*f);
        add_report(rep, id,
                   ActedQuantale::check(*a.base, *a.target, a.rho));
        rep.artifacts.emplace_back(
            "quant-acted " + name,
            grid(a.base->elem_names(), a.target->elem_names(),
                 [&](std::size_t v, std::size_t q) {
                   return a.target->elem_name(a.act(Elem(v), Elem(q)));
                 }));
        if (opt.roundtrip) {
          const CentralEmbedding back = acted_to_central(a);
          rep.add(id + ".roundtrip", back == *f ? "pass" : "fail",
                  back == *f ? "" : "embedding differs after the round trip");
        }
      }
    } else if (route == "chain") {
      std::shared_ptr<const ActedQuantale> a = find_acted(reg, name);
      if (!a) {
        input_fail(rep, "unknown action '" + name + "'");
      } else {
        EquivChain ch = equivalence_chain(*a);
        add_report(rep, id, ch.report);
        std::string body;
        body += "acted: base " + ch.acted.base->name() + " on " +
                ch.acted.target->name() + "\n";
        body += "central: image " + show_table(ch.central.map) + "\n";
        body += "monoid: carrier size " +
                std::to_string(ch.monoid.module->size()) + ", unit " +
                std::to_string(ch.monoid.unit) + "\n";
        body += "algebra: table size " +
                std::to_string(ch.algebra.algebra.table_size()) + "\n";
        rep.artifacts.emplace_back("chain " + name, std::move(body));
        if (opt.roundtrip)
          rep.add(id + ".roundtrip", ch.acted == *a ? "pass" : "fail",
                  ch.acted == *a ? "" : "action differs after the round trip");
      }
    } else {
      input_fail(rep, "unknown route '" + route + "'");
    }
  } catch (const resource_error& e) {
    rep.add(id, "resource-skipped", e.what());
  } catch (const input_error& e) {
    input_fail(rep, e.what());
  }
  rep.finish();
  return rep;
}

RunReport cmd_tensor(const std::string& text, const std::string& kind,
                     const std::vector<std::string>& names,
                     const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  SpecDocument doc;
  if (!load_doc(text, rep, doc)) {
    rep.finish();
    return rep;
  }
  Builder b(rep, opt);
  Registry reg = b.build(doc);
  if (names.size() != 2) {
    input_fail(rep, "tensor needs exactly two names");
    rep.finish();
    return rep;
  }
  const std::string id = "tensor." + kind + "." + names[0] + "." + names[1];
  try {
    if (kind == "sup") {
      LatticePtr x = find_lattice(reg, names[0]);
      LatticePtr y = find_lattice(reg, names[1]);
      if (!x || !y) {
        input_fail(rep, "unknown lattice '" + (x ? names[1] : names[0]) + "'");
      } else {
        TensorSup t(x, y);
        rep.add(id, "pass",
                "carrier size " + std::to_string(t.lattice().size()));
        const auto rows = object_names(x->size());
        const auto cols = object_names(y->size());
        rep.artifacts.emplace_back(
            "tensor sup " + names[0] + " " + names[1],
            grid(rows, cols, [&](std::size_t i, std::size_t j) {
              return std::to_string(t.pi(Elem(i), Elem(j)));
            }));
        if (opt.verify_universal) {
          add_report(rep, id + ".universal.left",
                     verify_tensor_universal(t, x));
          add_report(rep, id + ".universal.right",
                     verify_tensor_universal(t, y));
        }
      }
    } else if (kind == "mod") {
      VModPtr m = find_module(reg, names[0]);
      VModPtr n = find_module(reg, names[1]);
      if (!m || !n) {
        input_fail(rep, "unknown module '" + (m ? names[1] : names[0]) + "'");
      } else if (!(*m->base() == *n->base())) {
        input_fail(rep, "modules live over different bases");
      } else {
        ModTensor t = tensor_mod(*m, *n);
        rep.add(id, "pass",
                "carrier size " + std::to_string(t.module->size()));
        const auto rows = object_names(m->size());
        const auto cols = object_names(n->size());
        rep.artifacts.emplace_back(
            "tensor mod " + names[0] + " " + names[1],
            grid(rows, cols, [&](std::size_t i, std::size_t j) {
              return std::to_string(t.pi(Elem(i), Elem(j)));
            }));
        if (*m == self_module(m->base())) {
          const std::vector<Elem> unitor = left_unitor(t, *n);
          rep.add(id + ".unitor", "pass",
                  "iso onto the right factor " + show_table(unitor));
        }
        if (opt.verify_universal)
          add_report(rep, id + ".universal",
                     verify_tensor_mod_universal(t, *m, *n, *n));
      }
    } else if (kind == "alg") {
      VModPtr m = find_module(reg, names[0]);
      VModPtr n = find_module(reg, names[1]);
      if (!m || !n) {
        input_fail(rep, "unknown module '" + (m ? names[1] : names[0]) + "'");
      } else if (!(*m->base() == *n->base())) {
        input_fail(rep, "modules live over different bases");
      } else {
        PVAlgebra a = module_to_algebra(*m);
        PVAlgebra bb = module_to_algebra(*n);
        AlgTensor t = tensor_alg(a, bb);
        rep.add(id, "pass",
                "carrier size " + std::to_string(t.algebra.size()));
        const auto rows = object_names(m->size());
        const auto cols = object_names(n->size());
        rep.artifacts.emplace_back(
            "tensor alg " + names[0] + " " + names[1],
            grid(rows, cols, [&](std::size_t i, std::size_t j) {
              return std::to_string(
                  t.pi[std::size_t(i) * std::size_t(n->size()) + j]);
            }));
        if (opt.verify_universal)
          add_report(rep, id + ".universal", verify_tensor_alg(a, bb));
      }
    } else {
      input_fail(rep, "unknown tensor kind '" + kind + "'");
    }
  } catch (const resource_error& e) {
    rep.add(id, "resource-skipped", e.what());
  } catch (const input_error& e) {
    input_fail(rep, e.what());
  }
  rep.finish();
  return rep;
}

RunReport cmd_monad(const std::string& text, const std::string& name,
                    const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  SpecDocument doc;
  if (!load_doc(text, rep, doc)) {
    rep.finish();
    return rep;
  }
  Builder b(rep, opt);
  Registry reg = b.build(doc);
  QuantalePtr q = find_quantale(reg, name);
  if (!q) {
    input_fail(rep, "unknown quantale '" + name + "'");
    rep.finish();
    return rep;
  }
  std::vector<int> sizes = {1, 2};
  if (q->size() == 2) sizes.push_back(3);
  for (int n : sizes) {
    const std::string id = "monad.laws." + name + ".n" + std::to_string(n);
    try {
      add_report(rep, id, check_pv_monad(q, n, opt.exhaustive));
    } catch (const resource_error& e) {
      rep.add(id, "resource-skipped", e.what());
    } catch (const input_error& e) {
      input_fail(rep, e.what());
    }
  }
  {
    const std::string id = "monad.strength." + name + ".2x2";
    try {
      add_report(rep, id, strength_suite(q, 2, 2));
    } catch (const resource_error& e) {
      rep.add(id, "resource-skipped", e.what());
    } catch (const input_error& e) {
      input_fail(rep, e.what());
    }
  }
  try {
    std::string body = "unit ranks at n=2: " + show_table(pv_unit_ranks(*q, 2));
    if (q->size() == 2)
      body += "\nmult ranks at n=1: " + show_table(pv_mult_ranks(*q, 1));
    rep.artifacts.emplace_back("monad " + name, std::move(body));
  } catch (const resource_error&) {
    // Artifacts are best-effort; the law lines above already carry status.
  }
  rep.finish();
  return rep;
}

RunReport cmd_lv(const std::string& text, const std::string& name,
                 const RunOptions& opt) {
  RunReport rep;
  rep.command = opt.echo;
  rep.seed = opt.seed;
  SpecDocument doc;
  if (!load_doc(text, rep, doc)) {
    rep.finish();
    return rep;
  }
  Builder b(rep, opt);
  Registry reg = b.build(doc);
  try {
    if (auto it = reg.lvcats.find(name); it != reg.lvcats.end()) {
      const LVCatPtr& c = it->second;
      const std::string id = "lv.yoneda." + name;
      try {
        LawReport r = lv_yoneda_check(c);
        for (const std::string& n : r.notes) rep.notes.push_back(id + ": " + n);
        if (!r.ok())
          rep.add(id, "fail", first_violation(r));
        else
          rep.add(id, "verified-to-truncation",
                  "max_len=" + std::to_string(c->max_len()));
      } catch (const resource_error& e) {
        rep.add(id, "resource-skipped", e.what());
      }
    } else if (reg.quantales.count(name) || find_builtin(name) ||
               reg.acteds.count(name)) {
      std::shared_ptr<const ActedQuantale> a = find_acted(reg, name);
      const std::string id = "lv.station." + name;
      try {
        InjStation st = injective_station(*a, opt.max_len);
        for (const std::string& n : st.certificate.notes)
          rep.notes.push_back(id + ": " + n);
        if (!st.certificate.ok())
          rep.add(id, "fail", first_violation(st.certificate));
        else
          rep.add(id, "pass", kByConstruction);
        rep.artifacts.emplace_back(
            "lv station " + name,
            "carrier " + std::to_string(st.category.carrier()) +
                ", lists " + std::to_string(st.category.lists.count()) +
                ", max_len " + std::to_string(st.category.max_len()) + "\n");
      } catch (const resource_error& e) {
        rep.add(id, "resource-skipped", e.what());
      }
      if (QuantalePtr q = find_quantale(reg, name)) {
        const std::string cid = "lv.compare." + name;
        try {
          LawReport r = compare_pl_pvl(q, 2, opt.max_len, 200, opt.seed);
          for (const std::string& n : r.notes)
            rep.notes.push_back(cid + ": " + n);
          if (!r.ok())
            rep.add(cid, "fail", first_violation(r));
          else
            rep.add(cid, "verified-to-truncation",
                    "carrier=2, max_len=" + std::to_string(opt.max_len));
        } catch (const resource_error& e) {
          rep.add(cid, "resource-skipped", e.what());
        }
      }
    } else {
      input_fail(rep, "unknown definition '" + name + "'");
    }
  } catch (const input_error& e) {
    input_fail(rep, e.what());
  }
  rep.finish();
  return rep;
}

}  // namespace qlab
