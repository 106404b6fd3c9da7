#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qlab/driver.hpp"

namespace {

// Reads the document for a command; "-" means stdin, "" means no document.
bool slurp(const std::string& path, std::string& out, std::string& err) {
  if (path.empty()) return true;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot read '" + path + "'";
    return false;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::string join_words(std::initializer_list<std::string> words) {
  std::string out;
  for (const std::string& w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out += " ";
    out += w;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quantale laboratory"};
  app.require_subcommand(1);

  qlab::RunOptions opt;
  app.add_flag("--json", opt.json, "emit the report as JSON");
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_option("--max-len", opt.max_len, "list length bound");
  app.add_option("--max-blocks", opt.max_blocks, "block count bound");
  app.add_flag("--exhaustive", opt.exhaustive, "prefer exhaustive sweeps");
  app.add_flag("--verify-universal", opt.verify_universal,
               "run the universal-property probes on tensor results");
  app.add_flag("--roundtrip", opt.roundtrip,
               "assert the equivalence returns to its starting point");

  std::string file, name, what, route, kind, scope = "all";
  std::vector<std::string> names;

  CLI::App* check = app.add_subcommand("check", "run the law checks in a file");
  check->add_option("file", file, "document path, - for stdin")->required();
  check->add_option("name", name, "restrict to one definition");
  check->fallthrough();

  CLI::App* derive = app.add_subcommand(
      "derive", "derive a structure: residuation, order, presheaf, sup, copower");
  derive->add_option("what", what, "derivation kind")->required();
  derive->add_option("name", name, "definition or builtin name")->required();
  derive->add_option("file", file, "document path, - for stdin");
  derive->fallthrough();

  CLI::App* equiv = app.add_subcommand(
      "equiv", "walk an equivalence: mod-vcat, monoid-quant, quant-acted, chain");
  equiv->add_option("route", route, "equivalence route")->required();
  equiv->add_option("name", name, "definition or builtin name")->required();
  equiv->add_option("file", file, "document path, - for stdin");
  equiv->fallthrough();

  CLI::App* tensor =
      app.add_subcommand("tensor", "build a tensor: sup, mod, alg");
  tensor->add_option("kind", kind, "tensor kind")->required();
  tensor->add_option("names", names, "two operand names")->expected(2);
  tensor->add_option("file", file, "document path, - for stdin");
  tensor->fallthrough();

  CLI::App* monad =
      app.add_subcommand("monad", "check the powerset monad over a quantale");
  monad->add_option("name", name, "quantale name")->required();
  monad->add_option("file", file, "document path, - for stdin");
  monad->fallthrough();

  CLI::App* lv = app.add_subcommand(
      "lv", "check list-enriched structure for a definition");
  lv->add_option("name", name, "definition or builtin name")->required();
  lv->add_option("file", file, "document path, - for stdin");
  lv->fallthrough();

  CLI::App* suite =
      app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("scope", scope, "all or a module name");
  suite->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::string text, io_err;
  if (!slurp(file, text, io_err)) {
    std::cerr << "error: " << io_err << "\n";
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  qlab::RunReport rep;
  if (check->parsed()) {
    opt.echo = join_words({"check", file, name});
    rep = qlab::cmd_check(text, name, opt);
  } else if (derive->parsed()) {
    opt.echo = join_words({"derive", what, name, file});
    rep = qlab::cmd_derive(text, what, name, opt);
  } else if (equiv->parsed()) {
    opt.echo = join_words({"equiv", route, name, file});
    rep = qlab::cmd_equiv(text, route, name, opt);
  } else if (tensor->parsed()) {
    opt.echo = join_words({"tensor", kind, names.size() > 0 ? names[0] : "",
                           names.size() > 1 ? names[1] : "", file});
    rep = qlab::cmd_tensor(text, kind, names, opt);
  } else if (monad->parsed()) {
    opt.echo = join_words({"monad", name, file});
    rep = qlab::cmd_monad(text, name, opt);
  } else if (lv->parsed()) {
    opt.echo = join_words({"lv", name, file});
    rep = qlab::cmd_lv(text, name, opt);
  } else {
    opt.echo = join_words({"suite", scope});
    rep = qlab::cmd_suite(scope, opt);
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  std::cout << (opt.json ? rep.json_text() : rep.text());
  std::cerr << "elapsed: " << elapsed.count() << " ms\n";
  return rep.exit_code();
}
