#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

// Knobs shared by every subcommand; `echo` is the command line reproduced
// verbatim at the top of the report.
struct RunOptions {
  std::string echo;
  std::uint64_t seed = 0;
  int max_len = 3;
  int max_blocks = 3;
  bool exhaustive = false;
  bool verify_universal = false;
  bool roundtrip = false;
  bool json = false;
};

struct CheckLine {
  std::string id;
  std::string status;  // pass | fail | verified-to-truncation | resource-skipped
  std::string detail;  // witness, truncation parameters, or the guard hit
};

// Canonical run result: checks sorted by id, exit code derived from them.
// Exit: 2 input or parse error, 1 any failed check, 3 a guard skipped work
// and nothing failed, 0 otherwise.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> artifacts;  // name, text
  bool input_error_seen = false;

  void add(std::string id, std::string status, std::string detail = "");
  std::string verified() const;  // "full" unless any truncated line
  int exit_code() const;
  void finish();  // sort checks by id
  std::string text() const;
  std::string json_text() const;
};

// Every command takes document text, never a path; the caller owns IO.
RunReport cmd_check(const std::string& text, const std::string& name,
                    const RunOptions& opt);
RunReport cmd_derive(const std::string& text, const std::string& what,
                     const std::string& name, const RunOptions& opt);
RunReport cmd_equiv(const std::string& text, const std::string& route,
                    const std::string& name, const RunOptions& opt);
RunReport cmd_tensor(const std::string& text, const std::string& kind,
                     const std::vector<std::string>& names,
                     const RunOptions& opt);
RunReport cmd_monad(const std::string& text, const std::string& name,
                    const RunOptions& opt);
RunReport cmd_lv(const std::string& text, const std::string& name,
                 const RunOptions& opt);
RunReport cmd_suite(const std::string& scope, const RunOptions& opt);

}  // namespace qlab
