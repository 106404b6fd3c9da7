#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlab/common.hpp"

namespace qlab {

// Definition bodies hold resolved index-level tables plus the element names
// they were written with; all law checking happens downstream.

struct QuantaleDef {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::uint8_t> leq;  // n*n reflexive-transitive closure
  std::vector<Elem> tensor;       // n*n row-major
  Elem unit = 0;
  bool operator==(const QuantaleDef&) const = default;
};

struct VCatDef {
  std::string name, over;
  std::vector<std::string> objects;
  std::vector<Elem> hom;  // n*n, defaults resolved
  bool operator==(const VCatDef&) const = default;
};

struct VFunctorDef {
  std::string name, from, to;
  std::vector<int> map;
  bool operator==(const VFunctorDef&) const = default;
};

struct ModuleDef {
  std::string name, over;
  std::vector<std::string> carrier;
  std::vector<std::uint8_t> leq;
  std::vector<Elem> action;  // |over| x |carrier|
  bool operator==(const ModuleDef&) const = default;
};

struct MonoidDef {
  std::string name, over;  // over names a module definition
  std::vector<Elem> mult;
  Elem unit = 0;
  bool operator==(const MonoidDef&) const = default;
};

struct EmbeddingDef {
  std::string name, from, to;
  std::vector<Elem> map;
  bool operator==(const EmbeddingDef&) const = default;
};

struct ActedDef {
  std::string name, over, on;
  std::vector<Elem> action;  // |over| x |on|
  bool operator==(const ActedDef&) const = default;
};

struct LVCatDef {
  std::string name, over;
  std::vector<std::string> objects;
  int max_len = 0;
  bool representable = false;
  std::vector<Elem> hom;  // list count x objects, defaults resolved
  bool operator==(const LVCatDef&) const = default;
};

using DefBody = std::variant<QuantaleDef, VCatDef, VFunctorDef, ModuleDef,
                             MonoidDef, EmbeddingDef, ActedDef, LVCatDef>;

struct Definition {
  DefBody body;
  const std::string& name() const;
  std::string_view kind() const;
  bool operator==(const Definition&) const = default;
};

struct SpecDocument {
  std::vector<Definition> definitions;
  const Definition* find(std::string_view name) const;
  bool operator==(const SpecDocument&) const = default;
};

enum class Severity { error, warning };

// Positions are 1-based; the span end is exclusive on end_col and always
// stays inside the source (end-of-line is length + 1).
struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  int line = 1, col = 1;
  int end_line = 1, end_col = 2;
};

struct ParseResult {
  SpecDocument doc;  // definitions that parsed cleanly
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> notes;  // defaulting and normalization records
  bool ok() const;                 // no error-severity diagnostics
};

// all_errors=false stops at the first error; otherwise the parser resyncs at
// the next top-level block and keeps going.
ParseResult parse_qlab(std::string_view text, bool all_errors = true);

std::string emit_qlab(const SpecDocument& doc);
std::string emit_json(const SpecDocument& doc);

}  // namespace qlab
