#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlab {

// Element of a finite carrier, by index.
using Elem = int;

// Malformed or ill-typed input (bad table, unknown name, wrong base, ...).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented enumeration guard was exceeded; the check was skipped, not failed.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bug sentinel: a postcondition the theory guarantees did not hold.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// One failed law instance. `witness` names the offending cells/elements.
struct Violation {
  std::string law;
  std::string witness;
};

struct LawReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;  // normalization/truncation remarks, never failures
  bool ok() const { return violations.empty(); }
  void fail(std::string law, std::string witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }
  void note(std::string n) { notes.push_back(std::move(n)); }
  void merge(const LawReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
  // Throws input_error with the first violation; use where validity is a precondition.
  void require(const std::string& what) const {
    if (!ok())
      throw input_error(what + ": " + violations.front().law + " [" +
                        violations.front().witness + "]");
  }
};

// Enumeration budget for carrier-sized sweeps, overridable via QLAB_GUARD_CELLS.
std::int64_t guard_cells();

// Deterministic RNG; every sampled check derives its stream from an explicit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, n).
  int below(int n) { return int(eng_() % std::uint64_t(n)); }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Mixed-radix codec for tables X -> {0..base-1}: rank 0 is the all-zero table,
// digit i has weight base^i. Canonical enumeration order everywhere.
struct PowIndex {
  int base = 0;
  int exp = 0;
  std::int64_t count = 0;

  PowIndex(int base_, int exp_) : base(base_), exp(exp_), count(1) {
    for (int i = 0; i < exp; ++i) {
      if (count > (std::int64_t(1) << 62) / (base ? base : 1))
        throw resource_error("table space overflow: " + std::to_string(base) + "^" +
                             std::to_string(exp));
      count *= base;
    }
  }

  std::int64_t rank(std::span<const Elem> digits) const {
    std::int64_t r = 0;
    for (int i = exp - 1; i >= 0; --i) r = r * base + digits[i];
    return r;
  }

  std::vector<Elem> unrank(std::int64_t r) const {
    std::vector<Elem> d(exp);
    for (int i = 0; i < exp; ++i) {
      d[i] = Elem(r % base);
      r /= base;
    }
    return d;
  }
};

inline std::string show_pair(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}
inline std::string show_triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
         ")";
}

}  // namespace qlab
