#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevlab/folang.hpp"

namespace chevlab {

struct Scenario {
  std::string name;
  std::vector<std::string> checks;
  std::string system = "A2";
  Lattice lattice = Lattice::Adjoint;
  std::string ring = "Z/2";
  std::vector<std::string> rings;  // check "iso"
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t normal_bound = kNormalSubgroupBound;
  std::optional<long> m;  // default: center exponent of the lattice
  std::optional<int> n;   // default: 2
  int k = 1;              // check "aut"
  std::size_t samples = 64;
  bool require_good = false;
  bool expect_fail = false;  // negative control: a detected failure passes
  std::string twist;         // "" or "frobenius"
  std::string fault;         // "" or "inject"
  std::optional<std::size_t> expected_order;

  long m_or_default() const;
  int n_or_default() const { return n.value_or(2); }
};

struct CheckRecord {
  std::string check;
  std::string scenario;
  Verdict verdict = Verdict::Unknown;
  std::string witness;
  double millis = 0;
  std::map<std::string, std::string> details;
};

struct Report {
  std::vector<CheckRecord> records;
  std::size_t count(Verdict v) const;
};

inline constexpr int kReportSchema = 1;

// Individual checks. Each returns one record; budgets give unknown.
CheckRecord check_closure(const Scenario& s);
CheckRecord check_steinberg(const Scenario& s);  // fault: flips one structure constant in the expectation
CheckRecord check_normal_structure(const Scenario& s);  // fault: adds a non-normal subgroup
CheckRecord check_iso_invariants(const Scenario& s);
CheckRecord check_tcap(const Scenario& s);
CheckRecord check_product_decomposition(const Scenario& s);
CheckRecord check_master(const Scenario& s);
CheckRecord check_master_bg(const Scenario& s);
CheckRecord check_biinterp(const Scenario& s);  // fault: drops one element from the predicate
CheckRecord aut_stabilizer_growth(const Scenario& s);

// |G| from classical order formulas (A and C types over Z/p^k and GF(q)),
// independent of any enumeration; nullopt when no formula applies.
std::optional<std::size_t> classical_order(const std::string& system, Lattice lattice, const FiniteRing& r);

// Names accepted in `checks`.
const std::vector<std::string>& check_names();
CheckRecord run_check(const std::string& name, const Scenario& s);
// Scenarios run in parallel; records are ordered by scenario then check.
Report run_suite(const std::vector<Scenario>& scenarios);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Config grammar: '#' comments; `[scenario NAME]` opens a section; `key =
// value` lines set its fields (checks, system, lattice, ring, rings, m, n, k,
// samples, closure_cap, normal_bound, require_good, expect, twist, fault,
// order). Lists are comma separated, except `rings`, which uses ';' since
// ring specs contain commas.
std::vector<Scenario> parse_config(const std::string& text);
std::vector<Scenario> load_config(const std::string& path);

// One JSON object per record; millis omitted when with_timing is false.
std::string to_jsonl(const Report& r, bool with_timing = true);
std::string summary_table(const Report& r);

}  // namespace chevlab
