#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chevlab/groupkit.hpp"

namespace chevlab {

// Formula grammar (whitespace ignored):
//   formula := quant | implies
//   quant   := ('E' | 'A') ident '.' formula
//   implies := or ('->' formula)?            right associative
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | '(' formula ')' | quant | ident '(' term (',' term)* ')'
//            | term '=' term
//   term    := post ('*' post)*
//   post    := prim ('^' '-'? int)*          '^-1' is the inverse
//   prim    := 'e' | ident | '(' term ')' | '[' term ',' term ']'
// Identifiers are resolved at bind time: bound or free variables first, then
// the structure's constants.
class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Term {
  enum class Kind { Name, Identity, Mul, Inv, Pow, Comm };
  Kind kind = Kind::Identity;
  std::string name;
  long exponent = 0;
  std::vector<Term> args;
  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { Eq, Pred, Not, And, Or, Implies, Exists, Forall };
  Kind kind = Kind::Eq;
  std::string name;  // predicate name or bound variable
  std::vector<Term> terms;
  std::vector<Formula> subs;
  bool operator==(const Formula&) const = default;
};

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
std::string print(const Term& t);
std::string print(const Formula& f);
// Names occurring free (not bound by a quantifier), in order of first use.
std::vector<std::string> free_names(const Formula& f);
// One formula per line; blank lines and '#' comments skipped.
std::vector<std::string> read_corpus(const std::string& path);

struct Relation {
  int arity = 1;
  std::vector<std::vector<std::size_t>> tuples;  // sorted, unique
  std::vector<bool> mask;                        // arity 1 only

  static Relation unary(std::vector<bool> mask);
  static Relation from_tuples(int arity, std::vector<std::vector<std::size_t>> tuples);
  bool contains(const std::size_t* args) const;
  std::size_t size() const;
};

struct Structure {
  GroupPtr group;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, Relation> predicates;

  explicit Structure(GroupPtr g) : group(std::move(g)) {}
  void add_constant(const std::string& name, std::size_t x);
  void add_predicate(const std::string& name, Relation r);
};

constexpr std::size_t kDefaultMemoBudget = std::size_t(1) << 24;

// A formula bound to a structure with an ordered list of free variables.
// eval() uses memoized subformula extents (tables over the free variables of
// each subformula, computed bottom-up with OpenMP when the table fits the
// budget); eval_reference() is the plain recursive Tarskian evaluator.
class Evaluator {
 public:
  Evaluator(const Structure& s, const Formula& f, std::vector<std::string> free_vars,
            std::size_t memo_budget = kDefaultMemoBudget);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;

  bool eval(const std::vector<std::size_t>& assignment) const;
  bool eval_reference(const std::vector<std::size_t>& assignment) const;
  // All satisfying tuples in lexicographic order; throws BudgetExceeded past cap.
  std::vector<std::vector<std::size_t>> solutions(std::size_t cap = 1'000'000) const;
  std::vector<std::vector<std::size_t>> solutions_reference(std::size_t cap = 1'000'000) const;
  std::size_t memoized_nodes() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

bool eval(const Structure& s, const Formula& f, const std::map<std::string, std::size_t>& assignment = {});
std::size_t eval_term(const Structure& s, const Term& t, const std::map<std::string, std::size_t>& assignment = {});
std::vector<std::vector<std::size_t>> solution_set(const Structure& s, const Formula& f,
                                                   const std::vector<std::string>& vars);

// Construction tags: which element of G (or of its central quotient) is the
// image of x_b(t). A ring automorphism `twist` is applied to parameters.
struct Tagging {
  GroupPtr group;
  MatrixGroupPtr matrices;
  std::shared_ptr<const QuotientGroup> quotient;  // set for projective tags
  std::vector<elem_t> twist;                      // empty means identity

  const Representation& rep() const { return *matrices->rep(); }
  const FiniteRing& ring() const { return *matrices->ring(); }
  std::size_t from_matrix_index(std::size_t i) const { return quotient ? quotient->coset_of(i) : i; }
  std::optional<std::size_t> root_image(std::size_t b, elem_t t) const;
};
Tagging tag_matrix_group(MatrixGroupPtr g, bool projective, std::vector<elem_t> twist = {});

// {image of x_b(t) : t in R}; throws RingError for an untagged structure.
Relation oracle_root_subgroup(const Tagging& tags, std::size_t b);

struct CandidateCheck {
  bool equal = false;
  std::optional<std::size_t> witness;  // element of the symmetric difference
};
// The candidate must have one free variable.
CandidateCheck check_candidate_formula(const Structure& s, const Formula& candidate, const Relation& oracle);

struct RecoveredRing {
  RingPtr ring;
  std::vector<std::size_t> to_group;  // ring element -> group element
  std::vector<elem_t> from_source;    // tag parameter -> ring element
  std::string failure;                // empty on success
};
RecoveredRing ring_recovery(const Tagging& tags, std::size_t b);

using Decomposition = std::vector<std::pair<std::size_t, elem_t>>;  // (root, parameter)
// h^-1 x_b(1) h == product of x_{b_i}(z_i)
bool decomp_conj_verify(const MatrixGroup& g, std::size_t h, std::size_t b, const Decomposition& d);
struct DecompositionSearch {
  enum class Status { Found, NotFound, Unknown } status = Status::Unknown;
  Decomposition decomposition;
};
// Breadth-first search over products of at most n root elements, bounded by cap visited elements.
DecompositionSearch decomp_conj_search(const MatrixGroup& g, std::size_t h, std::size_t b, int n,
                                       std::size_t cap = 2'000'000);

enum class Verdict { Pass, Fail, Unknown, Skipped };
const char* verdict_name(Verdict v);

struct ItemResult {
  int item = 0;
  std::string name;
  Verdict verdict = Verdict::Unknown;
  std::string witness;
};

struct MasterReport {
  std::vector<ItemResult> items;
  bool all_pass() const;  // skipped items do not count against
  const ItemResult* item(int k) const;
};

// A group offered as PG_P(Phi,R) (projective) or G_P(Phi,R), together with the
// root system and lattice of the matrix model to test it against. Tags are
// optional; without them root subgroups fall back to the cyclic groups
// generated by the parameters.
struct Candidate {
  GroupPtr group;
  std::optional<Tagging> tags;
  RootSystemPtr phi;
  Lattice lattice = Lattice::Adjoint;
  bool projective = true;
  bool require_good = true;
  std::size_t budget = 100'000;
};

std::vector<std::size_t> honest_params(const Tagging& tags);

// Data built by the master check: recovered ring, matrix model over it, and
// theta: model -> candidate along the root-element correspondence.
struct Reconstruction {
  RecoveredRing ring;
  RepPtr rep;
  MatrixGroupPtr model;
  std::vector<std::size_t> theta;  // model element -> candidate element
  Subgroup model_center;
};

struct MasterResult {
  MasterReport report;
  std::optional<Reconstruction> data;
};

MasterResult master_check(const Candidate& c, const std::vector<std::size_t>& params);

struct BgOptions {
  long m = 1;
  int n = 2;
  std::vector<std::size_t> extras;
  std::size_t samples = 64;   // elements whose witness words are lifted
  std::size_t word_cap = 100'000;
};
MasterResult master_check_bg(const Candidate& c, const std::vector<std::size_t>& params, const BgOptions& opt);

// g agrees modulo the center with the model element whose entries are decoded
// from the tuple (each entry an element of the recovered root subgroup).
// Throws RingError when an entry lies outside that subgroup.
bool mat_up_to_cent(const Candidate& c, const Reconstruction& r, std::size_t g,
                    const std::vector<std::size_t>& tuple);
// The tuple encoding a model element entrywise.
std::vector<std::size_t> encode_matrix(const Reconstruction& r, const Mat& m);

struct ReconstructResult {
  bool ok = false;
  std::string failure;
  RingPtr ring;
  std::vector<std::size_t> f;  // candidate element -> model element (a coset of the center in projective mode)
  std::shared_ptr<const QuotientGroup> model_quotient;  // set in projective mode
  MasterReport report;
};
// Projective candidates use master_check; others master_check_bg with `bg`.
ReconstructResult reconstruct(const Candidate& c, const std::vector<std::size_t>& params,
                              const BgOptions& bg = {});

}  // namespace chevlab
