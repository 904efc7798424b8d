#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "chevlab/chevmat.hpp"

namespace chevlab {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::size_t partial() const { return partial_; }

 private:
  std::size_t partial_;
};

// Finite group with elements 0..order()-1 and identity 0.
class Group {
 public:
  virtual ~Group() = default;
  virtual std::size_t order() const = 0;
  virtual std::size_t mul(std::size_t a, std::size_t b) const = 0;
  virtual std::size_t inv(std::size_t a) const = 0;
  virtual const std::vector<std::size_t>& generators() const = 0;
  virtual std::string label() const { return "group"; }
  // x * g_k and g_k * x for the k-th generator.
  virtual std::size_t right_gen(std::size_t x, std::size_t k) const { return mul(x, generators()[k]); }
  virtual std::size_t left_gen(std::size_t k, std::size_t x) const { return mul(generators()[k], x); }
  // g_k^-1 x g_k
  virtual std::size_t conj_gen(std::size_t x, std::size_t k) const {
    return mul(inv(generators()[k]), right_gen(x, k));
  }

  std::size_t identity() const { return 0; }
  std::size_t conj(std::size_t x, std::size_t g) const { return mul(inv(g), mul(x, g)); }
  std::size_t comm(std::size_t a, std::size_t b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::size_t pow(std::size_t a, long k) const;
};

using GroupPtr = std::shared_ptr<const Group>;

struct MatHash {
  std::size_t operator()(const std::vector<elem_t>& v) const noexcept;
};

// Enumerated matrix group: identity at index 0, the rest sorted by canonical
// encoding (the entry vector compared lexicographically).
class MatrixGroup : public Group {
 public:
  MatrixGroup(RepPtr rep, RingPtr ring, std::vector<Mat> elements, std::vector<Mat> generators);

  std::size_t order() const override { return elems_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const override;
  std::size_t inv(std::size_t a) const override { return inv_[a]; }
  const std::vector<std::size_t>& generators() const override { return gens_; }
  std::string label() const override;
  std::size_t right_gen(std::size_t x, std::size_t k) const override { return right_[k][x]; }
  std::size_t left_gen(std::size_t k, std::size_t x) const override { return left_[k][x]; }
  std::size_t conj_gen(std::size_t x, std::size_t k) const override { return left_inv_[k][right_[k][x]]; }

  const RepPtr& rep() const { return rep_; }  // may be null for plain matrix groups
  const RingPtr& ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  const Mat& element(std::size_t i) const { return elems_[i]; }
  const std::vector<Mat>& generator_matrices() const { return gen_mats_; }
  std::optional<std::size_t> index_of(const Mat& m) const;
  std::size_t index_checked(const Mat& m) const;

 private:
  RepPtr rep_;
  RingPtr ring_;
  std::size_t dim_ = 0;
  std::vector<Mat> elems_;
  std::vector<Mat> gen_mats_;
  std::vector<std::size_t> gens_;
  std::unordered_map<std::vector<elem_t>, std::size_t, MatHash> index_;
  std::vector<std::size_t> inv_;
  std::vector<std::vector<std::size_t>> right_, left_, left_inv_;
};

using MatrixGroupPtr = std::shared_ptr<const MatrixGroup>;

constexpr std::size_t kDefaultClosureCap = 2'000'000;

// Breadth-first product closure. Throws BudgetExceeded (with the partial
// size) past `cap`. The parallel variant expands each frontier with OpenMP
// and merges in frontier order; both produce identical groups.
MatrixGroupPtr closure(RepPtr rep, RingPtr ring, const std::vector<Mat>& gens,
                       std::size_t cap = kDefaultClosureCap);
MatrixGroupPtr closure_serial(RepPtr rep, RingPtr ring, const std::vector<Mat>& gens,
                              std::size_t cap = kDefaultClosureCap);

// All root elements x_a(t) with t != 0, optionally followed by the torus
// generators (giving T*E instead of E).
std::vector<Mat> elementary_generators(const Representation& rep, const FiniteRing& r,
                                       bool with_torus = false);
MatrixGroupPtr elementary_group(RepPtr rep, RingPtr ring, bool with_torus = false,
                                std::size_t cap = kDefaultClosureCap);

// Explicit Cayley-table group.
class TableGroup : public Group {
 public:
  TableGroup(std::vector<std::size_t> table, std::size_t order, std::vector<std::size_t> gens,
             std::string label);
  static std::shared_ptr<TableGroup> from_permutations(const std::vector<std::vector<int>>& gens,
                                                       std::string label);
  static std::shared_ptr<TableGroup> cyclic(std::size_t n);
  static std::shared_ptr<TableGroup> of(const Group& g, std::string label);  // tabulates g

  std::size_t order() const override { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const override { return table_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const override { return inv_[a]; }
  const std::vector<std::size_t>& generators() const override { return gens_; }
  std::string label() const override { return label_; }

 private:
  std::vector<std::size_t> table_;
  std::size_t n_;
  std::vector<std::size_t> gens_, inv_;
  std::string label_;
};

struct Subgroup {
  std::vector<std::size_t> elements;  // sorted
  std::vector<std::size_t> gens;      // small generating set
  std::vector<bool> mask;             // over the parent's elements

  bool contains(std::size_t x) const { return mask[x]; }
  std::size_t size() const { return elements.size(); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
  bool subset_of(const Subgroup& o) const;
};

Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
Subgroup subgroup_generated(const Group& g, const std::vector<std::size_t>& gens);
Subgroup subgroup_from_mask(const Group& g, const std::vector<bool>& mask);  // mask must be closed
bool is_normal(const Group& g, const Subgroup& h);

Subgroup center(const Group& g);
Subgroup centralizer(const Group& g, const std::vector<std::size_t>& s);
Subgroup normal_closure(const Group& g, const std::vector<std::size_t>& s);
Subgroup derived_subgroup(const Group& g);
// [K,K] for a subgroup given by generators.
Subgroup derived_of(const Group& g, const Subgroup& k);

struct ConjugacyClasses {
  std::vector<std::vector<std::size_t>> classes;  // each sorted, ordered by smallest member
  std::vector<std::size_t> class_of;
};
ConjugacyClasses conjugacy_classes(const Group& g);

std::size_t element_order(const Group& g, std::size_t x);
std::vector<std::size_t> element_order_histogram(const Group& g);  // count per order

class QuotientGroup : public Group {
 public:
  // Throws RingError if n is not normal.
  QuotientGroup(GroupPtr parent, const Subgroup& n);
  std::size_t order() const override { return reps_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const override;
  std::size_t inv(std::size_t a) const override;
  const std::vector<std::size_t>& generators() const override { return gens_; }
  std::string label() const override { return parent_->label() + "/N"; }

  const Group& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  std::size_t coset_of(std::size_t x) const { return coset_[x]; }
  std::size_t representative(std::size_t c) const { return reps_[c]; }

 private:
  GroupPtr parent_;
  std::vector<std::size_t> coset_, reps_, gens_;
};

std::shared_ptr<QuotientGroup> quotient_group(GroupPtr g, const Subgroup& n);
// G / Z(G)
std::shared_ptr<QuotientGroup> central_quotient(GroupPtr g);

constexpr std::size_t kNormalSubgroupBound = 50'000;
// All normal subgroups (sorted by size then elements); throws BudgetExceeded
// past `bound` group elements or `max_subgroups` results.
std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t bound = kNormalSubgroupBound,
                                       std::size_t max_subgroups = 4096);

struct MinimalEResult {
  std::optional<Subgroup> k;
  std::vector<Subgroup> candidates;
  std::string diagnosis;  // set when k is empty
};
MinimalEResult minimal_E(const Group& g, const std::vector<Subgroup>& normals);

// Commutators [a,b] = a^-1 b^-1 a b, for all a, b.
std::vector<bool> commutator_set(const Group& g);
std::vector<bool> power_set(const Group& g, long m);
// {[a,b]} u {a^m} u extras, as a mask.
std::vector<bool> xm_set(const Group& g, long m, const std::vector<std::size_t>& extras);

struct BoundedGeneration {
  bool generated = false;
  std::vector<int> length;            // minimal length per element, -1 if unreached
  std::vector<std::size_t> histogram; // histogram[k] = #elements of minimal length k
};
// X^0 u ... u X^N; uses class representatives when X is conjugation-invariant.
BoundedGeneration bounded_generation(const Group& g, const std::vector<bool>& x, int n);
BoundedGeneration bounded_generation_serial(const Group& g, const std::vector<bool>& x, int n);

struct OmegaWord {
  std::string letters;  // over {c, d, x1..xl}, e.g. "cx1"
  std::string term;     // term text in the formula grammar
  int variables = 0;    // fresh variables v1..v_k used by the term
};
// All (2+l)^N words of length N; c -> [v_i,v_{i+1}], d -> v_i^m, x_k -> x_k.
// Throws BudgetExceeded when the count exceeds `cap`.
std::vector<OmegaWord> word_set_omega(int n, int l, long m, std::size_t cap = 100'000);

// Group cache: header (rep, ring, dim, generators) followed by the elements
// in the matrix dump format.
std::uint64_t group_cache_key(const std::string& rep_label, const std::string& ring_label,
                              const std::vector<std::string>& generator_lines);
void write_group_cache(const std::string& path, const MatrixGroup& g);
MatrixGroupPtr read_group_cache(const std::string& path);

}  // namespace chevlab
