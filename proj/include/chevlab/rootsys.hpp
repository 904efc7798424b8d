#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "chevlab/ring.hpp"

namespace chevlab {

// A root in the simple-root basis.
using Root = std::vector<int>;

struct CommutatorTerm {
  int i = 0, j = 0;  // the root i*alpha + j*beta
  long coeff = 0;
  friend bool operator==(const CommutatorTerm&, const CommutatorTerm&) = default;
};

// Irreducible root system of rank > 1 with a Chevalley basis sign convention:
// extraspecial pairs carry positive structure constants, N(-a,-b) = -N(a,b).
class RootSystem {
 public:
  // Throws RingError (reused as the domain error type) for rank <= 1 or an
  // illegal (type, rank) pair.
  RootSystem(RootType type, int rank);
  static RootSystem parse(std::string_view label);  // "A2", "C3", "G2", ...

  RootType type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const;

  // Positive roots first (height, then lexicographic), then their negatives
  // in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  const Root& root(std::size_t k) const { return roots_[k]; }
  std::optional<std::size_t> index_of(const Root& r) const;
  std::size_t index_checked(const Root& r) const;
  std::size_t negative_of(std::size_t k) const { return neg_[k]; }
  std::size_t simple(int i) const { return static_cast<std::size_t>(i); }
  bool is_positive(std::size_t k) const { return k < num_positive(); }
  int height(std::size_t k) const;
  bool is_long(std::size_t k) const;

  // (a,b) in the invariant form normalised so the shortest roots have length 2.
  int inner(const Root& a, const Root& b) const;
  // <b, a^vee> = 2 (b,a) / (a,a)
  int pairing(std::size_t b, std::size_t a) const { return pairing_[b * size() + a]; }
  // (p, q): b - p a, ..., b + q a is the a-string through b.
  std::pair<int, int> string(std::size_t a, std::size_t b) const;
  // Coroot of root k in the simple-coroot basis.
  std::vector<int> coroot(std::size_t k) const;

  Root reflect(const Root& alpha, const Root& beta) const;
  std::optional<std::size_t> sum_index(std::size_t a, std::size_t b) const;

  // N(a,b) for a+b a root, 0 otherwise (including a+b = 0).
  long structure_constant(std::size_t a, std::size_t b) const { return n_[a * size() + b]; }
  // Coefficients C_ij of [x_a(t), x_b(u)] = prod x_{ia+jb}(C_ij t^i u^j),
  // with [x,y] = x^-1 y^-1 x y, ordered by i+j then i. Throws for
  // proportional roots.
  std::vector<CommutatorTerm> commutator_coeffs(std::size_t a, std::size_t b) const;
  // Sign eta with w_a(1) x_b(z) w_a(1)^-1 = x_{s_a b}(eta z).
  int weyl_sign(std::size_t a, std::size_t b) const { return weyl_sign_[a * size() + b]; }
  // Applies the word w = w_{i1}(1) ... w_{ik}(1) (simple reflections, left to
  // right) by conjugation g -> w g w^-1.
  std::pair<std::size_t, int> weyl_action(const std::vector<int>& word, std::size_t b) const;

  // Overrides one structure constant pair (and its mirror images); used for
  // fault injection in tests and the verification harness.
  void corrupt_structure_constant(std::size_t a, std::size_t b);

 private:
  void build_roots();
  void build_structure_constants();
  void build_commutator_and_weyl_tables();

  RootType type_;
  int rank_;
  std::vector<std::vector<int>> gram_;  // simple-root Gram matrix
  std::vector<Root> roots_;
  std::map<Root, std::size_t> index_;
  std::vector<std::size_t> neg_;
  std::vector<int> pairing_;
  std::vector<long> n_;
  std::vector<std::vector<CommutatorTerm>> comm_;
  std::vector<int> weyl_sign_;
};

// Chevalley basis of the Lie algebra: basis order is roots (RootSystem order)
// followed by the simple coroots h_1..h_l. Entries are exact integers.
struct ChevalleyBasis {
  std::size_t dim = 0;
  // Structure tensor: bracket(i, j) -> sparse list of (k, coeff).
  std::vector<std::vector<std::pair<std::size_t, long>>> bracket;
  std::vector<std::pair<std::size_t, long>> br(std::size_t i, std::size_t j) const {
    return bracket[i * dim + j];
  }
};
ChevalleyBasis chevalley_basis(const RootSystem& phi);
// Jacobi identity on every basis triple; returns first failure description.
std::string check_jacobi(const ChevalleyBasis& basis);

}  // namespace chevlab
