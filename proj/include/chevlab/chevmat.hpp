#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/matrix.hpp"
#include "chevlab/ring.hpp"
#include "chevlab/rootsys.hpp"

namespace chevlab {

enum class Lattice { Adjoint, SimplyConnected, IntermediateSO6 };
// Accepts "adjoint"/"ad", "sc"/"simply_connected", "so6"/"intermediate".
Lattice parse_lattice(std::string_view text);
std::string lattice_name(Lattice l);

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Integral matrix template of a Chevalley group: x_a(t) = sum_k t^k T_{a,k}
// with T_{a,k} = (e_a)^k / k!. Supported: adjoint for every type, SL(l+1)
// for A_l (sc), Sp(2l) for C_l (sc), and SO(6) = exterior square of SL4 for
// the intermediate A3 lattice.
class Representation {
 public:
  enum class Form { None, Symplectic, Quadratic };

  // Throws RingError for unsupported (type, lattice) pairs. With verify set the
  // bracket relations of the e_a matrices are checked against the structure
  // constants; fault-injection callers turn this off.
  static std::shared_ptr<const Representation> make(RootSystemPtr phi, Lattice lattice,
                                                    bool verify = true);

  const RootSystem& roots() const { return *phi_; }
  const RootSystemPtr& roots_ptr() const { return phi_; }
  Lattice lattice() const { return lattice_; }
  std::size_t dim() const { return dim_; }
  std::string label() const;  // e.g. "A3/so6"

  const IntMat& lie(std::size_t a) const { return e_[a]; }
  // T_{a,1}, T_{a,2}, ... until the tower vanishes.
  const std::vector<IntMat>& tower(std::size_t a) const { return tower_[a]; }
  // m with center of the group scheme equal to mu_m.
  unsigned center_exponent() const { return center_exp_; }

  Form form() const { return form_; }
  const IntMat& gram() const { return gram_; }
  // Form preservation (or det = 1 when no form is stored and dim <= 8).
  // Returns true for the adjoint representation, which carries no equations.
  bool satisfies_equations(const FiniteRing& r, const Mat& g) const;

  Mat root_element(const FiniteRing& r, std::size_t a, elem_t t) const;
  // w_a(t) = x_a(t) x_{-a}(-t^-1) x_a(t); throws RingError for non-units.
  Mat weyl_element(const FiniteRing& r, std::size_t a, elem_t t) const;
  // h_a(t) = w_a(t) w_a(1)^-1.
  Mat torus_element(const FiniteRing& r, std::size_t a, elem_t t) const;

  // Maximal split torus: diagonal matrices of the representation's shape.
  //   adjoint: chi on the root lattice, params chi(alpha_1..alpha_l)
  //   SL: diag(z_1..z_{l+1}) with product 1, params z_1..z_{l+1}
  //   Sp: diag(t_1..t_l, t_l^-1..t_1^-1), params t_i
  //   SO6: diag(x1,x2,x3,x3^-1,x2^-1,x1^-1), params x1,x2,x3
  std::optional<std::vector<elem_t>> torus_params(const FiniteRing& r, const Mat& d) const;
  Mat torus_from_params(const FiniteRing& r, const std::vector<elem_t>& params) const;
  std::size_t torus_param_count() const;
  // Generators of the torus group as a matrix list over r.
  std::vector<Mat> torus_generators(const FiniteRing& r) const;

  // Position (row, col) of a unit-coefficient entry of e_a, used to read off
  // root-element parameters; throws if no +-1 entry exists.
  std::pair<std::size_t, std::size_t> probe(std::size_t a) const { return probe_[a]; }

 private:
  Representation() = default;
  void finish(bool verify);

  RootSystemPtr phi_;
  Lattice lattice_ = Lattice::Adjoint;
  std::size_t dim_ = 0;
  std::vector<IntMat> e_;
  std::vector<std::vector<IntMat>> tower_;
  std::vector<std::pair<std::size_t, std::size_t>> probe_;
  std::vector<std::size_t> adjoint_order_;  // basis position of roots, then h_i
  unsigned center_exp_ = 1;
  Form form_ = Form::None;
  IntMat gram_;
};

using RepPtr = std::shared_ptr<const Representation>;

inline Mat reduce_mod(const Mat& g, const QuotientRing& q) { return mat_map(g, q.projection); }

// diag(z1z2, z1z3, z1z4, z2z3, z2z4, z3z4) in the SO6 basis; throws unless
// the product of the four units is 1.
Mat so6_torus_map(const FiniteRing& r, elem_t z1, elem_t z2, elem_t z3, elem_t z4);

struct GaussFactors {
  std::vector<std::pair<std::size_t, elem_t>> lower;  // negative roots, in product order
  std::vector<elem_t> torus;                          // torus parameters
  std::vector<std::pair<std::size_t, elem_t>> upper;  // positive roots, in product order
};

// g = (prod lower) * torus * (prod upper) in the big cell. Throws RingError
// for non-local rings or a dimension mismatch; nullopt when g is outside the
// big cell.
std::optional<GaussFactors> gauss_decompose(const Representation& rep, const FiniteRing& r,
                                            const Mat& g);
Mat gauss_reassemble(const Representation& rep, const FiniteRing& r, const GaussFactors& f);

// Membership in T*E via Weyl translates: w g lies in the big cell for some
// w in the extended Weyl group generated by w_{alpha_i}(1).
struct TEDecomposition {
  bool member = false;
  std::vector<int> weyl_word;  // simple reflections, w = w_{i1}(1) ... w_{ik}(1)
  GaussFactors factors;        // of w * g
  std::string diagnosis;       // reason when !member
};
TEDecomposition decompose_te(const Representation& rep, const FiniteRing& r, const Mat& g);
// Distinct extended-Weyl representatives as words, deduplicated by monomial
// pattern, shortest first.
std::vector<std::vector<int>> weyl_words(const Representation& rep, const FiniteRing& r);
Mat weyl_word_matrix(const Representation& rep, const FiniteRing& r, const std::vector<int>& w);

struct SO6Membership {
  bool in_te = false;
  bool elementary = false;
  elem_t square_class = 0;  // canonical representative of x1x2x3 in R*/(R*)^2
  std::string diagnosis;
};
// Canonical representative of u (R*)^2: smallest element index in the coset.
elem_t unit_square_class(const FiniteRing& r, elem_t u);
SO6Membership elementary_membership_so6(const Representation& rep, const FiniteRing& r,
                                        const Mat& g);

// Scalar matrices xi*I with xi^m = 1 that lie in the torus.
std::vector<Mat> center_scalars(const Representation& rep, const FiniteRing& r);

}  // namespace chevlab
