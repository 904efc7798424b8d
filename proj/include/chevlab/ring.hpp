#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chevlab {

// A ring element is its index into the ring's element table. Index 0 is
// always zero; the index is the canonical encoding (mixed-radix digits of the
// coefficient residues for tower-built rings).
using elem_t = std::uint16_t;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultRingCap = 4096;

// Constructor tree. Polynomial coefficients are integers embedded in the base
// ring through k -> k*1, written lowest degree first; the leading coefficient
// is implicit (monic).
struct RingSpec {
  enum class Kind { Modular, GaloisField, PolyQuotient, DualNumbers, Product };
  Kind kind = Kind::Modular;
  unsigned modulus = 0;                   // Modular(n), GaloisField(p, .)
  std::vector<long> poly;                 // GaloisField / PolyQuotient, low..high, monic
  std::shared_ptr<const RingSpec> left;   // base of PolyQuotient/DualNumbers, or Product left
  std::shared_ptr<const RingSpec> right;  // Product right

  static RingSpec modular(unsigned n);
  static RingSpec galois(unsigned p, std::vector<long> monic);
  static RingSpec poly_quotient(RingSpec base, std::vector<long> monic);
  static RingSpec dual(RingSpec base);
  static RingSpec product(RingSpec l, RingSpec r);

  // Text form accepted by parse_ring_spec.
  std::string to_string() const;
};

// Grammar (whitespace ignored):
//   ring    := primary ( '[' ident ']' '/' '(' poly ')' )*
//   primary := 'Z/' int | 'GF(' int ')' | 'dual(' ring ')'
//            | 'prod(' ring ',' ring ')' | '(' ring ')'
//   poly    := monomial (('+'|'-') monomial)*   over the bracketed variable
// `GF(p)[t]/(f)` builds a Galois field (f must be irreducible); any other
// quotient is a plain polynomial quotient ring.
RingSpec parse_ring_spec(std::string_view text);

struct Ideal;

class FiniteRing {
 public:
  // Builds the arithmetic tables. Throws RingError on invalid specs or when
  // the cardinality exceeds `cap`.
  static std::shared_ptr<const FiniteRing> make(const RingSpec& spec,
                                                std::size_t cap = kDefaultRingCap);
  static std::shared_ptr<const FiniteRing> parse(std::string_view text,
                                                 std::size_t cap = kDefaultRingCap);
  // Ring given by explicit tables; used for quotients and recovered rings.
  // Element 0 must be the additive identity.
  static std::shared_ptr<const FiniteRing> from_tables(std::string label, std::size_t size,
                                                       std::vector<elem_t> add,
                                                       std::vector<elem_t> mul, elem_t one,
                                                       std::vector<std::string> names);

  std::size_t size() const { return size_; }
  const std::string& label() const { return label_; }
  const std::optional<RingSpec>& spec() const { return spec_; }

  elem_t zero() const { return 0; }
  elem_t one() const { return one_; }
  elem_t add(elem_t a, elem_t b) const { return add_[a * size_ + b]; }
  elem_t mul(elem_t a, elem_t b) const { return mul_[a * size_ + b]; }
  elem_t neg(elem_t a) const { return neg_[a]; }
  elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }
  elem_t from_int(long k) const;
  elem_t pow(elem_t a, unsigned k) const;
  bool is_unit(elem_t a) const { return inv_[a] != kNoInverse; }
  // Throws RingError if a is not a unit.
  elem_t inv(elem_t a) const;

  const std::string& name(elem_t a) const { return names_[a]; }
  // Inverse of name(); throws RingError for unknown text.
  elem_t parse_element(std::string_view text) const;

  std::vector<elem_t> units() const;
  std::vector<elem_t> unit_squares() const;
  bool is_local() const;

  // Exhaustive check of the commutative-ring-with-1 axioms; returns a
  // description of the first violation, empty if all hold.
  std::string check_axioms() const;

 private:
  static constexpr elem_t kNoInverse = 0xffff;
  void finish();

  std::string label_;
  std::optional<RingSpec> spec_;
  std::size_t size_ = 0;
  elem_t one_ = 0;
  std::vector<elem_t> add_, mul_, neg_, inv_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

struct Ideal {
  std::vector<elem_t> generators;
  std::vector<elem_t> elements;  // sorted
  bool contains(elem_t a) const;
  std::size_t size() const { return elements.size(); }
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.elements == b.elements; }
};

// Smallest ideal containing the given elements.
Ideal ideal_generated(const FiniteRing& r, const std::vector<elem_t>& gens);
// All ideals, sorted by size then elements; includes {0} and R.
std::vector<Ideal> ideals(const FiniteRing& r, std::size_t cap = kDefaultRingCap);

struct QuotientRing {
  RingPtr ring;
  std::vector<elem_t> projection;  // element of R -> element of R/I
};
// Requires I proper; the zero ideal yields R itself with the identity map.
QuotientRing quotient_ring(const RingPtr& r, const Ideal& ideal);

enum class RootType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };
// Throws RingError for rank <= 1.
bool is_good(const FiniteRing& r, RootType type, int rank);

// Ring isomorphism search. Returns the table phi with phi[a] in S, or nullopt.
std::optional<std::vector<elem_t>> find_ring_isomorphism(const FiniteRing& r,
                                                         const FiniteRing& s);
std::vector<std::vector<elem_t>> ring_automorphisms(const FiniteRing& r);

}  // namespace chevlab
