#include "chevlab/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace chevlab {

// ---------------------------------------------------------------- RingSpec

RingSpec RingSpec::modular(unsigned n) {
  RingSpec s;
  s.kind = Kind::Modular;
  s.modulus = n;
  return s;
}

RingSpec RingSpec::galois(unsigned p, std::vector<long> monic) {
  RingSpec s;
  s.kind = Kind::GaloisField;
  s.modulus = p;
  s.poly = std::move(monic);
  return s;
}

RingSpec RingSpec::poly_quotient(RingSpec base, std::vector<long> monic) {
  RingSpec s;
  s.kind = Kind::PolyQuotient;
  s.poly = std::move(monic);
  s.left = std::make_shared<const RingSpec>(std::move(base));
  return s;
}

RingSpec RingSpec::dual(RingSpec base) {
  RingSpec s;
  s.kind = Kind::DualNumbers;
  s.left = std::make_shared<const RingSpec>(std::move(base));
  return s;
}

RingSpec RingSpec::product(RingSpec l, RingSpec r) {
  RingSpec s;
  s.kind = Kind::Product;
  s.left = std::make_shared<const RingSpec>(std::move(l));
  s.right = std::make_shared<const RingSpec>(std::move(r));
  return s;
}

namespace {

std::string poly_text(const std::vector<long>& poly) {
  std::string out;
  for (std::size_t i = poly.size(); i-- > 0;) {
    long c = poly[i];
    if (c == 0) continue;
    std::string mono;
    long a = c < 0 ? -c : c;
    if (i == 0) {
      mono = std::to_string(a);
    } else {
      if (a != 1) mono = std::to_string(a) + "*";
      mono += "t";
      if (i > 1) mono += "^" + std::to_string(i);
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + mono;
    else
      out += (c < 0 ? "-" : "+") + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string RingSpec::to_string() const {
  switch (kind) {
    case Kind::Modular:
      return "Z/" + std::to_string(modulus);
    case Kind::GaloisField:
      return "GF(" + std::to_string(modulus) + ")[t]/(" + poly_text(poly) + ")";
    case Kind::PolyQuotient: {
      std::string base = left->to_string();
      if (left->kind == Kind::GaloisField) base = "(" + base + ")";
      return base + "[t]/(" + poly_text(poly) + ")";
    }
    case Kind::DualNumbers:
      return "dual(" + left->to_string() + ")";
    case Kind::Product:
      return "prod(" + left->to_string() + "," + right->to_string() + ")";
  }
  return {};
}

// ------------------------------------------------------------------ parser

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  RingSpec parse() {
    RingSpec r = ring();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw RingError("ring spec: " + msg + " at position " + std::to_string(pos_) + " in '" +
                    s_ + "'");
  }
  bool eat(std::string_view tok) {
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  long integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }
  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected variable name");
    return s_.substr(start, pos_ - start);
  }

  RingSpec ring() {
    bool prime_field = false;
    RingSpec r = primary(prime_field);
    while (eat("[")) {
      std::string var = ident();
      expect("]");
      expect("/");
      expect("(");
      std::vector<long> p = poly(var);
      expect(")");
      if (p.size() < 2) fail("modulus must have degree >= 1");
      if (p.back() != 1) fail("modulus must be monic");
      if (prime_field)
        r = RingSpec::galois(r.modulus, std::move(p));
      else
        r = RingSpec::poly_quotient(std::move(r), std::move(p));
      prime_field = false;
    }
    return r;
  }

  RingSpec primary(bool& prime_field) {
    if (eat("Z/")) return RingSpec::modular(static_cast<unsigned>(integer()));
    if (eat("GF(")) {
      long p = integer();
      expect(")");
      prime_field = true;
      return RingSpec::modular(static_cast<unsigned>(p));  // promoted to GF below
    }
    if (eat("dual(")) {
      RingSpec b = ring();
      expect(")");
      return RingSpec::dual(std::move(b));
    }
    if (eat("prod(")) {
      RingSpec a = ring();
      expect(",");
      RingSpec b = ring();
      expect(")");
      return RingSpec::product(std::move(a), std::move(b));
    }
    if (eat("(")) {
      RingSpec r = ring();
      expect(")");
      return r;
    }
    fail("expected ring");
  }

  // Polynomial in `var` with integer coefficients, returned low..high.
  std::vector<long> poly(const std::string& var) {
    std::vector<long> out;
    bool first = true;
    while (true) {
      long sign = 1;
      if (eat("-"))
        sign = -1;
      else if (!first && !eat("+"))
        break;
      first = false;
      long coef = 1;
      bool have_coef = false;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coef = integer();
        have_coef = true;
        eat("*");
      }
      std::size_t deg = 0;
      if (eat(var)) {
        deg = 1;
        if (eat("^")) deg = static_cast<std::size_t>(integer());
      } else if (!have_coef) {
        fail("expected monomial");
      }
      if (out.size() <= deg) out.resize(deg + 1, 0);
      out[deg] += sign * coef;
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RingSpec parse_ring_spec(std::string_view text) { return SpecParser(text).parse(); }

// ------------------------------------------------------------ construction

namespace {

std::size_t cardinality(const RingSpec& s) {
  switch (s.kind) {
    case RingSpec::Kind::Modular:
      if (s.modulus < 2) throw RingError("modulus must be >= 2");
      return s.modulus;
    case RingSpec::Kind::GaloisField: {
      if (s.modulus < 2) throw RingError("modulus must be >= 2");
      std::size_t c = 1;
      for (std::size_t i = 1; i < s.poly.size(); ++i) {
        c *= s.modulus;
        if (c > (1u << 20)) throw RingError("ring too large");
      }
      return c;
    }
    case RingSpec::Kind::PolyQuotient: {
      std::size_t b = cardinality(*s.left), c = 1;
      for (std::size_t i = 1; i < s.poly.size(); ++i) {
        c *= b;
        if (c > (1u << 20)) throw RingError("ring too large");
      }
      return c;
    }
    case RingSpec::Kind::DualNumbers: {
      std::size_t b = cardinality(*s.left);
      return b * b;
    }
    case RingSpec::Kind::Product:
      return cardinality(*s.left) * cardinality(*s.right);
  }
  return 0;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Remainder of a modulo monic b over Z/p; coefficients low..high.
std::vector<long> poly_mod_p(std::vector<long> a, const std::vector<long>& b, long p) {
  for (auto& c : a) c = ((c % p) + p) % p;
  while (a.size() >= b.size()) {
    long lead = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Exhaustive factor search: no monic factor of degree 1..deg/2.
bool irreducible_mod_p(const std::vector<long>& f, long p) {
  std::size_t deg = f.size() - 1;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= static_cast<std::size_t>(p);
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<long> g(k + 1);
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<long>(c % p);
        c /= p;
      }
      g[k] = 1;
      if (poly_mod_p(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct Tables {
  std::size_t n = 0;
  elem_t one = 0;
  std::vector<elem_t> add, mul;
  std::vector<std::string> names;
};

elem_t int_in(const Tables& t, long k) {
  elem_t acc = 0, base = t.one;
  bool negative = k < 0;
  unsigned long m = negative ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  while (m) {
    if (m & 1) acc = t.add[acc * t.n + base];
    base = t.add[base * t.n + base];
    m >>= 1;
  }
  if (negative) {
    for (elem_t b = 0; b < t.n; ++b)
      if (t.add[acc * t.n + b] == 0) return b;
  }
  return acc;
}

Tables build_modular(unsigned n) {
  Tables t;
  t.n = n;
  t.one = 1 % n;
  t.add.resize(n * n);
  t.mul.resize(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      t.add[a * n + b] = static_cast<elem_t>((a + b) % n);
      t.mul[a * n + b] = static_cast<elem_t>((a * b) % n);
    }
  for (unsigned a = 0; a < n; ++a) t.names.push_back(std::to_string(a));
  return t;
}

// Base^deg as coefficient tuples modulo a monic polynomial.
Tables build_poly_quotient(const Tables& base, const std::vector<long>& poly) {
  const std::size_t b = base.n, deg = poly.size() - 1;
  std::vector<elem_t> f(deg);
  for (std::size_t i = 0; i < deg; ++i) f[i] = int_in(base, poly[i]);
  Tables t;
  t.n = 1;
  for (std::size_t i = 0; i < deg; ++i) t.n *= b;
  auto digits = [&](std::size_t x) {
    std::vector<elem_t> d(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      d[i] = static_cast<elem_t>(x % b);
      x /= b;
    }
    return d;
  };
  auto index = [&](const std::vector<elem_t>& d) {
    std::size_t x = 0;
    for (std::size_t i = deg; i-- > 0;) x = x * b + d[i];
    return static_cast<elem_t>(x);
  };
  auto badd = [&](elem_t x, elem_t y) { return base.add[x * b + y]; };
  auto bmul = [&](elem_t x, elem_t y) { return base.mul[x * b + y]; };
  std::vector<elem_t> bneg(b);
  for (elem_t x = 0; x < b; ++x)
    for (elem_t y = 0; y < b; ++y)
      if (badd(x, y) == 0) bneg[x] = y;

  t.one = index([&] {
    std::vector<elem_t> d(deg, 0);
    d[0] = base.one;
    return d;
  }());
  t.add.resize(t.n * t.n);
  t.mul.resize(t.n * t.n);
  std::vector<std::vector<elem_t>> all(t.n);
  for (std::size_t x = 0; x < t.n; ++x) all[x] = digits(x);
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y) {
      const auto &dx = all[x], &dy = all[y];
      std::vector<elem_t> s(deg);
      for (std::size_t i = 0; i < deg; ++i) s[i] = badd(dx[i], dy[i]);
      t.add[x * t.n + y] = index(s);
      std::vector<elem_t> prod(2 * deg - 1, 0);
      for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = 0; j < deg; ++j) prod[i + j] = badd(prod[i + j], bmul(dx[i], dy[j]));
      // t^deg = -sum f_i t^i
      for (std::size_t k = prod.size(); k-- > deg;) {
        elem_t lead = prod[k];
        if (lead == 0) continue;
        for (std::size_t i = 0; i < deg; ++i)
          prod[k - deg + i] = badd(prod[k - deg + i], bneg[bmul(lead, f[i])]);
        prod[k] = 0;
      }
      prod.resize(deg);
      t.mul[x * t.n + y] = index(prod);
    }
  for (std::size_t x = 0; x < t.n; ++x) {
    std::string s = "(";
    for (std::size_t i = 0; i < deg; ++i) {
      if (i) s += ",";
      s += base.names[all[x][i]];
    }
    t.names.push_back(s + ")");
  }
  return t;
}

Tables build_product(const Tables& l, const Tables& r) {
  Tables t;
  t.n = l.n * r.n;
  auto index = [&](std::size_t a, std::size_t b) { return static_cast<elem_t>(a + l.n * b); };
  t.one = index(l.one, r.one);
  t.add.resize(t.n * t.n);
  t.mul.resize(t.n * t.n);
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y) {
      std::size_t xl = x % l.n, xr = x / l.n, yl = y % l.n, yr = y / l.n;
      t.add[x * t.n + y] = index(l.add[xl * l.n + yl], r.add[xr * r.n + yr]);
      t.mul[x * t.n + y] = index(l.mul[xl * l.n + yl], r.mul[xr * r.n + yr]);
    }
  for (std::size_t x = 0; x < t.n; ++x)
    t.names.push_back("<" + l.names[x % l.n] + "|" + r.names[x / l.n] + ">");
  return t;
}

Tables build(const RingSpec& s) {
  switch (s.kind) {
    case RingSpec::Kind::Modular:
      return build_modular(s.modulus);
    case RingSpec::Kind::GaloisField: {
      if (!is_prime(s.modulus)) throw RingError("GF characteristic must be prime");
      if (s.poly.size() < 2 || s.poly.back() != 1) throw RingError("GF modulus must be monic of degree >= 1");
      if (!irreducible_mod_p(s.poly, s.modulus)) throw RingError("GF modulus is reducible");
      return build_poly_quotient(build_modular(s.modulus), s.poly);
    }
    case RingSpec::Kind::PolyQuotient:
      if (s.poly.size() < 2 || s.poly.back() != 1) throw RingError("modulus must be monic of degree >= 1");
      return build_poly_quotient(build(*s.left), s.poly);
    case RingSpec::Kind::DualNumbers:
      return build_poly_quotient(build(*s.left), {0, 0, 1});
    case RingSpec::Kind::Product:
      return build_product(build(*s.left), build(*s.right));
  }
  throw RingError("bad ring spec");
}

}  // namespace

std::shared_ptr<const FiniteRing> FiniteRing::make(const RingSpec& spec, std::size_t cap) {
  std::size_t card = cardinality(spec);
  if (card > cap)
    throw RingError("ring cardinality " + std::to_string(card) + " exceeds cap " + std::to_string(cap));
  if (card > 0xfff0) throw RingError("ring cardinality exceeds element encoding");
  Tables t = build(spec);
  auto r = std::make_shared<FiniteRing>();
  r->label_ = spec.to_string();
  r->spec_ = spec;
  r->size_ = t.n;
  r->one_ = t.one;
  r->add_ = std::move(t.add);
  r->mul_ = std::move(t.mul);
  r->names_ = std::move(t.names);
  r->finish();
  return r;
}

std::shared_ptr<const FiniteRing> FiniteRing::parse(std::string_view text, std::size_t cap) {
  return make(parse_ring_spec(text), cap);
}

std::shared_ptr<const FiniteRing> FiniteRing::from_tables(std::string label, std::size_t size,
                                                          std::vector<elem_t> add,
                                                          std::vector<elem_t> mul, elem_t one,
                                                          std::vector<std::string> names) {
  if (size < 2) throw RingError("ring must have at least two elements");
  if (add.size() != size * size || mul.size() != size * size || names.size() != size)
    throw RingError("table size mismatch");
  auto r = std::make_shared<FiniteRing>();
  r->label_ = std::move(label);
  r->size_ = size;
  r->one_ = one;
  r->add_ = std::move(add);
  r->mul_ = std::move(mul);
  r->names_ = std::move(names);
  r->finish();
  return r;
}

void FiniteRing::finish() {
  if (size_ < 2 || one_ == 0) throw RingError("ring must satisfy 1 != 0");
  neg_.assign(size_, 0);
  inv_.assign(size_, kNoInverse);
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = 0; b < size_; ++b) {
      if (add_[a * size_ + b] == 0) neg_[a] = static_cast<elem_t>(b);
      if (mul_[a * size_ + b] == one_) inv_[a] = static_cast<elem_t>(b);
    }
}

elem_t FiniteRing::from_int(long k) const {
  elem_t acc = 0, base = one_;
  bool negative = k < 0;
  unsigned long m = negative ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  while (m) {
    if (m & 1) acc = add(acc, base);
    base = add(base, base);
    m >>= 1;
  }
  return negative ? neg(acc) : acc;
}

elem_t FiniteRing::pow(elem_t a, unsigned k) const {
  elem_t acc = one_;
  while (k) {
    if (k & 1) acc = mul(acc, a);
    a = mul(a, a);
    k >>= 1;
  }
  return acc;
}

elem_t FiniteRing::inv(elem_t a) const {
  if (inv_[a] == kNoInverse) throw RingError("element " + names_[a] + " is not a unit");
  return inv_[a];
}

elem_t FiniteRing::parse_element(std::string_view text) const {
  for (std::size_t a = 0; a < size_; ++a)
    if (names_[a] == text) return static_cast<elem_t>(a);
  throw RingError("unknown element '" + std::string(text) + "' of " + label_);
}

std::vector<elem_t> FiniteRing::units() const {
  std::vector<elem_t> out;
  for (std::size_t a = 0; a < size_; ++a)
    if (is_unit(static_cast<elem_t>(a))) out.push_back(static_cast<elem_t>(a));
  return out;
}

std::vector<elem_t> FiniteRing::unit_squares() const {
  std::vector<elem_t> out;
  for (elem_t u : units()) out.push_back(mul(u, u));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool FiniteRing::is_local() const {
  std::vector<elem_t> nonunits;
  for (std::size_t a = 0; a < size_; ++a)
    if (!is_unit(static_cast<elem_t>(a))) nonunits.push_back(static_cast<elem_t>(a));
  for (elem_t a : nonunits)
    for (elem_t b : nonunits)
      if (is_unit(add(a, b))) return false;
  return true;
}

std::string FiniteRing::check_axioms() const {
  const std::size_t n = size_;
  auto at = [&](std::size_t a) { return static_cast<elem_t>(a); };
  for (std::size_t a = 0; a < n; ++a) {
    if (add(at(a), 0) != a) return "0 is not an additive identity at " + names_[a];
    if (mul(at(a), one_) != a) return "1 is not a multiplicative identity at " + names_[a];
    if (add(at(a), neg(at(a))) != 0) return "missing additive inverse for " + names_[a];
    for (std::size_t b = 0; b < n; ++b) {
      if (add(at(a), at(b)) != add(at(b), at(a))) return "addition not commutative";
      if (mul(at(a), at(b)) != mul(at(b), at(a))) return "multiplication not commutative";
      for (std::size_t c = 0; c < n; ++c) {
        if (add(add(at(a), at(b)), at(c)) != add(at(a), add(at(b), at(c))))
          return "addition not associative";
        if (mul(mul(at(a), at(b)), at(c)) != mul(at(a), mul(at(b), at(c))))
          return "multiplication not associative";
        if (mul(at(a), add(at(b), at(c))) != add(mul(at(a), at(b)), mul(at(a), at(c))))
          return "distributivity fails";
      }
    }
  }
  return {};
}

// ------------------------------------------------------------------ ideals

bool Ideal::contains(elem_t a) const { return std::binary_search(elements.begin(), elements.end(), a); }

namespace {

std::vector<elem_t> additive_closure(const FiniteRing& r, std::vector<elem_t> gens) {
  std::vector<char> seen(r.size(), 0);
  std::vector<elem_t> list{0};
  seen[0] = 1;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (elem_t g : gens) {
      elem_t s = r.add(list[i], g);
      if (!seen[s]) {
        seen[s] = 1;
        list.push_back(s);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<elem_t> minimal_generators(const FiniteRing& r, const std::vector<elem_t>& elements) {
  std::vector<elem_t> gens;
  std::vector<elem_t> current{0};
  for (elem_t a : elements) {
    if (std::binary_search(current.begin(), current.end(), a)) continue;
    gens.push_back(a);
    current = ideal_generated(r, gens).elements;
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<elem_t> rest = gens;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (ideal_generated(r, rest).elements == elements)
      gens = rest;
    else
      ++i;
  }
  return gens;
}

}  // namespace

Ideal ideal_generated(const FiniteRing& r, const std::vector<elem_t>& gens) {
  std::vector<elem_t> products;
  for (elem_t g : gens)
    for (std::size_t x = 0; x < r.size(); ++x) products.push_back(r.mul(static_cast<elem_t>(x), g));
  Ideal I;
  I.generators = gens;
  I.elements = additive_closure(r, products);
  return I;
}

std::vector<Ideal> ideals(const FiniteRing& r, std::size_t cap) {
  if (r.size() > cap)
    throw RingError("ideal enumeration: cardinality " + std::to_string(r.size()) + " exceeds bound");
  std::vector<std::vector<elem_t>> found;
  auto insert = [&](std::vector<elem_t> e) {
    if (std::find(found.begin(), found.end(), e) == found.end()) {
      found.push_back(std::move(e));
      return true;
    }
    return false;
  };
  for (std::size_t a = 0; a < r.size(); ++a) insert(ideal_generated(r, {static_cast<elem_t>(a)}).elements);
  // Every ideal of a finite ring is a finite sum of principal ideals.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = found.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<elem_t> gens = found[i];
        gens.insert(gens.end(), found[j].begin(), found[j].end());
        if (insert(additive_closure(r, gens))) grew = true;
      }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Ideal> out;
  for (auto& e : found) {
    Ideal I;
    I.generators = minimal_generators(r, e);
    I.elements = std::move(e);
    out.push_back(std::move(I));
  }
  return out;
}

QuotientRing quotient_ring(const RingPtr& r, const Ideal& ideal) {
  if (ideal.size() == 1) {
    QuotientRing q{r, {}};
    q.projection.resize(r->size());
    std::iota(q.projection.begin(), q.projection.end(), elem_t{0});
    return q;
  }
  if (ideal.size() == r->size()) throw RingError("quotient by the whole ring is the zero ring");
  const std::size_t n = r->size();
  std::vector<elem_t> proj(n, 0xffff), reps;
  for (std::size_t a = 0; a < n; ++a) {
    if (proj[a] != 0xffff) continue;
    elem_t id = static_cast<elem_t>(reps.size());
    reps.push_back(static_cast<elem_t>(a));
    for (elem_t i : ideal.elements) proj[r->add(static_cast<elem_t>(a), i)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<elem_t> add(m * m), mul(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      add[x * m + y] = proj[r->add(reps[x], reps[y])];
      mul[x * m + y] = proj[r->mul(reps[x], reps[y])];
    }
  std::vector<std::string> names;
  for (elem_t rep : reps) names.push_back("[" + r->name(rep) + "]");
  std::string label = r->label() + "/(";
  for (std::size_t i = 0; i < ideal.generators.size(); ++i)
    label += (i ? "," : "") + r->name(ideal.generators[i]);
  label += ")";
  return {FiniteRing::from_tables(label, m, std::move(add), std::move(mul), proj[r->one()], std::move(names)),
          std::move(proj)};
}

// ------------------------------------------------------------- good rings

bool is_good(const FiniteRing& r, RootType type, int rank) {
  if (rank <= 1) throw RingError("root system rank must be > 1");
  const bool two = r.is_unit(r.from_int(2));
  const bool three = r.is_unit(r.from_int(3));
  switch (type) {
    case RootType::A:
      return rank >= 3 || two;
    case RootType::B:
    case RootType::C:
    case RootType::F:
      return two;
    case RootType::G:
      return two && three;
    case RootType::D:
    case RootType::E:
      return true;
  }
  return false;
}

// ------------------------------------------------------------ isomorphism

namespace {

std::vector<elem_t> subring_closure(const FiniteRing& r, const std::vector<elem_t>& gens) {
  std::vector<char> seen(r.size(), 0);
  std::vector<elem_t> list{0, r.one()};
  seen[0] = seen[r.one()] = 1;
  for (elem_t g : gens)
    if (!seen[g]) {
      seen[g] = 1;
      list.push_back(g);
    }
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = list.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (elem_t c : {r.add(list[i], list[j]), r.mul(list[i], list[j])})
          if (!seen[c]) {
            seen[c] = 1;
            list.push_back(c);
            grew = true;
          }
  }
  return list;
}

std::vector<elem_t> ring_generators(const FiniteRing& r) {
  std::vector<elem_t> gens;
  std::vector<elem_t> cur = subring_closure(r, gens);
  for (std::size_t a = 0; a < r.size() && cur.size() < r.size(); ++a) {
    if (std::find(cur.begin(), cur.end(), a) != cur.end()) continue;
    gens.push_back(static_cast<elem_t>(a));
    cur = subring_closure(r, gens);
  }
  return gens;
}

// Extends gens -> images to a ring homomorphism if consistent.
std::optional<std::vector<elem_t>> extend_map(const FiniteRing& r, const FiniteRing& s,
                                              const std::vector<elem_t>& gens,
                                              const std::vector<elem_t>& images) {
  constexpr elem_t kUnset = 0xffff;
  std::vector<elem_t> phi(r.size(), kUnset);
  std::vector<elem_t> known;
  auto set = [&](elem_t a, elem_t b) {
    if (phi[a] == kUnset) {
      phi[a] = b;
      known.push_back(a);
      return true;
    }
    return phi[a] == b;
  };
  set(0, 0);
  if (!set(r.one(), s.one())) return std::nullopt;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!set(gens[i], images[i])) return std::nullopt;
  for (std::size_t done = 0; done < known.size();) {
    const std::size_t n = known.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = (i < done ? done : 0); j < n; ++j) {
        elem_t a = known[i], b = known[j];
        if (!set(r.add(a, b), s.add(phi[a], phi[b]))) return std::nullopt;
        if (!set(r.mul(a, b), s.mul(phi[a], phi[b]))) return std::nullopt;
        if (!set(r.add(b, a), s.add(phi[b], phi[a]))) return std::nullopt;
      }
    done = n;
  }
  // Final full check over all pairs.
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b) {
      auto x = static_cast<elem_t>(a), y = static_cast<elem_t>(b);
      if (phi[r.add(x, y)] != s.add(phi[x], phi[y]) || phi[r.mul(x, y)] != s.mul(phi[x], phi[y]))
        return std::nullopt;
    }
  return phi;
}

void enumerate_maps(const FiniteRing& r, const FiniteRing& s, bool bijective_only, bool stop_first,
                    std::vector<std::vector<elem_t>>& out) {
  if (r.size() != s.size() && bijective_only) return;
  const std::vector<elem_t> gens = ring_generators(r);
  std::vector<elem_t> images(gens.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto phi = extend_map(r, s, gens, images);
      if (!phi) return false;
      if (bijective_only) {
        std::vector<char> hit(s.size(), 0);
        for (elem_t v : *phi) hit[v] = 1;
        if (std::count(hit.begin(), hit.end(), 1) != static_cast<long>(s.size())) return false;
      }
      out.push_back(std::move(*phi));
      return stop_first;
    }
    for (std::size_t v = 0; v < s.size(); ++v) {
      images[k] = static_cast<elem_t>(v);
      if (rec(k + 1)) return true;
    }
    return false;
  };
  rec(0);
}

}  // namespace

std::optional<std::vector<elem_t>> find_ring_isomorphism(const FiniteRing& r, const FiniteRing& s) {
  std::vector<std::vector<elem_t>> out;
  enumerate_maps(r, s, true, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

std::vector<std::vector<elem_t>> ring_automorphisms(const FiniteRing& r) {
  std::vector<std::vector<elem_t>> out;
  enumerate_maps(r, r, true, false, out);
  return out;
}

}  // namespace chevlab
