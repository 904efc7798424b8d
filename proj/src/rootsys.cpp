#include "chevlab/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>

namespace chevlab {

namespace {

// Simple-root Gram matrices with the shortest roots of length 2.
std::vector<std::vector<int>> gram_matrix(RootType type, int l) {
  if (l <= 1) throw RingError("root system rank must be > 1");
  std::vector<std::vector<int>> g(l, std::vector<int>(l, 0));
  auto chain = [&](int len, int off) {
    for (int i = 0; i < l; ++i) g[i][i] = len;
    for (int i = 0; i + 1 < l; ++i) g[i][i + 1] = g[i + 1][i] = off;
  };
  switch (type) {
    case RootType::A:
      chain(2, -1);
      break;
    case RootType::B:
      chain(4, -2);
      g[l - 1][l - 1] = 2;
      break;
    case RootType::C:
      chain(2, -1);
      g[l - 1][l - 1] = 4;
      g[l - 2][l - 1] = g[l - 1][l - 2] = -2;
      break;
    case RootType::D:
      if (l < 3) throw RingError("D_l requires rank >= 3");
      chain(2, -1);
      g[l - 2][l - 1] = g[l - 1][l - 2] = 0;
      g[l - 3][l - 1] = g[l - 1][l - 3] = -1;
      break;
    case RootType::E: {
      if (l < 6 || l > 8) throw RingError("E_l requires rank 6, 7 or 8");
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      // Bourbaki numbering: 1-3-4-5-...-l with 2 attached to 4.
      auto link = [&](int a, int b) { g[a - 1][b - 1] = g[b - 1][a - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int i = 4; i < l; ++i) link(i, i + 1);
      break;
    }
    case RootType::F:
      if (l != 4) throw RingError("F requires rank 4");
      g = {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
      break;
    case RootType::G:
      if (l != 2) throw RingError("G requires rank 2");
      g = {{2, -3}, {-3, 6}};
      break;
  }
  return g;
}

struct Frac {
  long num = 0, den = 1;
  Frac() = default;
  Frac(long n, long d = 1) : num(n), den(d) { norm(); }
  void norm() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
};

using IMat = std::vector<long>;  // dense square, row-major

IMat imul(const IMat& a, const IMat& b, std::size_t n) {
  IMat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long v = a[i * n + k];
      if (!v) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += v * b[k * n + j];
    }
  return c;
}

IMat iidentity(std::size_t n) {
  IMat m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

// exp(t * X) for nilpotent integer X; exact division by k! is checked.
IMat iexp(const IMat& x, long t, std::size_t n) {
  IMat out = iidentity(n), power = iidentity(n);
  long fact = 1;
  for (long k = 1; k <= static_cast<long>(n); ++k) {
    power = imul(power, x, n);
    bool zero = std::all_of(power.begin(), power.end(), [](long v) { return v == 0; });
    if (zero) break;
    fact *= k;
    long tk = 1;
    for (long i = 0; i < k; ++i) tk *= t;
    for (std::size_t i = 0; i < n * n; ++i) {
      long v = power[i] * tk;
      if (v % fact != 0) throw RingError("exp(ad e) is not integral");
      out[i] += v / fact;
    }
  }
  return out;
}

IMat ad_matrix(const ChevalleyBasis& cb, std::size_t a) {
  const std::size_t n = cb.dim;
  IMat m(n * n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [k, c] : cb.br(a, j)) m[k * n + j] += c;
  return m;
}

}  // namespace

RootSystem::RootSystem(RootType type, int rank) : type_(type), rank_(rank) {
  gram_ = gram_matrix(type, rank);
  build_roots();
  build_structure_constants();
  build_commutator_and_weyl_tables();
}

RootSystem RootSystem::parse(std::string_view label) {
  if (label.size() < 2) throw RingError("bad root system label '" + std::string(label) + "'");
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  if (std::string("ABCDEFG").find(t) == std::string::npos)
    throw RingError("bad root system type '" + std::string(label) + "'");
  int rank = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i])))
      throw RingError("bad root system label '" + std::string(label) + "'");
    rank = rank * 10 + (label[i] - '0');
  }
  return RootSystem(static_cast<RootType>(t), rank);
}

std::string RootSystem::label() const { return std::string(1, static_cast<char>(type_)) + std::to_string(rank_); }

int RootSystem::inner(const Root& a, const Root& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
  return s;
}

void RootSystem::build_roots() {
  std::set<Root> found;
  std::vector<Root> queue;
  for (int i = 0; i < rank_; ++i) {
    Root r(rank_, 0);
    r[i] = 1;
    found.insert(r);
    queue.push_back(r);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int i = 0; i < rank_; ++i) {
      Root ai(rank_, 0);
      ai[i] = 1;
      Root r = reflect(ai, queue[q]);
      if (found.insert(r).second) queue.push_back(r);
    }
  }
  std::vector<Root> pos;
  for (const auto& r : found)
    if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) pos.push_back(r);
  std::sort(pos.begin(), pos.end(), [](const Root& a, const Root& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
    return ha != hb ? ha < hb : a > b;
  });
  roots_ = pos;
  for (const auto& r : pos) {
    Root n = r;
    for (auto& c : n) c = -c;
    roots_.push_back(n);
  }
  if (roots_.size() != found.size()) throw RingError("root closure produced non-signed roots");
  for (std::size_t k = 0; k < roots_.size(); ++k) index_[roots_[k]] = k;
  const std::size_t np = pos.size();
  neg_.resize(roots_.size());
  for (std::size_t k = 0; k < roots_.size(); ++k) neg_[k] = k < np ? k + np : k - np;
  pairing_.resize(roots_.size() * roots_.size());
  for (std::size_t b = 0; b < roots_.size(); ++b)
    for (std::size_t a = 0; a < roots_.size(); ++a)
      pairing_[b * roots_.size() + a] = 2 * inner(roots_[b], roots_[a]) / inner(roots_[a], roots_[a]);
}

std::optional<std::size_t> RootSystem::index_of(const Root& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::index_checked(const Root& r) const {
  auto k = index_of(r);
  if (!k) throw RingError("not a root");
  return *k;
}

int RootSystem::height(std::size_t k) const {
  return std::accumulate(roots_[k].begin(), roots_[k].end(), 0);
}

bool RootSystem::is_long(std::size_t k) const {
  int mx = 0;
  for (const auto& r : roots_) mx = std::max(mx, inner(r, r));
  return inner(roots_[k], roots_[k]) == mx;
}

std::pair<int, int> RootSystem::string(std::size_t a, std::size_t b) const {
  const Root &ra = roots_[a], &rb = roots_[b];
  auto shifted = [&](int k) {
    Root r = rb;
    for (int i = 0; i < rank_; ++i) r[i] += k * ra[i];
    return r;
  };
  int p = 0, q = 0;
  while (index_of(shifted(-(p + 1)))) ++p;
  while (index_of(shifted(q + 1))) ++q;
  return {p, q};
}

std::vector<int> RootSystem::coroot(std::size_t k) const {
  const Root& r = roots_[k];
  int len = inner(r, r);
  std::vector<int> c(rank_);
  for (int i = 0; i < rank_; ++i) c[i] = r[i] * gram_[i][i] / len;
  return c;
}

Root RootSystem::reflect(const Root& alpha, const Root& beta) const {
  int p = 2 * inner(beta, alpha) / inner(alpha, alpha);
  Root r = beta;
  for (int i = 0; i < rank_; ++i) r[i] -= p * alpha[i];
  return r;
}

std::optional<std::size_t> RootSystem::sum_index(std::size_t a, std::size_t b) const {
  Root s = roots_[a];
  for (int i = 0; i < rank_; ++i) s[i] += roots_[b][i];
  return index_of(s);
}

void RootSystem::build_structure_constants() {
  const std::size_t n = size(), np = num_positive();
  std::map<std::pair<std::size_t, std::size_t>, long> special;
  auto len = [&](std::size_t k) { return inner(roots_[k], roots_[k]); };

  std::function<long(std::size_t, std::size_t)> N = [&](std::size_t a, std::size_t b) -> long {
    auto s = sum_index(a, b);
    if (!s) return 0;
    bool pa = is_positive(a), pb = is_positive(b);
    if (pa && pb) return a < b ? special.at({a, b}) : -N(b, a);
    if (!pa && !pb) return -N(neg_[a], neg_[b]);
    std::size_t c = neg_[*s];  // a + b + c = 0
    if (is_positive(b) == is_positive(c)) {
      long v = len(c) * N(b, c);
      if (v % len(a)) throw RingError("structure constant not integral");
      return v / len(a);
    }
    long v = len(c) * N(c, a);
    if (v % len(b)) throw RingError("structure constant not integral");
    return v / len(b);
  };

  // Positive roots are already sorted by height, so lower sums are ready.
  for (std::size_t xi = 0; xi < np; ++xi) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < np; ++a) {
      Root d = roots_[xi];
      for (int i = 0; i < rank_; ++i) d[i] -= roots_[a][i];
      auto b = index_of(d);
      if (b && is_positive(*b) && a < *b) pairs.emplace_back(a, *b);
    }
    if (pairs.empty()) continue;
    auto [ea, eb] = pairs.front();  // extraspecial: smallest first root
    special[{ea, eb}] = string(ea, eb).first + 1;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      auto [a, b] = pairs[k];
      Frac total;
      std::size_t na = neg_[a], nb = neg_[b];
      if (auto s = sum_index(eb, na)) total = total + Frac(N(eb, na) * N(ea, nb), len(*s));
      if (auto s = sum_index(ea, na)) total = total + Frac(N(na, ea) * N(eb, nb), len(*s));
      Frac v = total * Frac(len(xi), special.at({ea, eb}));
      if (v.den != 1) throw RingError("structure constant not integral");
      special[{a, b}] = v.num;
    }
  }

  n_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      n_[a * n + b] = N(a, b);
      if (sum_index(a, b)) {
        long expect = string(a, b).first + 1;
        if (std::abs(n_[a * n + b]) != expect) throw RingError("structure constant magnitude defect");
      }
    }
}

void RootSystem::corrupt_structure_constant(std::size_t a, std::size_t b) {
  const std::size_t n = size();
  if (!sum_index(a, b)) return;
  auto flip = [&](std::size_t x, std::size_t y) { n_[x * n + y] = -n_[x * n + y]; };
  flip(a, b);
  flip(b, a);
  flip(neg_[a], neg_[b]);
  flip(neg_[b], neg_[a]);
}

ChevalleyBasis chevalley_basis(const RootSystem& phi) {
  const std::size_t nr = phi.size(), l = static_cast<std::size_t>(phi.rank());
  ChevalleyBasis cb;
  cb.dim = nr + l;
  cb.bracket.assign(cb.dim * cb.dim, {});
  for (std::size_t a = 0; a < nr; ++a) {
    for (std::size_t b = 0; b < nr; ++b) {
      if (b == phi.negative_of(a)) {
        auto co = phi.coroot(a);
        for (std::size_t i = 0; i < l; ++i)
          if (co[i]) cb.bracket[a * cb.dim + b].emplace_back(nr + i, co[i]);
      } else if (auto s = phi.sum_index(a, b)) {
        cb.bracket[a * cb.dim + b].emplace_back(*s, phi.structure_constant(a, b));
      }
    }
    for (std::size_t i = 0; i < l; ++i) {
      int p = phi.pairing(a, phi.simple(static_cast<int>(i)));
      if (p) {
        cb.bracket[(nr + i) * cb.dim + a].emplace_back(a, p);
        cb.bracket[a * cb.dim + nr + i].emplace_back(a, -p);
      }
    }
  }
  return cb;
}

std::string check_jacobi(const ChevalleyBasis& cb) {
  const std::size_t n = cb.dim;
  auto bracket_vec = [&](const std::vector<std::pair<std::size_t, long>>& v, std::size_t z) {
    std::vector<long> out(n, 0);
    for (auto [k, c] : v)
      for (auto [m, d] : cb.br(k, z)) out[m] += c * d;
    return out;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        // [[x,y],z] + [[y,z],x] + [[z,x],y]
        auto a = bracket_vec(cb.br(x, y), z);
        auto b = bracket_vec(cb.br(y, z), x);
        auto c = bracket_vec(cb.br(z, x), y);
        for (std::size_t m = 0; m < n; ++m)
          if (a[m] + b[m] + c[m] != 0)
            return "Jacobi fails on basis triple (" + std::to_string(x) + "," + std::to_string(y) + "," +
                   std::to_string(z) + ")";
      }
  return {};
}

void RootSystem::build_commutator_and_weyl_tables() {
  const std::size_t nr = size();
  ChevalleyBasis cb = chevalley_basis(*this);
  const std::size_t n = cb.dim;
  std::vector<IMat> ad(nr);
  for (std::size_t a = 0; a < nr; ++a) ad[a] = ad_matrix(cb, a);
  std::vector<IMat> xp(nr), xm(nr);
  for (std::size_t a = 0; a < nr; ++a) {
    xp[a] = iexp(ad[a], 1, n);
    xm[a] = iexp(ad[a], -1, n);
  }

  // Position where ad e_g has a nonzero entry, for peeling.
  auto probe = [&](std::size_t g) {
    for (std::size_t i = 0; i < n * n; ++i)
      if (ad[g][i] == 1 || ad[g][i] == -1) return i;
    for (std::size_t i = 0; i < n * n; ++i)
      if (ad[g][i]) return i;
    throw RingError("zero ad matrix");
  };

  comm_.assign(nr * nr, {});
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      if (b == a || b == neg_[a]) continue;
      std::vector<std::tuple<int, int, std::size_t>> terms;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          Root r(rank_);
          for (int k = 0; k < rank_; ++k) r[k] = i * roots_[a][k] + j * roots_[b][k];
          if (auto g = index_of(r)) terms.emplace_back(i, j, *g);
        }
      std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        int sx = std::get<0>(x) + std::get<1>(x), sy = std::get<0>(y) + std::get<1>(y);
        return sx != sy ? sx < sy : std::get<0>(x) < std::get<0>(y);
      });
      IMat v = imul(imul(xm[a], xm[b], n), imul(xp[a], xp[b], n), n);
      std::vector<CommutatorTerm> out;
      for (auto [i, j, g] : terms) {
        std::size_t pos = probe(g);
        if (v[pos] % ad[g][pos]) throw RingError("commutator coefficient not integral");
        long c = v[pos] / ad[g][pos];
        if (c) v = imul(iexp(ad[g], -c, n), v, n);
        out.push_back({i, j, c});
      }
      if (v != iidentity(n)) throw RingError("commutator peeling left a remainder");
      comm_[a * nr + b] = std::move(out);
    }

  weyl_sign_.assign(nr * nr, 0);
  for (std::size_t a = 0; a < nr; ++a) {
    std::size_t na = neg_[a];
    IMat w = imul(imul(xp[a], xm[na], n), xp[a], n);
    IMat winv = imul(imul(xm[a], xp[na], n), xm[a], n);
    for (std::size_t b = 0; b < nr; ++b) {
      IMat conj = imul(imul(w, ad[b], n), winv, n);
      std::size_t sb = index_checked(reflect(roots_[a], roots_[b]));
      int sign = 0;
      for (std::size_t i = 0; i < n * n && !sign; ++i)
        if (ad[sb][i]) sign = conj[i] == ad[sb][i] ? 1 : -1;
      for (std::size_t i = 0; i < n * n; ++i)
        if (conj[i] != sign * ad[sb][i]) throw RingError("Weyl conjugation defect");
      weyl_sign_[a * nr + b] = sign;
    }
  }
}

std::vector<CommutatorTerm> RootSystem::commutator_coeffs(std::size_t a, std::size_t b) const {
  if (b == a || b == neg_[a]) throw RingError("commutator_coeffs: proportional roots");
  return comm_[a * size() + b];
}

std::pair<std::size_t, int> RootSystem::weyl_action(const std::vector<int>& word, std::size_t b) const {
  int sign = 1;
  for (std::size_t k = word.size(); k-- > 0;) {
    std::size_t a = simple(word[k]);
    sign *= weyl_sign(a, b);
    b = index_checked(reflect(roots_[a], roots_[b]));
  }
  return {b, sign};
}

}  // namespace chevlab
