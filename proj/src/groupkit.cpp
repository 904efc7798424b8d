#include "chevlab/groupkit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <map>
#include <numeric>
#include <set>

#include <omp.h>

namespace chevlab {

std::size_t Group::pow(std::size_t a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  std::size_t acc = 0, base = a;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

std::size_t MatHash::operator()(const std::vector<elem_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (elem_t x : v) {
    h ^= x & 0xff;
    h *= 1099511628211ull;
    h ^= x >> 8;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

MatrixGroup::MatrixGroup(RepPtr rep, RingPtr ring, std::vector<Mat> elements, std::vector<Mat> generators)
    : rep_(std::move(rep)), ring_(std::move(ring)), elems_(std::move(elements)), gen_mats_(std::move(generators)) {
  if (elems_.empty()) throw RingError("matrix group without elements");
  dim_ = elems_[0].n;
  if (!mat_is_identity(*ring_, elems_[0])) throw RingError("matrix group must list the identity first");
  index_.reserve(elems_.size() * 2);
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (!index_.emplace(elems_[i].a, i).second) throw RingError("duplicate matrix group element");
  for (const Mat& g : gen_mats_) gens_.push_back(index_checked(g));

  const std::size_t n = elems_.size(), k = gens_.size();
  right_.assign(k, std::vector<std::size_t>(n));
  left_.assign(k, std::vector<std::size_t>(n));
  left_inv_.assign(k, std::vector<std::size_t>(n));
  std::vector<Mat> gen_inv(k);
  for (std::size_t j = 0; j < k; ++j) {
    // Generators have finite order; their inverse is the last power before 1.
    Mat p = gen_mats_[j], prev = mat_identity(*ring_, dim_);
    while (!mat_is_identity(*ring_, p)) {
      prev = p;
      p = mat_mul(*ring_, p, gen_mats_[j]);
    }
    gen_inv[j] = prev;
  }
  std::vector<int> failed(n, 0);
#pragma omp parallel for schedule(static)
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      auto r = index_of(mat_mul(*ring_, elems_[x], gen_mats_[j]));
      auto l = index_of(mat_mul(*ring_, gen_mats_[j], elems_[x]));
      auto li = index_of(mat_mul(*ring_, gen_inv[j], elems_[x]));
      if (!r || !l || !li) {
        failed[x] = 1;
        continue;
      }
      right_[j][x] = *r;
      left_[j][x] = *l;
      left_inv_[j][x] = *li;
    }
  }
  if (std::any_of(failed.begin(), failed.end(), [](int f) { return f; }))
    throw RingError("matrix group element list is not closed under the generators");

  inv_.assign(n, n);
  inv_[0] = 0;
  for (std::size_t x = 1; x < n; ++x) {
    if (inv_[x] != n) continue;
    std::vector<std::size_t> powers{x};
    Mat p = elems_[x];
    while (true) {
      p = mat_mul(*ring_, p, elems_[x]);
      std::size_t idx = index_checked(p);
      if (idx == 0) break;
      powers.push_back(idx);
    }
    // powers[i] = x^(i+1); x^o = 1.
    const std::size_t o = powers.size() + 1;
    for (std::size_t i = 0; i < powers.size(); ++i) inv_[powers[i]] = powers[o - 2 - i];
  }
}

std::string MatrixGroup::label() const {
  return (rep_ ? rep_->label() : std::string("matrix")) + " over " + ring_->label();
}

std::optional<std::size_t> MatrixGroup::index_of(const Mat& m) const {
  auto it = index_.find(m.a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MatrixGroup::index_checked(const Mat& m) const {
  auto i = index_of(m);
  if (!i) throw RingError("matrix is not an element of the group");
  return *i;
}

std::size_t MatrixGroup::mul(std::size_t a, std::size_t b) const {
  return index_checked(mat_mul(*ring_, elems_[a], elems_[b]));
}

namespace {

MatrixGroupPtr closure_impl(RepPtr rep, RingPtr ring, const std::vector<Mat>& gens, std::size_t cap,
                            bool parallel) {
  std::size_t n = rep ? rep->dim() : (gens.empty() ? 1 : gens[0].n);
  for (const Mat& g : gens)
    if (g.n != n) throw RingError("closure: generator dimension mismatch");
  std::unordered_map<std::vector<elem_t>, std::size_t, MatHash> seen;
  std::vector<Mat> list{mat_identity(*ring, n)};
  seen.emplace(list[0].a, 0);
  std::vector<std::size_t> frontier{0};
  const std::size_t k = gens.size();
  constexpr std::size_t kBlock = 4096;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t start = 0; start < frontier.size(); start += kBlock) {
      const std::size_t len = std::min(kBlock, frontier.size() - start);
      std::vector<Mat> prods(len * k);
#pragma omp parallel for schedule(static) if (parallel)
      for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < k; ++j) prods[i * k + j] = mat_mul(*ring, list[frontier[start + i]], gens[j]);
      for (Mat& p : prods) {
        if (seen.emplace(p.a, list.size()).second) {
          next.push_back(list.size());
          list.push_back(std::move(p));
          if (list.size() > cap) throw BudgetExceeded("closure exceeded cap", list.size());
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(list.begin() + 1, list.end());
  return std::make_shared<MatrixGroup>(std::move(rep), std::move(ring), std::move(list), gens);
}

}  // namespace

MatrixGroupPtr closure(RepPtr rep, RingPtr ring, const std::vector<Mat>& gens, std::size_t cap) {
  return closure_impl(std::move(rep), std::move(ring), gens, cap, true);
}

MatrixGroupPtr closure_serial(RepPtr rep, RingPtr ring, const std::vector<Mat>& gens, std::size_t cap) {
  return closure_impl(std::move(rep), std::move(ring), gens, cap, false);
}

std::vector<Mat> elementary_generators(const Representation& rep, const FiniteRing& r, bool with_torus) {
  std::vector<Mat> out;
  for (std::size_t a = 0; a < rep.roots().size(); ++a)
    for (elem_t t = 1; t < r.size(); ++t) out.push_back(rep.root_element(r, a, t));
  if (with_torus)
    for (Mat& m : rep.torus_generators(r)) out.push_back(std::move(m));
  return out;
}

MatrixGroupPtr elementary_group(RepPtr rep, RingPtr ring, bool with_torus, std::size_t cap) {
  auto gens = elementary_generators(*rep, *ring, with_torus);
  return closure(std::move(rep), std::move(ring), gens, cap);
}

TableGroup::TableGroup(std::vector<std::size_t> table, std::size_t order, std::vector<std::size_t> gens,
                       std::string label)
    : table_(std::move(table)), n_(order), gens_(std::move(gens)), label_(std::move(label)) {
  if (table_.size() != n_ * n_) throw RingError("table group: table size mismatch");
  inv_.assign(n_, n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
  for (std::size_t a = 0; a < n_; ++a)
    if (inv_[a] == n_ || mul(0, a) != a) throw RingError("table group: not a group with identity 0");
}

std::shared_ptr<TableGroup> TableGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                                          std::string label) {
  if (gens.empty()) throw RingError("from_permutations needs generators");
  const std::size_t deg = gens[0].size();
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  };
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      auto p = compose(queue[i], g);
      if (seen.insert(p).second) queue.push_back(p);
    }
  std::vector<std::vector<int>> elems(seen.begin(), seen.end());  // identity sorts first
  std::map<std::vector<int>, std::size_t> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = i;
  const std::size_t n = elems.size();
  std::vector<std::size_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = idx.at(compose(elems[a], elems[b]));
  std::vector<std::size_t> gi;
  for (const auto& g : gens) gi.push_back(idx.at(g));
  return std::make_shared<TableGroup>(std::move(table), n, std::move(gi), std::move(label));
}

std::shared_ptr<TableGroup> TableGroup::cyclic(std::size_t n) {
  std::vector<std::size_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return std::make_shared<TableGroup>(std::move(table), n, std::vector<std::size_t>{n > 1 ? 1u : 0u},
                                      "C" + std::to_string(n));
}

std::shared_ptr<TableGroup> TableGroup::of(const Group& g, std::string label) {
  const std::size_t n = g.order();
  std::vector<std::size_t> table(n * n);
#pragma omp parallel for schedule(static)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = g.mul(a, b);
  return std::make_shared<TableGroup>(std::move(table), n, g.generators(), std::move(label));
}

bool Subgroup::subset_of(const Subgroup& o) const {
  return std::all_of(elements.begin(), elements.end(), [&](std::size_t x) { return o.contains(x); });
}

namespace {

void finalize(Subgroup& h) {
  h.elements.clear();
  for (std::size_t i = 0; i < h.mask.size(); ++i)
    if (h.mask[i]) h.elements.push_back(i);
}

// Adds s to h (as a generator) and recloses.
void extend(const Group& g, Subgroup& h, std::size_t s) {
  if (h.mask[s]) return;
  h.gens.push_back(s);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < h.mask.size(); ++i)
    if (h.mask[i]) queue.push_back(i);
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t gen : h.gens) {
      std::size_t y = g.mul(queue[q], gen);
      if (!h.mask[y]) {
        h.mask[y] = true;
        queue.push_back(y);
      }
    }
}

}  // namespace

Subgroup trivial_subgroup(const Group& g) {
  Subgroup h;
  h.mask.assign(g.order(), false);
  h.mask[0] = true;
  h.elements = {0};
  return h;
}

Subgroup whole_group(const Group& g) {
  Subgroup h;
  h.mask.assign(g.order(), true);
  h.gens = g.generators();
  finalize(h);
  return h;
}

Subgroup subgroup_generated(const Group& g, const std::vector<std::size_t>& gens) {
  Subgroup h = trivial_subgroup(g);
  for (std::size_t s : gens) extend(g, h, s);
  finalize(h);
  return h;
}

Subgroup subgroup_from_mask(const Group& g, const std::vector<bool>& mask) {
  Subgroup h = trivial_subgroup(g);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) extend(g, h, i);
  finalize(h);
  if (h.mask != mask) throw RingError("subgroup_from_mask: set is not a subgroup");
  return h;
}

bool is_normal(const Group& g, const Subgroup& h) {
  for (std::size_t x : h.gens)
    for (std::size_t k = 0; k < g.generators().size(); ++k)
      if (!h.contains(g.conj_gen(x, k))) return false;
  return true;
}

Subgroup center(const Group& g) {
  const std::size_t n = g.order(), k = g.generators().size();
  std::vector<char> central(n, 1);
#pragma omp parallel for schedule(static)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < k; ++j)
      if (g.right_gen(x, j) != g.left_gen(j, x)) {
        central[x] = 0;
        break;
      }
  Subgroup h = trivial_subgroup(g);
  for (std::size_t x = 0; x < n; ++x)
    if (central[x]) extend(g, h, x);
  finalize(h);
  return h;
}

Subgroup centralizer(const Group& g, const std::vector<std::size_t>& s) {
  const std::size_t n = g.order();
  std::vector<char> ok(n, 1);
#pragma omp parallel for schedule(static)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : s)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok[x] = 0;
        break;
      }
  Subgroup h = trivial_subgroup(g);
  for (std::size_t x = 0; x < n; ++x)
    if (ok[x]) extend(g, h, x);
  finalize(h);
  return h;
}

Subgroup normal_closure(const Group& g, const std::vector<std::size_t>& s) {
  Subgroup h = trivial_subgroup(g);
  for (std::size_t x : s) extend(g, h, x);
  for (std::size_t i = 0; i < h.gens.size(); ++i)
    for (std::size_t k = 0; k < g.generators().size(); ++k) extend(g, h, g.conj_gen(h.gens[i], k));
  finalize(h);
  return h;
}

Subgroup derived_subgroup(const Group& g) {
  std::vector<std::size_t> cs;
  const auto& gens = g.generators();
  for (std::size_t a : gens)
    for (std::size_t b : gens) cs.push_back(g.comm(a, b));
  return normal_closure(g, cs);
}

Subgroup derived_of(const Group& g, const Subgroup& k) {
  Subgroup h = trivial_subgroup(g);
  for (std::size_t a : k.gens)
    for (std::size_t b : k.gens) extend(g, h, g.comm(a, b));
  for (std::size_t i = 0; i < h.gens.size(); ++i)
    for (std::size_t c : k.gens) extend(g, h, g.conj(h.gens[i], c));
  finalize(h);
  return h;
}

ConjugacyClasses conjugacy_classes(const Group& g) {
  const std::size_t n = g.order(), k = g.generators().size();
  ConjugacyClasses out;
  out.class_of.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (out.class_of[x] != n) continue;
    const std::size_t id = out.classes.size();
    std::vector<std::size_t> orbit{x};
    out.class_of[x] = id;
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t y = g.conj_gen(orbit[q], j);
        if (out.class_of[y] == n) {
          out.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.classes.push_back(std::move(orbit));
  }
  return out;
}

std::size_t element_order(const Group& g, std::size_t x) {
  std::size_t o = 1;
  for (std::size_t p = x; p != 0; p = g.mul(p, x)) ++o;
  return o;
}

std::vector<std::size_t> element_order_histogram(const Group& g) {
  auto cc = conjugacy_classes(g);
  std::vector<std::size_t> hist;
  for (const auto& c : cc.classes) {
    std::size_t o = element_order(g, c[0]);
    if (hist.size() <= o) hist.resize(o + 1, 0);
    hist[o] += c.size();
  }
  return hist;
}

QuotientGroup::QuotientGroup(GroupPtr parent, const Subgroup& n) : parent_(std::move(parent)) {
  if (!is_normal(*parent_, n)) throw RingError("quotient_group: subgroup is not normal");
  const std::size_t order = parent_->order();
  coset_.assign(order, order);
  for (std::size_t x = 0; x < order; ++x) {
    if (coset_[x] != order) continue;
    const std::size_t c = reps_.size();
    reps_.push_back(x);
    for (std::size_t y : n.elements) {
      std::size_t z = parent_->mul(x, y);
      if (coset_[z] != order && coset_[z] != c) throw RingError("quotient_group: cosets overlap");
      coset_[z] = c;
    }
  }
  if (reps_.size() * n.size() != order) throw RingError("quotient_group: index mismatch");
  std::set<std::size_t> seen;
  for (std::size_t g : parent_->generators())
    if (seen.insert(coset_[g]).second) gens_.push_back(coset_[g]);
}

std::size_t QuotientGroup::mul(std::size_t a, std::size_t b) const {
  return coset_[parent_->mul(reps_[a], reps_[b])];
}

std::size_t QuotientGroup::inv(std::size_t a) const { return coset_[parent_->inv(reps_[a])]; }

std::shared_ptr<QuotientGroup> quotient_group(GroupPtr g, const Subgroup& n) {
  return std::make_shared<QuotientGroup>(std::move(g), n);
}

std::shared_ptr<QuotientGroup> central_quotient(GroupPtr g) {
  Subgroup z = center(*g);
  return quotient_group(std::move(g), z);
}

std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t bound, std::size_t max_subgroups) {
  if (g.order() > bound) throw BudgetExceeded("normal_subgroups: group exceeds bound", g.order());
  auto cc = conjugacy_classes(g);
  std::vector<Subgroup> found;
  std::set<std::vector<std::size_t>> keys;
  auto add = [&](Subgroup h) {
    if (!keys.insert(h.elements).second) return false;
    found.push_back(std::move(h));
    if (found.size() > max_subgroups) throw BudgetExceeded("normal_subgroups: too many subgroups", found.size());
    return true;
  };
  for (const auto& c : cc.classes) add(normal_closure(g, {c[0]}));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (found[i].subset_of(found[j]) || found[j].subset_of(found[i])) continue;
      std::vector<std::size_t> gens = found[i].gens;
      gens.insert(gens.end(), found[j].gens.begin(), found[j].gens.end());
      add(subgroup_generated(g, gens));
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  return found;
}

MinimalEResult minimal_E(const Group& g, const std::vector<Subgroup>& normals) {
  MinimalEResult out;
  auto cc = conjugacy_classes(g);
  for (const auto& k : normals) {
    if (k.size() == 1) continue;
    if (!(derived_of(g, k) == k)) continue;
    if (centralizer(g, k.gens).size() != 1) continue;
    bool single = false;
    for (const auto& c : cc.classes)
      if (k.contains(c[0]) && normal_closure(g, {c[0]}).size() == k.size()) {
        single = true;
        break;
      }
    if (single) out.candidates.push_back(k);
  }
  if (out.candidates.empty()) {
    out.diagnosis = "no subgroup is normally generated by one element, perfect, and self-centralizing";
    return out;
  }
  std::vector<const Subgroup*> minimal;
  for (const auto& a : out.candidates) {
    bool has_smaller = false;
    for (const auto& b : out.candidates)
      if (b.size() < a.size() && b.subset_of(a)) has_smaller = true;
    if (!has_smaller) minimal.push_back(&a);
  }
  if (minimal.size() != 1) {
    out.diagnosis = std::to_string(minimal.size()) + " inclusion-minimal candidates";
    return out;
  }
  for (const auto& b : out.candidates)
    if (!minimal[0]->subset_of(b)) {
      out.diagnosis = "minimal candidate is not contained in every candidate";
      return out;
    }
  out.k = *minimal[0];
  return out;
}

namespace {

// Closes a mask under conjugation by unioning classes.
void close_under_classes(const ConjugacyClasses& cc, std::vector<bool>& mask) {
  std::vector<bool> hit(cc.classes.size(), false);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) hit[cc.class_of[i]] = true;
  for (std::size_t c = 0; c < cc.classes.size(); ++c)
    if (hit[c])
      for (std::size_t x : cc.classes[c]) mask[x] = true;
}

}  // namespace

std::vector<bool> commutator_set(const Group& g) {
  auto cc = conjugacy_classes(g);
  const std::size_t n = g.order();
  std::vector<std::vector<std::size_t>> hits(cc.classes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < cc.classes.size(); ++c) {
    std::size_t ai = g.inv(cc.classes[c][0]);
    for (std::size_t b : cc.classes[c]) hits[c].push_back(g.mul(ai, b));
  }
  std::vector<bool> mask(n, false);
  for (const auto& h : hits)
    for (std::size_t x : h) mask[x] = true;
  close_under_classes(cc, mask);
  return mask;
}

std::vector<bool> power_set(const Group& g, long m) {
  auto cc = conjugacy_classes(g);
  std::vector<bool> mask(g.order(), false);
  for (const auto& c : cc.classes) mask[g.pow(c[0], m)] = true;
  close_under_classes(cc, mask);
  return mask;
}

std::vector<bool> xm_set(const Group& g, long m, const std::vector<std::size_t>& extras) {
  std::vector<bool> mask = commutator_set(g);
  std::vector<bool> p = power_set(g, m);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] || p[i];
  for (std::size_t x : extras) mask[x] = true;
  return mask;
}

namespace {

BoundedGeneration bounded_generation_impl(const Group& g, const std::vector<bool>& x, int n, bool fast) {
  const std::size_t order = g.order();
  BoundedGeneration out;
  out.length.assign(order, -1);
  out.length[0] = 0;
  std::vector<std::size_t> xs;
  for (std::size_t i = 0; i < order; ++i)
    if (x[i]) xs.push_back(i);

  std::optional<ConjugacyClasses> cc;
  if (fast) {
    bool invariant = true;
    for (std::size_t y : xs)
      for (std::size_t k = 0; k < g.generators().size() && invariant; ++k)
        if (!x[g.conj_gen(y, k)]) invariant = false;
    if (invariant) cc = conjugacy_classes(g);
  }

  std::vector<std::size_t> frontier{0};
  for (int step = 1; step <= n && !frontier.empty(); ++step) {
    std::vector<std::size_t> sources;
    if (cc) {
      std::set<std::size_t> seen_class;
      for (std::size_t s : frontier)
        if (seen_class.insert(cc->class_of[s]).second) sources.push_back(s);
    } else {
      sources = frontier;
    }
    std::vector<std::vector<std::size_t>> prods(sources.size());
#pragma omp parallel for schedule(dynamic) if (fast)
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (std::size_t y : xs) {
        std::size_t p = g.mul(sources[i], y);
        if (out.length[p] == -1) prods[i].push_back(p);
      }
    std::vector<std::size_t> next;
    for (const auto& ps : prods)
      for (std::size_t p : ps) {
        if (out.length[p] != -1) continue;
        if (cc) {
          for (std::size_t z : cc->classes[cc->class_of[p]]) {
            out.length[z] = step;
            next.push_back(z);
          }
        } else {
          out.length[p] = step;
          next.push_back(p);
        }
      }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  out.generated = std::all_of(out.length.begin(), out.length.end(), [](int v) { return v >= 0; });
  for (int v : out.length)
    if (v >= 0) {
      if (out.histogram.size() <= static_cast<std::size_t>(v)) out.histogram.resize(v + 1, 0);
      ++out.histogram[v];
    }
  return out;
}

}  // namespace

BoundedGeneration bounded_generation(const Group& g, const std::vector<bool>& x, int n) {
  return bounded_generation_impl(g, x, n, true);
}

BoundedGeneration bounded_generation_serial(const Group& g, const std::vector<bool>& x, int n) {
  return bounded_generation_impl(g, x, n, false);
}

std::vector<OmegaWord> word_set_omega(int n, int l, long m, std::size_t cap) {
  if (n < 1) throw RingError("word_set_omega: N must be >= 1");
  const std::size_t alphabet = 2 + static_cast<std::size_t>(l);
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= alphabet;
    if (count > cap) throw BudgetExceeded("word_set_omega: too many words", count);
  }
  std::vector<OmegaWord> out;
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t w = 0; w < count; ++w) {
    OmegaWord word;
    int v = 0;
    for (int i = 0; i < n; ++i) {
      std::size_t d = digits[i];
      if (!word.term.empty()) word.term += "*";
      if (d == 0) {
        word.letters += "c";
        word.term += "[v" + std::to_string(v + 1) + ",v" + std::to_string(v + 2) + "]";
        v += 2;
      } else if (d == 1) {
        word.letters += "d";
        word.term += "v" + std::to_string(v + 1) + "^" + std::to_string(m);
        v += 1;
      } else {
        word.letters += "x" + std::to_string(d - 1);
        word.term += "x" + std::to_string(d - 1);
      }
    }
    word.variables = v;
    out.push_back(std::move(word));
    for (int i = n; i-- > 0;) {
      if (++digits[i] < alphabet) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::uint64_t group_cache_key(const std::string& rep_label, const std::string& ring_label,
                              const std::vector<std::string>& generator_lines) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x0a;
    h *= 1099511628211ull;
  };
  feed(rep_label);
  feed(ring_label);
  for (const auto& g : generator_lines) feed(g);
  return h;
}

void write_group_cache(const std::string& path, const MatrixGroup& g) {
  const FiniteRing& r = *g.ring();
  if (!r.spec()) throw RingError("group cache: ring has no spec");
  const std::string rep = g.rep() ? g.rep()->label() : "none";
  const std::string ring = r.spec()->to_string();
  std::vector<std::string> gens;
  for (const Mat& m : g.generator_matrices()) gens.push_back(mat_to_line(r, m));
  std::ofstream out(path);
  if (!out) throw RingError("group cache: cannot write " + path);
  char key[17];
  std::snprintf(key, sizeof key, "%016llx",
                static_cast<unsigned long long>(group_cache_key(rep, ring, gens)));
  out << "chevlab-group 1\n" << rep << "\n" << ring << "\n" << g.dim() << "\n" << key << "\n";
  out << gens.size() << "\n";
  for (const auto& l : gens) out << l << "\n";
  out << g.order() << "\n";
  for (std::size_t i = 0; i < g.order(); ++i) out << mat_to_line(r, g.element(i)) << "\n";
  if (!out) throw RingError("group cache: write failed for " + path);
}

MatrixGroupPtr read_group_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingError("group cache: cannot read " + path);
  std::string magic, rep, ring, dim_line, key, line;
  std::getline(in, magic);
  if (magic != "chevlab-group 1") throw RingError("group cache: bad header in " + path);
  std::getline(in, rep);
  std::getline(in, ring);
  std::getline(in, dim_line);
  std::getline(in, key);
  RingPtr r = FiniteRing::parse(ring);
  RepPtr rp;
  if (rep != "none") {
    auto slash = rep.find('/');
    if (slash == std::string::npos) throw RingError("group cache: bad rep label " + rep);
    auto phi = std::make_shared<const RootSystem>(RootSystem::parse(rep.substr(0, slash)));
    rp = Representation::make(phi, parse_lattice(rep.substr(slash + 1)));
  }
  std::size_t count = 0;
  std::getline(in, line);
  count = std::stoul(line);
  std::vector<std::string> gen_lines(count);
  std::vector<Mat> gens;
  for (auto& l : gen_lines) {
    std::getline(in, l);
    gens.push_back(mat_from_line(*r, l));
  }
  char expect[17];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(group_cache_key(rep, ring, gen_lines)));
  if (key != expect) throw RingError("group cache: key mismatch in " + path);
  std::getline(in, line);
  count = std::stoul(line);
  std::vector<Mat> elems;
  elems.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw RingError("group cache: truncated " + path);
    elems.push_back(mat_from_line(*r, line));
  }
  auto g = std::make_shared<const MatrixGroup>(rp, r, std::move(elems), std::move(gens));
  if (g->dim() != std::stoul(dim_line)) throw RingError("group cache: dimension mismatch");
  return g;
}

}  // namespace chevlab
