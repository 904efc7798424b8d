#include <algorithm>
#include <set>
#include <unordered_map>

#include "chevlab/folang.hpp"

namespace chevlab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

bool MasterReport::all_pass() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const ItemResult& r) {
    return r.verdict == Verdict::Pass || r.verdict == Verdict::Skipped;
  });
}

const ItemResult* MasterReport::item(int k) const {
  for (const auto& r : items)
    if (r.item == k) return &r;
  return nullptr;
}

Tagging tag_matrix_group(MatrixGroupPtr g, bool projective, std::vector<elem_t> twist) {
  if (!g->rep()) throw RingError("tagging needs a group built from a representation");
  const FiniteRing& r = *g->ring();
  if (!twist.empty()) {
    if (twist.size() != r.size()) throw RingError("twist has the wrong size");
    for (elem_t a = 0; a < r.size(); ++a)
      for (elem_t b = 0; b < r.size(); ++b)
        if (twist[r.add(a, b)] != r.add(twist[a], twist[b]) || twist[r.mul(a, b)] != r.mul(twist[a], twist[b]))
          throw RingError("twist is not a ring endomorphism");
    if (twist[r.one()] != r.one()) throw RingError("twist does not fix 1");
  }
  Tagging t;
  t.matrices = g;
  t.twist = std::move(twist);
  if (projective) {
    t.quotient = central_quotient(g);
    t.group = t.quotient;
  } else {
    t.group = g;
  }
  return t;
}

std::optional<std::size_t> Tagging::root_image(std::size_t b, elem_t t) const {
  const elem_t s = twist.empty() ? t : twist[t];
  auto idx = matrices->index_of(rep().root_element(ring(), b, s));
  if (!idx) return std::nullopt;
  return from_matrix_index(*idx);
}

std::vector<std::size_t> honest_params(const Tagging& tags) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < tags.rep().roots().size(); ++b) {
    auto x = tags.root_image(b, tags.ring().one());
    if (!x) throw RingError("root element outside the tagged group");
    out.push_back(*x);
  }
  return out;
}

Relation oracle_root_subgroup(const Tagging& tags, std::size_t b) {
  if (!tags.matrices || !tags.group) throw RingError("structure is not construction-tagged");
  std::vector<bool> mask(tags.group->order(), false);
  for (elem_t t = 0; t < tags.ring().size(); ++t) {
    auto x = tags.root_image(b, t);
    if (!x) throw RingError("root element outside the tagged group");
    mask[*x] = true;
  }
  return Relation::unary(std::move(mask));
}

CandidateCheck check_candidate_formula(const Structure& s, const Formula& candidate, const Relation& oracle) {
  std::vector<std::string> vars;
  for (const auto& n : free_names(candidate))
    if (!s.constants.count(n)) vars.push_back(n);
  if (vars.size() != 1) throw RingError("candidate formula must have exactly one free variable");
  Evaluator ev(s, candidate, vars);
  CandidateCheck out;
  for (std::size_t x = 0; x < s.group->order(); ++x)
    if (ev.eval({x}) != oracle.contains(&x)) {
      out.witness = x;
      return out;
    }
  out.equal = true;
  return out;
}

RecoveredRing ring_recovery(const Tagging& tags, std::size_t b) {
  RecoveredRing out;
  const FiniteRing& r = tags.ring();
  const Group& g = *tags.group;
  const std::size_t n = r.size();
  std::unordered_map<std::size_t, elem_t> back;
  for (elem_t t = 0; t < n; ++t) {
    auto x = tags.root_image(b, t);
    if (!x) {
      out.failure = "x(" + r.name(t) + ") is not in the group";
      return out;
    }
    if (!back.emplace(*x, t).second) {
      out.failure = "parameterization is not injective at " + r.name(t);
      return out;
    }
    out.to_group.push_back(*x);
  }
  if (out.to_group[0] != g.identity()) {
    out.failure = "x(0) is not the identity";
    return out;
  }
  std::vector<elem_t> add(n * n), mul(n * n);
  for (elem_t a = 0; a < n; ++a)
    for (elem_t c = 0; c < n; ++c) {
      auto it = back.find(g.mul(out.to_group[a], out.to_group[c]));
      if (it == back.end() || it->second != r.add(a, c)) {
        out.failure = "x(" + r.name(a) + ")x(" + r.name(c) + ") != x(" + r.name(r.add(a, c)) + ")";
        return out;
      }
      add[a * n + c] = r.add(a, c);
      mul[a * n + c] = r.mul(a, c);
    }
  std::vector<std::string> names;
  for (elem_t t = 0; t < n; ++t) names.push_back(r.name(t));
  out.ring = FiniteRing::from_tables("S_rec", n, std::move(add), std::move(mul), r.one(), std::move(names));
  std::string axioms = out.ring->check_axioms();
  if (!axioms.empty()) {
    out.failure = "ring axioms: " + axioms;
    out.ring.reset();
    return out;
  }
  out.from_source.resize(n);
  for (elem_t t = 0; t < n; ++t) out.from_source[t] = t;
  return out;
}

bool decomp_conj_verify(const MatrixGroup& g, std::size_t h, std::size_t b, const Decomposition& d) {
  if (!g.rep()) throw RingError("decomposition needs a representation");
  const FiniteRing& r = *g.ring();
  const Representation& rep = *g.rep();
  Mat lhs = g.element(g.conj(g.index_checked(rep.root_element(r, b, r.one())), h));
  Mat rhs = mat_identity(r, g.dim());
  for (const auto& [c, z] : d) rhs = mat_mul(r, rhs, rep.root_element(r, c, z));
  return lhs == rhs;
}

DecompositionSearch decomp_conj_search(const MatrixGroup& g, std::size_t h, std::size_t b, int n,
                                       std::size_t cap) {
  if (!g.rep()) throw RingError("decomposition needs a representation");
  const FiniteRing& r = *g.ring();
  const Representation& rep = *g.rep();
  const std::size_t target = g.conj(g.index_checked(rep.root_element(r, b, r.one())), h);
  std::vector<std::pair<std::size_t, elem_t>> letters;
  std::vector<std::size_t> letter_idx;
  for (std::size_t c = 0; c < rep.roots().size(); ++c)
    for (elem_t z = 1; z < r.size(); ++z) {
      letters.emplace_back(c, z);
      letter_idx.push_back(g.index_checked(rep.root_element(r, c, z)));
    }
  const std::size_t npos = g.order();
  std::vector<std::size_t> parent(g.order(), npos), via(g.order(), 0);
  std::vector<int> depth(g.order(), -1);
  depth[0] = 0;
  std::vector<std::size_t> frontier{0};
  std::size_t visited = 1;
  DecompositionSearch out;
  auto finish = [&](std::size_t x) {
    Decomposition d;
    for (; x != 0; x = parent[x]) d.push_back(letters[via[x]]);
    std::reverse(d.begin(), d.end());
    out.status = DecompositionSearch::Status::Found;
    out.decomposition = d;
  };
  if (target == 0) {
    finish(0);
    return out;
  }
  for (int level = 1; level <= n && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t k = 0; k < letters.size(); ++k) {
        std::size_t y = g.mul(x, letter_idx[k]);
        if (depth[y] != -1) continue;
        depth[y] = level;
        parent[y] = x;
        via[y] = k;
        if (y == target) {
          finish(y);
          return out;
        }
        next.push_back(y);
        if (++visited > cap) {
          out.status = DecompositionSearch::Status::Unknown;
          return out;
        }
      }
    frontier = std::move(next);
  }
  out.status = DecompositionSearch::Status::NotFound;
  return out;
}

}  // namespace chevlab
