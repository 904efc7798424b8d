#include <algorithm>
#include <map>
#include <unordered_map>

#include "chevlab/folang.hpp"

namespace chevlab {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Without construction tags the root subgroup of a0 is taken to be the
// cyclic group generated by its parameter, over Z/k.
RecoveredRing cyclic_recovery(const Group& g, std::size_t param) {
  RecoveredRing out;
  const std::size_t k = element_order(g, param);
  if (k < 2) {
    out.failure = "parameter of the first simple root is trivial";
    return out;
  }
  RingPtr r;
  try {
    r = FiniteRing::make(RingSpec::modular(static_cast<unsigned>(k)));
  } catch (const RingError& e) {
    out.failure = e.what();
    return out;
  }
  for (elem_t t = 0; t < k; ++t)
    if (r->from_int(t) != t) {
      out.failure = "unexpected element order in Z/" + std::to_string(k);
      return out;
    }
  for (std::size_t t = 0; t < k; ++t) out.to_group.push_back(g.pow(param, static_cast<long>(t)));
  out.ring = r;
  out.from_source.resize(k);
  for (elem_t t = 0; t < k; ++t) out.from_source[t] = t;
  return out;
}

struct ConjugatorTable {
  std::vector<std::size_t> cls, conj;  // conj[x]^-1 * rep * conj[x] = x
};

ConjugatorTable conjugators(const Group& g) {
  const std::size_t n = g.order();
  ConjugatorTable t;
  t.cls.assign(n, kNone);
  t.conj.assign(n, 0);
  const auto& gens = g.generators();
  std::size_t next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (t.cls[x] != kNone) continue;
    t.cls[x] = next;
    std::vector<std::size_t> orbit{x};
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        std::size_t y = g.conj_gen(orbit[q], j);
        if (t.cls[y] != kNone) continue;
        t.cls[y] = next;
        t.conj[y] = g.mul(t.conj[orbit[q]], gens[j]);
        orbit.push_back(y);
      }
    ++next;
  }
  return t;
}

struct Factor {
  char kind;  // 'c', 'd', 'x'
  std::size_t a = 0, b = 0;
  std::size_t extra = 0;
};


MasterResult run(const Candidate& c, const std::vector<std::size_t>& params, const BgOptions* bg) {
  MasterResult res;
  auto& items = res.report.items;
  auto add = [&](int k, const std::string& name, Verdict v, std::string w = {}) {
    items.push_back({k, name, v, std::move(w)});
  };
  const Group& G = *c.group;
  const RootSystem& phi = *c.phi;
  if (params.size() != phi.size()) throw RingError("master check needs one parameter per root");
  for (std::size_t p : params)
    if (p >= G.order()) throw RingError("parameter is not a group element");

  const std::map<int, std::string> names = {
      {1, bg ? "bounded generation" : "trivial center"},
      {2, "ring recovery"},
      {3, "good ring"},
      {4, "element per matrix"},
      {5, "surjectivity"},
      {6, "homomorphism"},
      {7, bg ? "injectivity" : "kernel is the center"},
      {8, "constants"},
      {9, "matrix words"}};
  const int last = bg ? 9 : 8;
  auto rest_unknown = [&](int from, const std::string& why) {
    for (int k = from; k <= last; ++k) add(k, names.at(k), Verdict::Unknown, why);
  };
  if (G.order() > c.budget) {
    rest_unknown(1, "group order exceeds budget " + std::to_string(c.budget));
    return res;
  }

  Subgroup zG = center(G);
  BoundedGeneration bgres;
  std::vector<bool> xmask;
  if (!bg) {
    if (zG.size() == 1)
      add(1, names.at(1), Verdict::Pass);
    else
      add(1, names.at(1), Verdict::Fail, "central element " + std::to_string(zG.elements[1]) + ", |Z| = " +
                                             std::to_string(zG.size()));
  } else {
    xmask = xm_set(G, bg->m, bg->extras);
    bgres = bounded_generation(G, xmask, bg->n);
    if (bgres.generated) {
      add(1, names.at(1), Verdict::Pass);
    } else {
      std::size_t miss = 0;
      while (bgres.length[miss] >= 0) ++miss;
      add(1, names.at(1), Verdict::Fail, "element " + std::to_string(miss) + " is not a product of " +
                                             std::to_string(bg->n) + " elements of X");
    }
  }

  RecoveredRing rr = c.tags ? ring_recovery(*c.tags, 0) : cyclic_recovery(G, params[0]);
  if (!rr.failure.empty()) {
    add(2, names.at(2), Verdict::Fail, rr.failure);
    rest_unknown(3, "needs item 2");
    return res;
  }
  add(2, names.at(2), Verdict::Pass, std::to_string(rr.ring->size()) + " elements");
  if (!c.require_good)
    add(3, names.at(3), Verdict::Skipped, "waived for this scenario");
  else if (is_good(*rr.ring, phi.type(), phi.rank()))
    add(3, names.at(3), Verdict::Pass);
  else
    add(3, names.at(3), Verdict::Fail, phi.type() == RootType::G ? "2 or 3 is not a unit" : "2 is not a unit");

  RepPtr rep = Representation::make(c.phi, c.lattice);
  MatrixGroupPtr model;
  try {
    model = elementary_group(rep, rr.ring, false, c.budget);
  } catch (const BudgetExceeded& e) {
    rest_unknown(4, std::string("model: ") + e.what());
    return res;
  }
  const FiniteRing& S = *rr.ring;
  const std::size_t nm = model->order();

  // theta on the model generators x_a(t), in elementary_generators order.
  const std::size_t per_root = S.size() - 1;
  std::vector<std::size_t> gimg(phi.size() * per_root, kNone);
  std::string conflict;
  for (std::size_t a = 0; a < phi.size(); ++a)
    for (elem_t t = 1; t < S.size(); ++t) {
      std::optional<std::size_t> v;
      if (c.tags)
        v = c.tags->root_image(a, t);
      else
        v = G.pow(params[a], t);
      if (!v && conflict.empty()) conflict = "no image for x_" + std::to_string(a) + "(" + S.name(t) + ")";
      gimg[a * per_root + (t - 1)] = v.value_or(0);
    }
  std::unordered_map<std::size_t, std::size_t> gpos;
  for (std::size_t j = 0; j < G.generators().size(); ++j) gpos.emplace(G.generators()[j], j);
  std::vector<std::size_t> theta(nm, kNone);
  theta[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t x = queue[q];
    for (std::size_t k = 0; k < gimg.size(); ++k) {
      const std::size_t y = model->right_gen(x, k);
      auto it = gpos.find(gimg[k]);
      const std::size_t v = it != gpos.end() ? G.right_gen(theta[x], it->second) : G.mul(theta[x], gimg[k]);
      if (theta[y] == kNone) {
        theta[y] = v;
        queue.push_back(y);
      } else if (theta[y] != v && conflict.empty()) {
        conflict = "theta(M*x) != theta(M)*theta(x) at model element " + std::to_string(x) + ", generator " +
                   std::to_string(k);
      }
    }
  }

  std::vector<std::size_t> xb1(phi.size());
  for (std::size_t b = 0; b < phi.size(); ++b) xb1[b] = model->index_checked(rep->root_element(S, b, S.one()));

  // Item 4: theta(M) satisfies g^-1 g_b g = theta(M^-1 x_b(1) M); uniqueness via the centralizer.
  std::size_t first_bad = nm;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first_bad)
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t b = 0; b < phi.size(); ++b)
      if (G.conj(params[b], theta[i]) != theta[model->conj(xb1[b], i)]) {
        first_bad = std::min(first_bad, i);
        break;
      }
  Subgroup cz = centralizer(G, params);
  const bool unique = bg ? cz == zG : cz.size() == 1;
  if (first_bad != nm)
    add(4, names.at(4), Verdict::Fail, "model element " + std::to_string(first_bad) + " conjugates the parameters wrongly");
  else if (!unique)
    add(4, names.at(4), Verdict::Fail, "centralizer of the parameters has order " + std::to_string(cz.size()));
  else
    add(4, names.at(4), Verdict::Pass);

  std::vector<bool> hit(G.order(), false);
  for (std::size_t v : theta) hit[v] = true;
  auto miss = std::find(hit.begin(), hit.end(), false);
  if (miss == hit.end())
    add(5, names.at(5), Verdict::Pass);
  else
    add(5, names.at(5), Verdict::Fail, "element " + std::to_string(miss - hit.begin()) + " is not hit");

  add(6, names.at(6), conflict.empty() ? Verdict::Pass : Verdict::Fail, conflict);

  Subgroup zM = center(*model);
  std::vector<std::size_t> kernel;
  for (std::size_t i = 0; i < nm; ++i)
    if (theta[i] == 0) kernel.push_back(i);
  if (bg) {
    if (kernel.size() == 1)
      add(7, names.at(7), Verdict::Pass);
    else
      add(7, names.at(7), Verdict::Fail, "model element " + std::to_string(kernel[1]) + " maps to the identity");
  } else if (kernel == zM.elements) {
    add(7, names.at(7), Verdict::Pass, "|kernel| = " + std::to_string(kernel.size()));
  } else {
    add(7, names.at(7), Verdict::Fail,
        "|kernel| = " + std::to_string(kernel.size()) + ", |Z(model)| = " + std::to_string(zM.size()));
  }

  std::string bad_const;
  for (std::size_t b = 0; b < phi.size() && bad_const.empty(); ++b)
    if (theta[xb1[b]] != params[b]) bad_const = "root " + std::to_string(b) + ": f(g) != x(1)";
  add(8, names.at(8), bad_const.empty() ? Verdict::Pass : Verdict::Fail, bad_const);

  if (bg) {
    // Item 9: witness words for sampled elements are lifted to the model.
    std::string verdict_note;
    Verdict v9 = Verdict::Pass;
    std::vector<OmegaWord> omega;
    if (bg->n < 1) {
      v9 = Verdict::Unknown;
      verdict_note = "word length must be positive";
    } else try {
      omega = word_set_omega(bg->n, static_cast<int>(bg->extras.size()), bg->m, bg->word_cap);
    } catch (const BudgetExceeded& e) {
      v9 = Verdict::Unknown;
      verdict_note = e.what();
    }
    if (v9 == Verdict::Pass && (!bgres.generated || kernel.size() != 1 || miss != hit.end())) {
      v9 = Verdict::Unknown;
      verdict_note = "needs items 1, 5 and 7";
    }
    if (v9 == Verdict::Pass) {
      std::map<std::string, const OmegaWord*> by_letters;
      for (const auto& w : omega) by_letters[w.letters] = &w;
      std::vector<std::size_t> inv_theta(G.order());
      for (std::size_t i = 0; i < nm; ++i) inv_theta[theta[i]] = i;
      std::vector<bool> cmask = commutator_set(G), pmask = power_set(G, bg->m);
      ConjugatorTable ct = conjugators(G);
      std::vector<std::size_t> xs;
      for (std::size_t i = 0; i < G.order(); ++i)
        if (xmask[i]) xs.push_back(i);
      Structure st(c.group);
      for (std::size_t k = 0; k < bg->extras.size(); ++k) st.add_constant("x" + std::to_string(k + 1), bg->extras[k]);

      const std::size_t samples = std::min<std::size_t>(bg->samples, G.order());
      for (std::size_t s = 0; s < samples && v9 == Verdict::Pass; ++s) {
        const std::size_t g = s * G.order() / samples;
        std::vector<std::size_t> ys;
        std::size_t cur = g;
        for (int len = bgres.length[g]; len > 0; --len)
          for (std::size_t y : xs) {
            std::size_t w = G.mul(cur, G.inv(y));
            if (bgres.length[w] == len - 1) {
              ys.push_back(y);
              cur = w;
              break;
            }
          }
        std::reverse(ys.begin(), ys.end());
        std::vector<Factor> factors;
        for (std::size_t y : ys) {
          Factor f{'x'};
          auto ex = std::find(bg->extras.begin(), bg->extras.end(), y);
          if (ex != bg->extras.end()) {
            f.extra = static_cast<std::size_t>(ex - bg->extras.begin());
          } else if (cmask[y]) {
            f.kind = 'c';
            for (std::size_t a = 0; a < G.order(); ++a) {
              std::size_t z = G.mul(a, y);
              if (ct.cls[z] == ct.cls[a]) {
                f.a = a;
                f.b = G.mul(G.inv(ct.conj[a]), ct.conj[z]);
                break;
              }
            }
          } else {
            f.kind = 'd';
            for (std::size_t a = 0; a < G.order(); ++a)
              if (G.pow(a, bg->m) == y) {
                f.a = a;
                break;
              }
          }
          factors.push_back(f);
        }
        while (factors.size() < static_cast<std::size_t>(bg->n)) factors.push_back(Factor{'c'});
        std::string letters;
        std::map<std::string, std::size_t> assignment;
        std::size_t var = 0, direct = 0, lifted = 0;
        bool slack_ok = true;
        for (const Factor& f : factors) {
          if (f.kind == 'x') {
            letters += "x" + std::to_string(f.extra + 1);
            direct = G.mul(direct, bg->extras[f.extra]);
            lifted = model->mul(lifted, inv_theta[bg->extras[f.extra]]);
            continue;
          }
          const std::size_t la = inv_theta[f.a], lb = inv_theta[f.b];
          if (f.kind == 'c') {
            letters += "c";
            assignment["v" + std::to_string(++var)] = f.a;
            assignment["v" + std::to_string(++var)] = f.b;
            direct = G.mul(direct, G.comm(f.a, f.b));
            const std::size_t lc = model->comm(la, lb);
            lifted = model->mul(lifted, lc);
            for (std::size_t z : zM.elements)
              if (model->comm(model->mul(la, z), model->mul(lb, z)) != lc) slack_ok = false;
          } else {
            letters += "d";
            assignment["v" + std::to_string(++var)] = f.a;
            direct = G.mul(direct, G.pow(f.a, bg->m));
            const std::size_t lp = model->pow(la, bg->m);
            lifted = model->mul(lifted, lp);
            for (std::size_t z : zM.elements)
              if (model->pow(model->mul(la, z), bg->m) != lp) slack_ok = false;
          }
        }
        auto w = by_letters.find(letters);
        const std::string where = "element " + std::to_string(g) + " (" + letters + ")";
        if (w == by_letters.end()) {
          v9 = Verdict::Fail;
          verdict_note = where + ": word not in the word set";
        } else if (direct != g || eval_term(st, parse_term(w->second->term), assignment) != g) {
          v9 = Verdict::Fail;
          verdict_note = where + ": word does not evaluate to the element";
        } else if (theta[lifted] != g) {
          v9 = Verdict::Fail;
          verdict_note = where + ": lifted word maps elsewhere";
        } else if (!slack_ok) {
          v9 = Verdict::Fail;
          verdict_note = where + ": central slack changes a factor";
        }
      }
      if (v9 == Verdict::Pass) verdict_note = std::to_string(samples) + " sampled elements";
    }
    add(9, names.at(9), v9, verdict_note);
  }

  res.data = Reconstruction{std::move(rr), rep, model, std::move(theta), std::move(zM)};
  return res;
}

}  // namespace

MasterResult master_check(const Candidate& c, const std::vector<std::size_t>& params) {
  return run(c, params, nullptr);
}

MasterResult master_check_bg(const Candidate& c, const std::vector<std::size_t>& params, const BgOptions& opt) {
  return run(c, params, &opt);
}

std::vector<std::size_t> encode_matrix(const Reconstruction& r, const Mat& m) {
  std::vector<std::size_t> out;
  for (elem_t x : m.a) out.push_back(r.ring.to_group.at(x));
  return out;
}

bool mat_up_to_cent(const Candidate& c, const Reconstruction& r, std::size_t g, const std::vector<std::size_t>& tuple) {
  const std::size_t d = r.model->dim();
  if (tuple.size() != d * d) throw RingError("matrix tuple has the wrong size");
  std::unordered_map<std::size_t, elem_t> decode;
  for (std::size_t k = 0; k < r.ring.to_group.size(); ++k) decode.emplace(r.ring.to_group[k], static_cast<elem_t>(k));
  Mat m(d);
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    auto it = decode.find(tuple[j]);
    if (it == decode.end()) throw RingError("tuple entry " + std::to_string(j) + " is outside the root subgroup");
    m.a[j] = it->second;
  }
  auto idx = r.model->index_of(m);
  if (!idx) return false;
  const Group& G = *c.group;
  const std::size_t q = G.mul(g, G.inv(r.theta[*idx]));
  for (std::size_t s : G.generators())
    if (G.mul(q, s) != G.mul(s, q)) return false;
  return true;
}

ReconstructResult reconstruct(const Candidate& c, const std::vector<std::size_t>& params, const BgOptions& bg) {
  ReconstructResult out;
  MasterResult m = c.projective ? master_check(c, params) : master_check_bg(c, params, bg);
  out.report = m.report;
  if (!m.report.all_pass() || !m.data) {
    for (const auto& it : m.report.items)
      if (it.verdict == Verdict::Fail || it.verdict == Verdict::Unknown) {
        if (!out.failure.empty()) out.failure += "; ";
        out.failure += "item " + std::to_string(it.item) + " " + verdict_name(it.verdict) +
                       (it.witness.empty() ? "" : ": " + it.witness);
      }
    return out;
  }
  const Reconstruction& d = *m.data;
  const Group& G = *c.group;
  out.ring = d.ring.ring;
  std::shared_ptr<const QuotientGroup> q;
  if (c.projective) q = quotient_group(d.model, d.model_center);
  out.model_quotient = q;
  auto proj = [&](std::size_t i) { return q ? q->coset_of(i) : i; };
  const Group& target = q ? static_cast<const Group&>(*q) : static_cast<const Group&>(*d.model);
  if (target.order() != G.order()) {
    out.failure = "model and candidate orders differ";
    return out;
  }
  out.f.assign(G.order(), kNone);
  for (std::size_t i = 0; i < d.theta.size(); ++i) {
    std::size_t& slot = out.f[d.theta[i]];
    if (slot == kNone) {
      slot = proj(i);
    } else if (slot != proj(i)) {
      out.failure = "f is not well defined at " + std::to_string(d.theta[i]);
      return out;
    }
  }
  std::vector<bool> seen(target.order(), false);
  for (std::size_t v : out.f) {
    if (v == kNone || seen[v]) {
      out.failure = "f is not a bijection";
      return out;
    }
    seen[v] = true;
  }
  for (std::size_t x = 0; x < G.order(); ++x)
    for (std::size_t k = 0; k < G.generators().size(); ++k)
      if (out.f[G.right_gen(x, k)] != target.mul(out.f[x], out.f[G.generators()[k]])) {
        out.failure = "f is not a homomorphism at " + std::to_string(x);
        return out;
      }
  const FiniteRing& S = *out.ring;
  for (std::size_t b = 0; b < params.size(); ++b)
    if (out.f[params[b]] != proj(d.model->index_checked(d.rep->root_element(S, b, S.one())))) {
      out.failure = "f(g_" + std::to_string(b) + ") != x(1)";
      return out;
    }
  out.ok = true;
  return out;
}

}  // namespace chevlab
