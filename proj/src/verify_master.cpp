#include <algorithm>

#include "chevlab/verify.hpp"

namespace chevlab {

namespace {

struct Setup {
  RingPtr ring;
  MatrixGroupPtr matrices;
  Tagging tags;
  Candidate candidate;
};

std::vector<elem_t> nontrivial_automorphism(const FiniteRing& r) {
  for (const auto& a : ring_automorphisms(r))
    for (elem_t x = 0; x < r.size(); ++x)
      if (a[x] != x) return a;
  throw RingError("ring has no nontrivial automorphism");
}

Setup setup(const Scenario& s, bool projective) {
  Setup out;
  out.ring = FiniteRing::parse(s.ring);
  auto phi = std::make_shared<const RootSystem>(RootSystem::parse(s.system));
  auto rep = Representation::make(phi, s.lattice);
  out.matrices = elementary_group(rep, out.ring, false, s.closure_cap);
  std::vector<elem_t> twist;
  if (s.twist == "frobenius") twist = nontrivial_automorphism(*out.ring);
  out.tags = tag_matrix_group(out.matrices, projective, twist);
  out.candidate.group = out.tags.group;
  out.candidate.tags = out.tags;
  out.candidate.phi = phi;
  out.candidate.lattice = s.lattice;
  out.candidate.projective = projective;
  out.candidate.require_good = s.require_good;
  return out;
}

std::string failing_items(const MasterReport& r) {
  std::string out;
  for (const auto& it : r.items)
    if (it.verdict == Verdict::Fail) out += (out.empty() ? "" : ",") + std::to_string(it.item);
  return out;
}

std::string first_problem(const MasterReport& r) {
  for (const auto& it : r.items)
    if (it.verdict == Verdict::Fail) return "item " + std::to_string(it.item) + " (" + it.name + "): " + it.witness;
  return {};
}

bool any_unknown(const MasterReport& r) {
  return std::any_of(r.items.begin(), r.items.end(), [](const ItemResult& it) { return it.verdict == Verdict::Unknown; });
}

void report_items(CheckRecord& rec, const MasterReport& r) {
  std::string line;
  for (const auto& it : r.items) line += (line.empty() ? "" : " ") + std::to_string(it.item) + ":" + verdict_name(it.verdict);
  rec.details["items"] = line;
}

// Honest run must pass and reconstruct the ring; corrupted runs must fail
// one of the expected items with a witness.
struct Corruption {
  std::string name;
  std::vector<std::size_t> params;
  std::vector<int> expected;
};

std::vector<Corruption> corruption_battery(const Setup& st, const std::vector<std::size_t>& params) {
  std::vector<Corruption> out;
  auto identity = params;
  identity[0] = 0;
  out.push_back({"identity", identity, {4, 8}});
  auto rotated = params;
  std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  out.push_back({"rotation", rotated, {4, 8}});
  auto swapped = params;
  const std::size_t b = st.candidate.phi->negative_of(0);
  std::swap(swapped[0], swapped[b]);
  out.push_back({"negative swap", swapped, {4, 8}});
  return out;
}

void settle_master(CheckRecord& rec, const Scenario& s, bool ok, const std::string& witness) {
  if (s.expect_fail) {
    rec.details["expected"] = "fail";
    rec.details["observed"] = ok ? "pass" : "fail";
    rec.verdict = !ok && !witness.empty() ? Verdict::Pass : Verdict::Fail;
    rec.witness = ok ? "expected a failure" : witness;
  } else {
    rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
    rec.witness = ok ? "" : witness;
  }
}

std::string run_battery(CheckRecord& rec, const Setup& st, const std::vector<std::size_t>& params,
                        const BgOptions* bg) {
  std::string problem, summary;
  for (const auto& c : corruption_battery(st, params)) {
    MasterResult m = bg ? master_check_bg(st.candidate, c.params, *bg) : master_check(st.candidate, c.params);
    const std::string items = failing_items(m.report);
    summary += (summary.empty() ? "" : "; ") + c.name + "->" + (items.empty() ? "none" : items);
    bool hit = false;
    for (int k : c.expected) {
      const ItemResult* it = m.report.item(k);
      hit = hit || (it && it->verdict == Verdict::Fail && !it->witness.empty());
    }
    if (!hit && problem.empty()) problem = "corruption '" + c.name + "' not detected by the expected items";
  }
  rec.details["battery"] = summary;
  return problem;
}

}  // namespace

CheckRecord check_master(const Scenario& s) {
  CheckRecord rec;
  rec.check = "master";
  rec.scenario = s.name;
  Setup st = setup(s, true);
  auto params = honest_params(st.tags);
  if (s.fault == "inject") params[0] = 0;
  MasterResult m = master_check(st.candidate, params);
  report_items(rec, m.report);
  std::string problem = first_problem(m.report);
  if (problem.empty() && any_unknown(m.report) && !s.expect_fail) {
    rec.verdict = Verdict::Unknown;
    rec.witness = "a master-check item is undecided";
    return rec;
  }
  if (problem.empty()) {
    ReconstructResult r = reconstruct(st.candidate, params);
    if (!r.ok) problem = "reconstruct: " + r.failure;
    else if (!find_ring_isomorphism(*r.ring, *st.ring)) problem = "reconstructed ring is not isomorphic to " + s.ring;
    else rec.details["reconstructed"] = r.ring->label() + " (" + std::to_string(r.ring->size()) + " elements)";
  }
  if (problem.empty() && !s.expect_fail) problem = run_battery(rec, st, params, nullptr);
  settle_master(rec, s, problem.empty(), problem);
  return rec;
}

CheckRecord check_master_bg(const Scenario& s) {
  CheckRecord rec;
  rec.check = "master_bg";
  rec.scenario = s.name;
  Setup st = setup(s, false);
  BgOptions opt;
  opt.m = s.m_or_default();
  opt.n = s.n_or_default();
  opt.samples = s.samples;
  auto params = honest_params(st.tags);
  if (s.fault == "inject") params[0] = 0;
  const Group& g = *st.tags.group;
  BoundedGeneration bgen = bounded_generation(g, xm_set(g, opt.m, {}), opt.n);
  rec.details["bounded_generation"] = bgen.generated ? "true" : "false";
  std::string hist;
  for (std::size_t v : bgen.histogram) hist += (hist.empty() ? "" : ",") + std::to_string(v);
  rec.details["length_histogram"] = hist;
  MasterResult m = master_check_bg(st.candidate, params, opt);
  report_items(rec, m.report);
  std::string problem = first_problem(m.report);
  if (problem.empty() && any_unknown(m.report) && !s.expect_fail) {
    rec.verdict = Verdict::Unknown;
    rec.witness = "a master-check item is undecided";
    return rec;
  }
  if (problem.empty() && !bgen.generated) problem = "X_m does not generate in N steps";
  if (problem.empty()) {
    ReconstructResult r = reconstruct(st.candidate, params, opt);
    if (!r.ok) problem = "reconstruct: " + r.failure;
    else if (!find_ring_isomorphism(*r.ring, *st.ring)) problem = "reconstructed ring is not isomorphic to " + s.ring;
    else rec.details["reconstructed"] = r.ring->label() + " (" + std::to_string(r.ring->size()) + " elements)";
  }
  if (problem.empty() && !s.expect_fail) problem = run_battery(rec, st, params, &opt);
  settle_master(rec, s, problem.empty(), problem);
  return rec;
}

CheckRecord check_biinterp(const Scenario& s) {
  CheckRecord rec;
  rec.check = "biinterp";
  rec.scenario = s.name;
  Setup st = setup(s, true);
  const FiniteRing& r = *st.ring;
  const Group& g = *st.tags.group;
  const std::size_t b0 = 0;
  std::string problem;

  // (i) ring -> ring recovered in the group.
  RecoveredRing rr = ring_recovery(st.tags, b0);
  if (!rr.failure.empty()) problem = "ring recovery: " + rr.failure;
  std::vector<elem_t> xi;  // R -> recovered ring
  if (problem.empty()) {
    xi.resize(r.size());
    for (elem_t t = 0; t < r.size() && problem.empty(); ++t) {
      auto img = st.tags.root_image(b0, t);
      if (!img) problem = "x(" + r.name(t) + ") is outside the group";
      else if (rr.to_group[rr.from_source[t]] != *img) problem = "recovered coordinate of x(" + r.name(t) + ") differs";
      xi[t] = rr.from_source[t];
    }
  }
  const FiniteRing* s2 = rr.ring.get();
  if (problem.empty()) {
    std::vector<bool> hit(s2->size(), false);
    for (elem_t t = 0; t < r.size(); ++t) hit[xi[t]] = true;
    if (s2->size() != r.size() || !std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }))
      problem = "coordinate map is not a bijection";
    for (elem_t a = 0; a < r.size() && problem.empty(); ++a)
      for (elem_t c = 0; c < r.size() && problem.empty(); ++c)
        if (xi[r.add(a, c)] != s2->add(xi[a], xi[c]) || xi[r.mul(a, c)] != s2->mul(xi[a], xi[c]))
          problem = "coordinate map is not a ring homomorphism at (" + r.name(a) + "," + r.name(c) + ")";
  }
  if (problem.empty()) {
    std::vector<bool> image(g.order(), false);
    std::size_t last = 0;
    for (elem_t t = 0; t < r.size(); ++t) image[last = *st.tags.root_image(b0, t)] = true;
    Relation graph = Relation::unary(image);
    Relation registered = oracle_root_subgroup(st.tags, b0);
    if (s.fault == "inject") {
      std::vector<bool> kept(g.order(), false);
      for (std::size_t x = 0; x < g.order(); ++x) kept[x] = registered.contains(&x) && x != last;
      registered = Relation::unary(kept);
    }
    Structure st2(st.tags.group);
    st2.add_predicate("X0", registered);
    CandidateCheck cc = check_candidate_formula(st2, parse_formula("X0(x)"), graph);
    if (!cc.equal) problem = "graph and predicate differ at element " + std::to_string(cc.witness.value_or(0));
  }
  rec.details["ring_round_trip"] = problem.empty() ? "identity" : "broken";

  // (ii) group -> matrix model over the recovered ring, and back.
  if (problem.empty()) {
    auto params = honest_params(st.tags);
    MasterResult m = master_check(st.candidate, params);
    if (!m.report.all_pass() || !m.data) problem = "master check: " + first_problem(m.report);
    ReconstructResult rc;
    if (problem.empty()) {
      rc = reconstruct(st.candidate, params);
      if (!rc.ok) problem = "reconstruct: " + rc.failure;
    }
    if (problem.empty()) {
      const Reconstruction& data = *m.data;
      const auto& q = *rc.model_quotient;
      std::size_t checked = 0;
      // group -> model -> group
      for (std::size_t x = 0; x < g.order() && problem.empty(); ++x) {
        const std::size_t model_elem = q.representative(rc.f[x]);
        if (data.theta[model_elem] != x) problem = "group round trip moves element " + std::to_string(x);
        else if (!mat_up_to_cent(st.candidate, data, x, encode_matrix(data, data.model->element(model_elem))))
          problem = "matrix tuple of element " + std::to_string(x) + " is not recognised";
        ++checked;
      }
      // model -> group -> model
      for (std::size_t y = 0; y < data.model->order() && problem.empty(); ++y)
        if (rc.f[data.theta[y]] != q.coset_of(y)) problem = "model round trip moves element " + std::to_string(y);
      for (std::size_t x = 0; x < g.order() && problem.empty(); ++x)
        for (std::size_t k = 0; k < g.generators().size() && problem.empty(); ++k)
          if (rc.f[g.mul(x, g.generators()[k])] != q.mul(rc.f[x], rc.f[g.generators()[k]]))
            problem = "coordinate map is not a homomorphism at " + std::to_string(x);
      rec.details["group_elements"] = std::to_string(checked);
    }
    rec.details["group_round_trip"] = problem.empty() ? "identity" : "broken";
  }
  settle_master(rec, s, problem.empty(), problem);
  return rec;
}

}  // namespace chevlab
