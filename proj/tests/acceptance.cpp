// Acceptance run: the bundled suite at two thread counts plus the evaluator
// corpus. One line per criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "chevlab/verify.hpp"

using namespace chevlab;

namespace {

// Wall-clock limits per criterion, in milliseconds.
constexpr double kLimitSteinberg = 60e3;
constexpr double kLimitClosure = 120e3;  // each
constexpr double kLimitTcap = 120e3;
constexpr double kLimitProduct = 60e3;
constexpr double kLimitNormal = 600e3;
constexpr double kLimitMaster = 1800e3;
constexpr double kLimitMasterBg = 1800e3;
constexpr double kLimitBiinterp = 600e3;
constexpr double kLimitEvaluator = 60e3;

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

const CheckRecord* find(const Report& r, const std::string& scenario, const std::string& check) {
  for (const auto& rec : r.records)
    if (rec.scenario == scenario && rec.check == check) return &rec;
  return nullptr;
}

std::string detail(const CheckRecord& r, const std::string& key) {
  auto it = r.details.find(key);
  return it == r.details.end() ? "" : it->second;
}

// Requires the record to exist and pass; returns its time.
double need(Outcome& o, const Report& r, const std::string& scenario, const std::string& check) {
  const CheckRecord* rec = find(r, scenario, check);
  if (!rec) {
    o.fail(scenario + "/" + check + " missing");
    return 0;
  }
  if (rec->verdict != Verdict::Pass) o.fail(scenario + "/" + check + " " + verdict_name(rec->verdict) + ": " + rec->witness);
  return rec->millis;
}

void expect_detail(Outcome& o, const Report& r, const std::string& scenario, const std::string& check,
                   const std::string& key, const std::string& value) {
  const CheckRecord* rec = find(r, scenario, check);
  if (rec && detail(*rec, key) != value)
    o.fail(scenario + "/" + check + " " + key + " = '" + detail(*rec, key) + "', expected '" + value + "'");
}

void limit(Outcome& o, double ms, double cap) {
  if (ms > cap) o.fail("took " + std::to_string(ms) + " ms, limit " + std::to_string(cap) + " ms");
}

std::string ms_text(double ms) {
  std::ostringstream s;
  s.precision(1);
  s << std::fixed << ms << " ms";
  return s.str();
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t v = 1;
  while (e-- > 0) v *= b;
  return v;
}

// Unit triples of Z/n whose product is a square unit.
std::pair<std::size_t, std::size_t> zn_triples(std::size_t n) {
  std::vector<std::size_t> units;
  for (std::size_t k = 1; k < n; ++k)
    if (std::gcd(k, n) == 1) units.push_back(k);
  std::vector<bool> square(n, false);
  for (std::size_t u : units) square[u * u % n] = true;
  std::size_t good = 0;
  for (std::size_t a : units)
    for (std::size_t b : units)
      for (std::size_t c : units) good += square[a * b % n * c % n];
  return {ipow(units.size(), 3), good};
}

Outcome criterion_steinberg(const Report& r) {
  Outcome o;
  double ms = 0;
  for (const char* s : {"steinberg-a2-ad-z4", "steinberg-a3-sl4-z2", "steinberg-c2-sp4-gf3", "steinberg-g2-ad-z7"}) {
    ms += need(o, r, s, "steinberg");
    expect_detail(o, r, s, "steinberg", "violations", "0");
  }
  ms += need(o, r, "steinberg-fault", "steinberg");
  limit(o, ms, kLimitSteinberg);
  if (o.ok) o.note = "4 groups, 0 violations, fault detected, " + ms_text(ms);
  return o;
}

Outcome criterion_closure(const Report& r) {
  Outcome o;
  // |PSL3(2)| = 2^3 (2^2-1)(2^3-1); |SL4(2)| = (2^4-1)(2^4-2)(2^4-4)(2^4-8)
  const std::size_t psl3 = 8 * 3 * 7;
  const std::size_t sl4 = (16 - 1) * (16 - 2) * (16 - 4) * (16 - 8);
  const double a = need(o, r, "closure-a2-ad-z2", "closure");
  const double b = need(o, r, "closure-a3-sl4-z2", "closure");
  expect_detail(o, r, "closure-a2-ad-z2", "closure", "order", std::to_string(psl3));
  expect_detail(o, r, "closure-a3-sl4-z2", "closure", "order", std::to_string(sl4));
  limit(o, a, kLimitClosure);
  limit(o, b, kLimitClosure);
  if (o.ok) o.note = "orders " + std::to_string(psl3) + " and " + std::to_string(sl4) + ", " + ms_text(a + b);
  return o;
}

Outcome criterion_tcap(const Report& r) {
  Outcome o;
  double ms = 0;
  for (auto [scenario, n] : {std::pair<const char*, std::size_t>{"tcap-z5", 5}, {"tcap-z9", 9}}) {
    ms += need(o, r, scenario, "tcap");
    auto [triples, good] = zn_triples(n);
    expect_detail(o, r, scenario, "tcap", "triples", std::to_string(triples));
    expect_detail(o, r, scenario, "tcap", "agree", std::to_string(triples));
    expect_detail(o, r, scenario, "tcap", "preimages", std::to_string(good));
  }
  // dual(Z/2): units {1, 1+e}, only 1 is a square; the product is 1 for 4 of the 8 triples.
  ms += need(o, r, "tcap-dual-z2", "tcap");
  expect_detail(o, r, "tcap-dual-z2", "tcap", "agree", "8");
  expect_detail(o, r, "tcap-dual-z2", "tcap", "preimages", "4");
  limit(o, ms, kLimitTcap);
  if (o.ok) o.note = "Z/5, Z/9, dual(Z/2) all triples agree, preimages verified, " + ms_text(ms);
  return o;
}

Outcome criterion_product(const Report& r) {
  Outcome o;
  double ms = need(o, r, "tcap-dual-z2", "product");
  expect_detail(o, r, "tcap-dual-z2", "product", "direct", "yes");
  ms += need(o, r, "product-z2-t3", "product");
  expect_detail(o, r, "product-z2-t3", "product", "observed", "fail");
  const CheckRecord* t3 = find(r, "product-z2-t3", "product");
  if (t3 && t3->witness != "u = (1,1,0)") o.fail("witness '" + t3->witness + "', expected u = 1+t");
  limit(o, ms, kLimitProduct);
  if (o.ok) o.note = "direct for dual(Z/2), fails for Z/2[t]/(t^3) at u = 1+t, " + ms_text(ms);
  return o;
}

Outcome criterion_normal(const Report& r) {
  Outcome o;
  double ms = need(o, r, "closure-a2-ad-z2", "normal") + need(o, r, "normal-sl3-z4", "normal");
  // PSL3(2) is simple; SL3(Z/4) has the congruence kernel of order 2^8.
  expect_detail(o, r, "closure-a2-ad-z2", "normal", "map", "1->(0) 168->(1)");
  expect_detail(o, r, "normal-sl3-z4", "normal", "map", "1->(0) 256->(2) 43008->(1)");
  ms += need(o, r, "normal-fault", "normal");
  limit(o, ms, kLimitNormal);
  if (o.ok) o.note = "every normal subgroup matches one ideal, " + ms_text(ms);
  return o;
}

Outcome criterion_master(const Report& r) {
  Outcome o;
  double ms = 0;
  const std::pair<const char*, const char*> runs[] = {{"closure-a2-ad-z2", "2"},
                                                      {"master-a2-ad-z4", "4"},
                                                      {"master-a3-ad-z2", "2"},
                                                      {"master-a2-ad-gf4", "4"},
                                                      {"master-a2-ad-gf4-frobenius", "4"}};
  for (auto [scenario, size] : runs) {
    ms += need(o, r, scenario, "master");
    expect_detail(o, r, scenario, "master", "reconstructed", std::string("S_rec (") + size + " elements)");
    expect_detail(o, r, scenario, "master", "battery", "identity->4,8; rotation->4,8; negative swap->4,8");
  }
  ms += need(o, r, "master-fault", "master");
  limit(o, ms, kLimitMaster);
  if (o.ok) o.note = "5 groups all-pass and reconstruct R, corruption battery fails items 4 and 8, " + ms_text(ms);
  return o;
}

Outcome criterion_master_bg(const Report& r) {
  Outcome o;
  double ms = need(o, r, "closure-a3-sl4-z2", "master_bg");
  expect_detail(o, r, "closure-a3-sl4-z2", "master_bg", "bounded_generation", "true");
  expect_detail(o, r, "closure-a3-sl4-z2", "master_bg", "reconstructed", "S_rec (2 elements)");
  limit(o, ms, kLimitMasterBg);
  if (o.ok) o.note = "SL4(Z/2), m=4: X_m saturates at N=2, all items pass, ring Z/2, " + ms_text(ms);
  return o;
}

Outcome criterion_biinterp(const Report& r) {
  Outcome o;
  double ms = 0;
  for (const char* s : {"closure-a2-ad-z2", "master-a2-ad-gf4"}) {
    ms += need(o, r, s, "biinterp");
    expect_detail(o, r, s, "biinterp", "ring_round_trip", "identity");
    expect_detail(o, r, s, "biinterp", "group_round_trip", "identity");
  }
  ms += need(o, r, "biinterp-fault", "biinterp");
  limit(o, ms, kLimitBiinterp);
  if (o.ok) o.note = "both round trips are the identity over Z/2 and GF(4), " + ms_text(ms);
  return o;
}

MatrixGroupPtr unitriangular(int n, const char* ring_spec) {
  auto ring = FiniteRing::parse(ring_spec);
  std::vector<Mat> gens;
  for (int i = 0; i + 1 < n; ++i) {
    Mat m = mat_identity(*ring, static_cast<std::size_t>(n));
    m.at(i, i + 1) = ring->one();
    gens.push_back(m);
  }
  return closure(nullptr, ring, gens);
}

Outcome criterion_evaluator() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = read_corpus(std::string(CHEVLAB_TEST_DATA) + "/corpus.fo");
  if (corpus.size() != 50) o.fail("corpus has " + std::to_string(corpus.size()) + " formulas");
  std::size_t round_trips = 0;
  for (const auto& text : corpus) {
    Formula f = parse_formula(text);
    if (parse_formula(print(f)) == f && print(parse_formula(print(f))) == print(f)) ++round_trips;
  }
  if (round_trips != corpus.size()) o.fail("round trips " + std::to_string(round_trips) + "/" + std::to_string(corpus.size()));

  auto rep = Representation::make(std::make_shared<const RootSystem>(RootSystem::parse("A2")), Lattice::Adjoint);
  std::vector<MatrixGroupPtr> built = {elementary_group(rep, FiniteRing::parse("Z/2")), unitriangular(3, "Z/3"),
                                       unitriangular(4, "Z/2")};
  const auto dir = std::filesystem::temp_directory_path() / ("chevlab-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::size_t compared = 0;
  for (std::size_t i = 0; i < built.size() && o.ok; ++i) {
    const std::string path = (dir / ("group" + std::to_string(i) + ".cache")).string();
    write_group_cache(path, *built[i]);
    auto g = read_group_cache(path);
    if (g->order() != built[i]->order()) o.fail("cache round trip changed the order");
    Structure s(g);
    s.add_constant("a", g->generators()[0]);
    s.add_constant("b", g->generators()[1]);
    for (const auto& text : corpus) {
      Formula f = parse_formula(text);
      std::vector<std::string> vars;
      for (const auto& v : free_names(f))
        if (v != "a" && v != "b") vars.push_back(v);
      Evaluator ev(s, f, vars);
      if (ev.solutions() != ev.solutions_reference()) o.fail("mismatch on '" + text + "' over group " + std::to_string(i));
      ++compared;
    }
  }
  std::filesystem::remove_all(dir);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  limit(o, ms, kLimitEvaluator);
  if (o.ok)
    o.note = std::to_string(compared) + " solution sets equal over orders 168, 27, 64; " + std::to_string(round_trips) +
             "/50 round trips, " + ms_text(ms);
  return o;
}

}  // namespace

int main() {
  const auto scenarios = load_config(CHEVLAB_SUITE);
  omp_set_num_threads(1);
  const Report serial = run_suite(scenarios);
  omp_set_num_threads(4);
  const Report parallel = run_suite(scenarios);

  std::vector<std::pair<std::string, Outcome>> rows;
  rows.emplace_back("Steinberg relations", criterion_steinberg(serial));
  rows.emplace_back("closure orders", criterion_closure(serial));
  rows.emplace_back("torus criterion", criterion_tcap(serial));
  rows.emplace_back("product decomposition", criterion_product(serial));
  rows.emplace_back("normal subgroup sandwich", criterion_normal(serial));
  rows.emplace_back("master check, projective", criterion_master(serial));
  rows.emplace_back("master check, bounded generation", criterion_master_bg(serial));
  rows.emplace_back("bi-interpretation", criterion_biinterp(serial));
  rows.emplace_back("evaluator", criterion_evaluator());
  Outcome det;
  const std::string a = to_jsonl(serial, false), b = to_jsonl(parallel, false);
  if (a != b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    det.fail("reports differ at byte " + std::to_string(k));
  } else {
    det.note = std::to_string(serial.records.size()) + " records identical at 1 and 4 threads";
  }
  rows.emplace_back("determinism", det);

  bool all = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [name, out] = rows[i];
    all = all && out.ok;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, out.ok ? "PASS" : "FAIL", name.c_str(), out.note.c_str());
  }
  if (serial.count(Verdict::Fail) || serial.count(Verdict::Unknown)) {
    std::cout << summary_table(serial);
    all = false;
  }
  return all ? 0 : 1;
}
