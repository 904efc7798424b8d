#include "doctest.h"

#include "chevlab/verify.hpp"

using namespace chevlab;

namespace {

Scenario scenario(const char* system, Lattice l, const char* ring) {
  Scenario s;
  s.name = std::string(system) + "-" + ring;
  s.system = system;
  s.lattice = l;
  s.ring = ring;
  return s;
}

void show(const CheckRecord& r) {
  std::string d;
  for (const auto& [k, v] : r.details) d += k + "=" + v + " ";
  INFO(r.check << " " << verdict_name(r.verdict) << " " << r.witness << " " << d);
  CHECK(true);
}

}  // namespace

TEST_CASE("classical order formulas") {
  // Hand values: |PSL3(2)| = 168, |SL4(2)| = 20160, |Sp4(3)| = 51840,
  // |SL3(Z/4)| = 2^8 * 168, |PSL3(4)| = 60480 / 3.
  CHECK(classical_order("A2", Lattice::Adjoint, *FiniteRing::parse("Z/2")) == 168);
  CHECK(classical_order("A3", Lattice::SimplyConnected, *FiniteRing::parse("Z/2")) == 20160);
  CHECK(classical_order("C2", Lattice::SimplyConnected, *FiniteRing::parse("Z/3")) == 51840);
  CHECK(classical_order("C2", Lattice::Adjoint, *FiniteRing::parse("Z/3")) == 25920);
  CHECK(classical_order("A2", Lattice::SimplyConnected, *FiniteRing::parse("Z/4")) == 43008);
  CHECK(classical_order("A2", Lattice::Adjoint, *FiniteRing::parse("GF(2)[t]/(t^2+t+1)")) == 20160);
  CHECK(classical_order("A3", Lattice::IntermediateSO6, *FiniteRing::parse("Z/3")) == 12130560 / 2);
  CHECK(!classical_order("G2", Lattice::Adjoint, *FiniteRing::parse("Z/2")));
  CHECK(!classical_order("A2", Lattice::Adjoint, *FiniteRing::parse("prod(Z/2,Z/3)")));
}

TEST_CASE("closure check") {
  auto s = scenario("A2", Lattice::Adjoint, "Z/2");
  CHECK(check_closure(s).verdict == Verdict::Pass);
  s.expected_order = 167;
  auto bad = check_closure(s);
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(bad.witness.find("167") != std::string::npos);
  auto g2 = scenario("G2", Lattice::Adjoint, "Z/2");
  CHECK(check_closure(g2).verdict == Verdict::Unknown);
  g2.expected_order = 12096;  // |G2(2)|
  CHECK(check_closure(g2).verdict == Verdict::Pass);
}

TEST_CASE("steinberg relations") {
  for (auto s : {scenario("A2", Lattice::Adjoint, "Z/4"), scenario("C2", Lattice::SimplyConnected, "Z/3"),
                 scenario("A3", Lattice::SimplyConnected, "Z/2")}) {
    auto r = check_steinberg(s);
    show(r);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.details["violations"] == "0");
  }
  auto s = scenario("A2", Lattice::Adjoint, "Z/4");
  s.fault = "inject";
  auto r = check_steinberg(s);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(r.witness.rfind("commutator", 0) == 0);
  s.expect_fail = true;
  CHECK(check_steinberg(s).verdict == Verdict::Pass);
  CHECK(check_steinberg(scenario("A2", Lattice::Adjoint, "Z/67")).verdict == Verdict::Unknown);
}

TEST_CASE("normal structure sandwich") {
  auto s = scenario("A2", Lattice::Adjoint, "Z/2");
  auto r = check_normal_structure(s);
  show(r);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["normal_subgroups"] == "2");
  s.fault = "inject";
  auto bad = check_normal_structure(s);
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(!bad.witness.empty());
}

TEST_CASE("iso invariants separate non-isomorphic rings") {
  auto s = scenario("A2", Lattice::Adjoint, "Z/4");
  s.rings = {"Z/2", "Z/4", "GF(2)[t]/(t^2+t+1)"};
  s.normal_bound = 1000;
  auto r = check_iso_invariants(s);
  show(r);
  CHECK(r.verdict == Verdict::Pass);
  // 168 vs 43008 vs 20160
  CHECK(r.details["pairs"].find("Z/2 vs Z/4: order 168 != 43008") != std::string::npos);
  auto same = scenario("A2", Lattice::Adjoint, "dual(Z/2)");
  same.rings = {"Z/2[t]/(t^2)", "dual(Z/2)"};
  same.normal_bound = 1000;
  auto iso = check_iso_invariants(same);
  CHECK(iso.verdict == Verdict::Pass);
  CHECK(iso.details["pairs"].find("isomorphism exhibited") != std::string::npos);
  auto twist = scenario("A2", Lattice::Adjoint, "GF(4)");
  twist.rings = {"GF(2)[t]/(t^2+t+1)"};
  twist.twist = "frobenius";
  CHECK(check_iso_invariants(twist).verdict == Verdict::Pass);
}

TEST_CASE("iso battery reports indistinguishable pairs as unknown") {
  // Z/4 and F2[e] give groups of order 43008 with equal centers and element-order counts.
  auto s = scenario("A2", Lattice::Adjoint, "Z/4");
  s.rings = {"Z/4", "dual(Z/2)"};
  s.normal_bound = 1000;
  auto r = check_iso_invariants(s);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.details["pairs"].find("indistinguishable") != std::string::npos);
}

TEST_CASE("torus criterion is exhaustive") {
  // Triples = |R*|^3: Z/5 -> 64, Z/9 -> 216, dual(Z/2) -> 8.
  const std::pair<const char*, const char*> cases[] = {{"Z/5", "64"}, {"Z/9", "216"}, {"dual(Z/2)", "8"}};
  for (auto [ring, triples] : cases) {
    auto r = check_tcap(scenario("A3", Lattice::IntermediateSO6, ring));
    show(r);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.details["triples"] == triples);
    CHECK(r.details["agree"] == triples);
  }
  // Z/5: half the triples have x1x2x3 a square.
  CHECK(check_tcap(scenario("A3", Lattice::IntermediateSO6, "Z/5")).details["preimages"] == "32");
  CHECK(check_tcap(scenario("A3", Lattice::IntermediateSO6, "prod(Z/2,Z/3)")).verdict == Verdict::Unknown);
}

TEST_CASE("product decomposition matches unit arithmetic") {
  // dual(Z/2): units {1, 1+e}, squares {1}, mu2 = all units.
  auto d = check_product_decomposition(scenario("A3", Lattice::IntermediateSO6, "dual(Z/2)"));
  show(d);
  CHECK(d.verdict == Verdict::Pass);
  CHECK(d.details["squares"] == "1");
  CHECK(d.details["mu2"] == "2");
  CHECK(d.details["direct"] == "yes");
  // Z/2[t]/(t^3): squares = mu2 = {1, 1+t^2}; (1+t)c is never a square.
  auto t3 = check_product_decomposition(scenario("A3", Lattice::IntermediateSO6, "Z/2[t]/(t^3)"));
  CHECK(t3.verdict == Verdict::Fail);
  CHECK(t3.witness == "u = (1,1,0)");
  CHECK(t3.details["squares"] == "2");
  CHECK(t3.details["mu2"] == "2");
  CHECK(t3.details["c"] == "fails");
  // F2[t,e]/(t^2,e^2): every unit squares to 1, so the product is direct.
  auto te = check_product_decomposition(scenario("A3", Lattice::IntermediateSO6, "dual(Z/2[t]/(t^2))"));
  CHECK(te.verdict == Verdict::Pass);
  CHECK(te.details["squares"] == "1");
  CHECK(te.details["mu2"] == "8");
  auto neg = scenario("A3", Lattice::IntermediateSO6, "Z/2[t]/(t^3)");
  neg.expect_fail = true;
  auto nr = check_product_decomposition(neg);
  CHECK(nr.verdict == Verdict::Pass);
  CHECK(nr.details["observed"] == "fail");
}

TEST_CASE("automorphism stabilizer growth") {
  Scenario s;
  s.name = "aut";
  s.k = 1;
  auto r1 = aut_stabilizer_growth(s);
  CHECK(r1.verdict == Verdict::Pass);
  CHECK(r1.details["enumerated"] == "1");
  s.k = 3;
  auto r3 = aut_stabilizer_growth(s);
  CHECK(r3.verdict == Verdict::Pass);
  CHECK(r3.details["enumerated"] == "168");
  CHECK(r3.details["counts"] == "1,6,168");
  CHECK(r3.details["ring_automorphisms"] == "1");
  s.k = 12;
  auto r12 = aut_stabilizer_growth(s);
  CHECK(r12.verdict == Verdict::Pass);
  // |GL_4(F2)| = 20160
  CHECK(r12.details["counts"].rfind("1,6,168,20160,", 0) == 0);
  s.k = 13;
  CHECK(aut_stabilizer_growth(s).verdict == Verdict::Unknown);
}

TEST_CASE("master check scenarios") {
  auto s = scenario("A2", Lattice::Adjoint, "Z/2");
  auto r = check_master(s);
  show(r);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["battery"].find("none") == std::string::npos);
  auto twisted = scenario("A2", Lattice::Adjoint, "GF(2)[t]/(t^2+t+1)");
  twisted.twist = "frobenius";
  auto t = check_master(twisted);
  show(t);
  CHECK(t.verdict == Verdict::Pass);
  s.fault = "inject";
  auto f = check_master(s);
  CHECK(f.verdict == Verdict::Fail);
  CHECK(!f.witness.empty());
}

TEST_CASE("bounded-generation master check") {
  auto s = scenario("A3", Lattice::SimplyConnected, "Z/2");
  s.samples = 8;
  auto r = check_master_bg(s);
  show(r);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["bounded_generation"] == "true");
  s.n = 0;
  CHECK(check_master_bg(s).verdict == Verdict::Fail);
}

TEST_CASE("bi-interpretation round trips") {
  auto r = check_biinterp(scenario("A2", Lattice::Adjoint, "Z/2"));
  show(r);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["group_round_trip"] == "identity");
  auto s = scenario("A2", Lattice::Adjoint, "Z/2");
  s.fault = "inject";
  auto f = check_biinterp(s);
  CHECK(f.verdict == Verdict::Fail);
  CHECK(f.witness.find("element") != std::string::npos);
}

TEST_CASE("config parsing") {
  auto sc = parse_config(R"(# suite
[scenario a2]
checks = closure, steinberg
system = A2
lattice = adjoint
ring = Z/4
rings = Z/4; dual(Z/2)
expect = fail
m = 3
)");
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].checks == std::vector<std::string>{"closure", "steinberg"});
  CHECK(sc[0].rings == std::vector<std::string>{"Z/4", "dual(Z/2)"});
  CHECK(sc[0].expect_fail);
  CHECK(sc[0].m_or_default() == 3);
  CHECK(sc[0].n_or_default() == 2);
  auto line_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return std::size_t(0);
  };
  CHECK(line_of("[scenario x]\nchecks = closure\nbogus = 1\n") == 3);
  CHECK(line_of("ring = Z/2\n") == 1);
  CHECK(line_of("[scenario x]\nchecks = nope\n") == 2);
  CHECK(line_of("[scenario x]\nchecks = closure\nlattice = weird\n") == 3);
  CHECK(line_of("[scenario x]\nchecks = closure\nm = two\n") == 3);
  CHECK_THROWS_AS(load_config("/nonexistent/suite.cfg"), ConfigError);
}

TEST_CASE("default m follows the center exponent") {
  CHECK(scenario("A3", Lattice::SimplyConnected, "Z/2").m_or_default() == 4);
  CHECK(scenario("A2", Lattice::Adjoint, "Z/2").m_or_default() == 1);
  CHECK(scenario("A3", Lattice::IntermediateSO6, "Z/2").m_or_default() == 2);
}

TEST_CASE("suite output is deterministic and ordered") {
  auto a = scenario("A2", Lattice::Adjoint, "Z/2");
  a.checks = {"closure", "steinberg"};
  auto b = scenario("A3", Lattice::IntermediateSO6, "Z/5");
  b.name = "so6";
  b.checks = {"tcap"};
  Report r1 = run_suite({a, b});
  Report r2 = run_suite({a, b});
  REQUIRE(r1.records.size() == 3);
  CHECK(r1.records[2].scenario == "so6");
  CHECK(to_jsonl(r1, false) == to_jsonl(r2, false));
  CHECK(r1.count(Verdict::Pass) == 3);
  const std::string line = to_jsonl(r1).substr(0, to_jsonl(r1).find('\n'));
  CHECK(line.rfind("{\"schema\":1,\"check\":\"closure\",\"scenario\":\"A2-Z/2\",\"verdict\":\"pass\"", 0) == 0);
  CHECK(summary_table(r1).find("3 pass, 0 fail, 0 unknown") != std::string::npos);
  auto e = run_check("closure", scenario("A2", Lattice::Adjoint, "Z/3"));
  CHECK(e.verdict == Verdict::Pass);
  auto cap = scenario("A2", Lattice::Adjoint, "Z/3");
  cap.closure_cap = 100;
  CHECK(run_check("closure", cap).verdict == Verdict::Unknown);
}
