#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "chevlab/groupkit.hpp"

using namespace chevlab;

namespace {

RepPtr rep_of(const char* system, Lattice l) {
  return Representation::make(std::make_shared<RootSystem>(RootSystem::parse(system)), l);
}

// |SL_n(F_q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - 1)
std::size_t sl_order(int n, std::size_t q) {
  std::size_t o = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i) o *= q;
  for (int i = 2; i <= n; ++i) {
    std::size_t p = 1;
    for (int k = 0; k < i; ++k) p *= q;
    o *= p - 1;
  }
  return o;
}

std::shared_ptr<TableGroup> s4() {
  return TableGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4");
}

}  // namespace

TEST_CASE("closure orders match the SL order formula") {
  auto z2 = FiniteRing::parse("Z/2");
  auto gf4 = FiniteRing::parse("GF(2)[t]/(t^2+t+1)");
  CHECK(elementary_group(rep_of("A2", Lattice::SimplyConnected), z2)->order() == sl_order(3, 2));
  CHECK(elementary_group(rep_of("A2", Lattice::Adjoint), z2)->order() == sl_order(3, 2));
  CHECK(elementary_group(rep_of("A3", Lattice::SimplyConnected), z2)->order() == sl_order(4, 2));
  CHECK(elementary_group(rep_of("A2", Lattice::SimplyConnected), gf4)->order() == sl_order(3, 4));
  auto z4 = FiniteRing::parse("Z/4");
  CHECK(elementary_group(rep_of("A2", Lattice::SimplyConnected), z4)->order() == 168 * 256);
}

TEST_CASE("serial and parallel closure agree") {
  auto rep = rep_of("C2", Lattice::SimplyConnected);
  auto z3 = FiniteRing::parse("Z/3");
  auto gens = elementary_generators(*rep, *z3);
  auto a = closure(rep, z3, gens);
  auto b = closure_serial(rep, z3, gens);
  REQUIRE(a->order() == b->order());
  CHECK(a->order() == 51840);  // |Sp4(3)|
  for (std::size_t i = 0; i < a->order(); i += 97) CHECK(a->element(i) == b->element(i));
}

TEST_CASE("closure cap raises BudgetExceeded") {
  auto rep = rep_of("A2", Lattice::SimplyConnected);
  auto z2 = FiniteRing::parse("Z/2");
  CHECK_THROWS_AS(closure(rep, z2, elementary_generators(*rep, *z2), 100), BudgetExceeded);
}

TEST_CASE("matrix group tables are consistent") {
  auto g = elementary_group(rep_of("A2", Lattice::Adjoint), FiniteRing::parse("Z/2"));
  const auto& r = *g->ring();
  for (std::size_t x = 0; x < g->order(); x += 7) {
    CHECK(mat_is_identity(r, mat_mul(r, g->element(x), g->element(g->inv(x)))));
    for (std::size_t k = 0; k < g->generators().size(); ++k) {
      std::size_t s = g->generators()[k];
      CHECK(g->right_gen(x, k) == g->mul(x, s));
      CHECK(g->left_gen(k, x) == g->mul(s, x));
      CHECK(g->conj_gen(x, k) == g->conj(x, s));
    }
  }
  for (std::size_t i = 2; i < g->order(); ++i) CHECK(g->element(i - 1) < g->element(i));
}

TEST_CASE("S4 structure") {
  auto g = s4();
  REQUIRE(g->order() == 24);
  CHECK(center(*g).size() == 1);
  CHECK(derived_subgroup(*g).size() == 12);
  CHECK(conjugacy_classes(*g).classes.size() == 5);
  auto normals = normal_subgroups(*g);
  REQUIRE(normals.size() == 4);
  CHECK(normals[1].size() == 4);
  CHECK(normals[2].size() == 12);
  auto hist = element_order_histogram(*g);
  REQUIRE(hist.size() == 5);
  CHECK(hist[1] == 1);
  CHECK(hist[2] == 9);
  CHECK(hist[3] == 8);
  CHECK(hist[4] == 6);
  auto q = quotient_group(g, normals[1]);
  CHECK(q->order() == 6);
  CHECK(center(*q).size() == 1);
  CHECK_THROWS_AS(quotient_group(g, subgroup_generated(*g, {g->generators()[0]})), RingError);
  auto m = minimal_E(*g, normals);
  CHECK(!m.k);
  CHECK(!m.diagnosis.empty());
}

TEST_CASE("cyclic groups") {
  auto c12 = TableGroup::cyclic(12);
  CHECK(normal_subgroups(*c12).size() == 6);
  CHECK(center(*c12).size() == 12);
  auto cs = commutator_set(*c12);
  CHECK(cs[0]);
  CHECK(std::count(cs.begin(), cs.end(), true) == 1);
  auto p = power_set(*c12, 3);
  CHECK(std::count(p.begin(), p.end(), true) == 4);
}

TEST_CASE("subgroup helpers") {
  auto g = s4();
  Subgroup t = trivial_subgroup(*g), w = whole_group(*g);
  CHECK(t.subset_of(w));
  CHECK(!w.subset_of(t));
  CHECK(is_normal(*g, w));
  auto a4 = derived_subgroup(*g);
  CHECK(subgroup_from_mask(*g, a4.mask) == a4);
  std::vector<bool> bad(24, false);
  bad[0] = bad[g->generators()[1]] = true;
  CHECK_THROWS_AS(subgroup_from_mask(*g, bad), RingError);
  CHECK(centralizer(*g, {g->generators()[1]}).size() == 4);
  CHECK(derived_of(*g, a4).size() == 4);
}

TEST_CASE("PSL3(2): simple, minimal E is the whole group") {
  GroupPtr g = elementary_group(rep_of("A2", Lattice::Adjoint), FiniteRing::parse("Z/2"));
  auto normals = normal_subgroups(*g);
  CHECK(normals.size() == 2);
  auto m = minimal_E(*g, normals);
  REQUIRE(m.k);
  CHECK(m.k->size() == 168);
  auto cs = commutator_set(*g);
  CHECK(std::count(cs.begin(), cs.end(), true) == 168);
  auto bg = bounded_generation(*g, cs, 1);
  CHECK(bg.generated);
}

TEST_CASE("SL3(Z/4): congruence kernel and center") {
  auto z4 = FiniteRing::parse("Z/4");
  auto gp = elementary_group(rep_of("A2", Lattice::SimplyConnected), z4);
  GroupPtr g = gp;
  auto q = quotient_ring(z4, ideal_generated(*z4, {z4->from_int(2)}));
  std::vector<bool> kernel(g->order(), false);
  for (std::size_t i = 0; i < g->order(); ++i)
    kernel[i] = mat_is_identity(*q.ring, reduce_mod(gp->element(i), q));
  auto k = subgroup_from_mask(*g, kernel);
  CHECK(k.size() == 256);
  CHECK(is_normal(*g, k));
  CHECK(quotient_group(g, k)->order() == 168);
  CHECK(center(*g).size() == 1);  // no cube roots of unity besides 1 in Z/4
}

TEST_CASE("xm set for SL4(Z/2) at m = 4 is the whole group") {
  auto g = elementary_group(rep_of("A3", Lattice::SimplyConnected), FiniteRing::parse("Z/2"));
  auto x = xm_set(*g, 4, {});
  CHECK(std::count(x.begin(), x.end(), true) == 20160);
}

TEST_CASE("bounded generation: parallel matches serial") {
  auto g = s4();
  std::vector<bool> x(24, false);
  for (std::size_t s : g->generators()) x[s] = true;
  auto a = bounded_generation(*g, x, 10);
  auto b = bounded_generation_serial(*g, x, 10);
  CHECK(a.length == b.length);
  CHECK(a.generated);
  auto p = power_set(*g, 2);
  auto c = bounded_generation(*g, p, 3);
  auto d = bounded_generation_serial(*g, p, 3);
  CHECK(c.length == d.length);
  CHECK(c.histogram == d.histogram);
  auto short_run = bounded_generation(*g, x, 1);
  CHECK(!short_run.generated);
  CHECK(short_run.histogram == std::vector<std::size_t>{1, 2});
}

TEST_CASE("omega word sets") {
  auto w = word_set_omega(2, 1, 3);
  REQUIRE(w.size() == 9);
  CHECK(w[0].letters == "cc");
  CHECK(w[0].term == "[v1,v2]*[v3,v4]");
  CHECK(w[0].variables == 4);
  CHECK(w[4].letters == "dd");
  CHECK(w[4].term == "v1^3*v2^3");
  CHECK(w[8].term == "x1*x1");
  CHECK(w[8].variables == 0);
  CHECK(word_set_omega(3, 2, 2).size() == 64);
  CHECK_THROWS_AS(word_set_omega(0, 1, 2), RingError);
  CHECK_THROWS_AS(word_set_omega(12, 3, 2, 1000), BudgetExceeded);
}

TEST_CASE("group cache round trip") {
  auto g = elementary_group(rep_of("C2", Lattice::Adjoint), FiniteRing::parse("Z/2"));
  auto path = (std::filesystem::temp_directory_path() / "chevlab_cache_test.grp").string();
  write_group_cache(path, *g);
  auto h = read_group_cache(path);
  REQUIRE(h->order() == g->order());
  CHECK(h->rep()->label() == g->rep()->label());
  for (std::size_t i = 0; i < g->order(); ++i) CHECK(h->element(i) == g->element(i));
  CHECK(h->generators() == g->generators());
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_group_cache(path), RingError);
}

TEST_CASE("cache key is stable and sensitive") {
  auto a = group_cache_key("A2/sc", "Z/2", {"1 0 ; 0 1"});
  CHECK(a == group_cache_key("A2/sc", "Z/2", {"1 0 ; 0 1"}));
  CHECK(a != group_cache_key("A2/ad", "Z/2", {"1 0 ; 0 1"}));
  CHECK(a != group_cache_key("A2/sc", "Z/3", {"1 0 ; 0 1"}));
}
