#include "doctest.h"

#include <cstdlib>

#include "chevlab/rootsys.hpp"

using namespace chevlab;

TEST_CASE("root counts") {
  CHECK(RootSystem::parse("A2").size() == 6);
  CHECK(RootSystem::parse("A3").size() == 12);
  CHECK(RootSystem::parse("B3").size() == 18);
  CHECK(RootSystem::parse("C3").size() == 18);
  CHECK(RootSystem::parse("D4").size() == 24);
  CHECK(RootSystem::parse("G2").size() == 12);
  CHECK(RootSystem::parse("F4").size() == 48);
  CHECK(RootSystem::parse("E6").size() == 72);
}

TEST_CASE("illegal root systems") {
  CHECK_THROWS(RootSystem::parse("A1"));
  CHECK_THROWS(RootSystem::parse("G3"));
  CHECK_THROWS(RootSystem::parse("X2"));
}

TEST_CASE("Jacobi identity holds for the Chevalley basis") {
  for (const char* l : {"A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    CAPTURE(l);
    RootSystem phi = RootSystem::parse(l);
    CHECK(check_jacobi(chevalley_basis(phi)).empty());
  }
}

TEST_CASE("corrupted structure constant breaks Jacobi") {
  RootSystem phi = RootSystem::parse("A3");
  phi.corrupt_structure_constant(0, 1);
  CHECK_FALSE(check_jacobi(chevalley_basis(phi)).empty());
}

TEST_CASE("extraspecial pairs are positive") {
  RootSystem phi = RootSystem::parse("G2");
  // alpha1 short, alpha2 long: alpha1 + alpha2 extraspecial
  CHECK(phi.structure_constant(0, 1) == 1);
  auto s = phi.index_of({2, 1});
  REQUIRE(s);
  CHECK(phi.structure_constant(0, phi.index_checked({1, 1})) == 2);
}

TEST_CASE("commutator coefficients in A2 and G2") {
  RootSystem a2 = RootSystem::parse("A2");
  auto c = a2.commutator_coeffs(0, 1);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].coeff) == 1);
  RootSystem g2 = RootSystem::parse("G2");
  auto d = g2.commutator_coeffs(0, 1);
  CHECK(d.size() == 4);
  RootSystem b2 = RootSystem::parse("B2");
  CHECK(b2.commutator_coeffs(1, 0).size() == 2);
}

TEST_CASE("weyl signs are units") {
  RootSystem phi = RootSystem::parse("C3");
  for (std::size_t a = 0; a < phi.size(); ++a)
    for (std::size_t b = 0; b < phi.size(); ++b) CHECK(std::abs(phi.weyl_sign(a, b)) == 1);
  auto [idx, sign] = phi.weyl_action({0}, 0);
  CHECK(idx == phi.negative_of(0));
  CHECK(std::abs(sign) == 1);
}
