#include "doctest.h"

#include <random>

#include "chevlab/chevmat.hpp"

using namespace chevlab;

namespace {

RepPtr rep_of(const char* system, Lattice l) {
  return Representation::make(std::make_shared<RootSystem>(RootSystem::parse(system)), l);
}

Mat commutator(const FiniteRing& r, const Mat& x, const Mat& xi, const Mat& y, const Mat& yi) {
  return mat_mul(r, mat_mul(r, xi, yi), mat_mul(r, x, y));
}

// Steinberg relations checked independently of the library's own sweep.
void check_relations(const Representation& rep, const FiniteRing& r) {
  const RootSystem& rs = rep.roots();
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (elem_t s = 0; s < r.size(); ++s)
      for (elem_t t = 0; t < r.size(); ++t)
        REQUIRE(mat_mul(r, rep.root_element(r, a, s), rep.root_element(r, a, t)) ==
                rep.root_element(r, a, r.add(s, t)));
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (std::size_t b = 0; b < rs.size(); ++b) {
      if (b == a || b == rs.negative_of(a)) continue;
      auto terms = rs.commutator_coeffs(a, b);
      for (elem_t t = 0; t < r.size(); ++t)
        for (elem_t u = 0; u < r.size(); ++u) {
          Mat lhs = commutator(r, rep.root_element(r, a, t), rep.root_element(r, a, r.neg(t)),
                               rep.root_element(r, b, u), rep.root_element(r, b, r.neg(u)));
          Mat rhs = mat_identity(r, rep.dim());
          for (const auto& c : terms) {
            Root g(rs.rank());
            for (int k = 0; k < rs.rank(); ++k) g[k] = c.i * rs.root(a)[k] + c.j * rs.root(b)[k];
            elem_t v = r.mul(r.from_int(c.coeff), r.mul(r.pow(t, c.i), r.pow(u, c.j)));
            rhs = mat_mul(r, rhs, rep.root_element(r, rs.index_checked(g), v));
          }
          REQUIRE(lhs == rhs);
        }
    }
}

}  // namespace

TEST_CASE("root element basics") {
  auto r = FiniteRing::parse("Z/4");
  auto sl = rep_of("A3", Lattice::SimplyConnected);
  CHECK(sl->dim() == 4);
  Mat x = sl->root_element(*r, 0, r->from_int(3));
  Mat expect = mat_identity(*r, 4);
  expect.at(0, 1) = r->from_int(3);
  CHECK(x == expect);
  auto ad = rep_of("A2", Lattice::Adjoint);
  CHECK(ad->dim() == 8);
  CHECK(ad->root_element(*r, 2, 0) == mat_identity(*r, 8));
  // (M - I)^4 = 0 for a simple root element.
  Mat m = ad->root_element(*r, 0, r->one());
  Mat n = m;
  for (std::size_t i = 0; i < 8; ++i) n.at(i, i) = r->sub(n.at(i, i), r->one());
  Mat p = mat_mul(*r, mat_mul(*r, n, n), mat_mul(*r, n, n));
  CHECK(p == Mat(8));
}

TEST_CASE("Steinberg relations in every representation") {
  SUBCASE("A2 adjoint over Z/4") { check_relations(*rep_of("A2", Lattice::Adjoint), *FiniteRing::parse("Z/4")); }
  SUBCASE("A3 SL4 over Z/2") { check_relations(*rep_of("A3", Lattice::SimplyConnected), *FiniteRing::parse("Z/2")); }
  SUBCASE("C2 Sp4 over GF(3)") { check_relations(*rep_of("C2", Lattice::SimplyConnected), *FiniteRing::parse("Z/3")); }
  SUBCASE("C3 Sp6 over Z/4") { check_relations(*rep_of("C3", Lattice::SimplyConnected), *FiniteRing::parse("Z/4")); }
  SUBCASE("A3 SO6 over dual(Z/2)") { check_relations(*rep_of("A3", Lattice::IntermediateSO6), *FiniteRing::parse("dual(Z/2)")); }
  SUBCASE("G2 adjoint over Z/3") { check_relations(*rep_of("G2", Lattice::Adjoint), *FiniteRing::parse("Z/3")); }
  SUBCASE("B2 adjoint over Z/4") { check_relations(*rep_of("B2", Lattice::Adjoint), *FiniteRing::parse("Z/4")); }
}

TEST_CASE("unsupported lattices are rejected") {
  auto phi = std::make_shared<RootSystem>(RootSystem::parse("G2"));
  CHECK_THROWS(Representation::make(phi, Lattice::SimplyConnected));
  auto a2 = std::make_shared<RootSystem>(RootSystem::parse("A2"));
  CHECK_THROWS(Representation::make(a2, Lattice::IntermediateSO6));
}

TEST_CASE("torus and Weyl elements") {
  auto r = FiniteRing::parse("Z/5");
  auto sl = rep_of("A3", Lattice::SimplyConnected);
  elem_t t = r->from_int(2);
  Mat h = sl->torus_element(*r, 0, t);
  CHECK(h == sl->torus_from_params(*r, {t, r->inv(t), r->one(), r->one()}));
  CHECK(sl->torus_element(*r, 3, r->one()) == mat_identity(*r, 4));
  CHECK_THROWS(sl->weyl_element(*FiniteRing::parse("Z/4"), 0, 2));
  // Conjugation by w_a(1) moves x_b(z) to x_{s_a b}(eta z).
  const RootSystem& rs = sl->roots();
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (std::size_t b = 0; b < rs.size(); ++b) {
      Mat w = sl->weyl_element(*r, a, r->one());
      Mat wi = sl->weyl_element(*r, a, r->neg(r->one()));
      Mat lhs = mat_mul(*r, mat_mul(*r, w, sl->root_element(*r, b, t)), wi);
      std::size_t sb = rs.index_checked(rs.reflect(rs.root(a), rs.root(b)));
      elem_t z = rs.weyl_sign(a, b) > 0 ? t : r->neg(t);
      CHECK(lhs == sl->root_element(*r, sb, z));
    }
}

TEST_CASE("SO6 torus map matches the representation") {
  auto r = FiniteRing::parse("Z/5");
  auto so6 = rep_of("A3", Lattice::IntermediateSO6);
  elem_t two = r->from_int(2), three = r->from_int(3), one = r->one();
  Mat d = so6_torus_map(*r, two, three, one, one);
  std::vector<long> expect = {1, 2, 2, 3, 3, 1};
  for (std::size_t i = 0; i < 6; ++i) CHECK(d.at(i, i) == r->from_int(expect[i]));
  CHECK_THROWS(so6_torus_map(*r, two, one, one, one));
  CHECK(so6_torus_map(*r, one, one, one, one) == mat_identity(*r, 6));
  // h_{alpha_i}(t) in SO6 is the image of diag(.., t, t^-1, ..) in SL4.
  for (int i = 0; i < 3; ++i) {
    std::vector<elem_t> z(4, one);
    z[i] = two;
    z[i + 1] = r->inv(two);
    CHECK(so6->torus_element(*r, i, two) == so6_torus_map(*r, z[0], z[1], z[2], z[3]));
  }
  CHECK(r->mul(r->mul(d.at(0, 0), d.at(1, 1)), d.at(2, 2)) == r->mul(two, two));
}

TEST_CASE("generators preserve the stored forms") {
  for (const char* ring : {"Z/2", "Z/4", "dual(Z/2)", "Z/3"}) {
    auto r = FiniteRing::parse(ring);
    for (auto rep : {rep_of("C2", Lattice::SimplyConnected), rep_of("A3", Lattice::IntermediateSO6),
                     rep_of("A2", Lattice::SimplyConnected)})
      for (std::size_t a = 0; a < rep->roots().size(); ++a)
        for (elem_t t = 0; t < r->size(); ++t) CHECK(rep->satisfies_equations(*r, rep->root_element(*r, a, t)));
  }
  auto r = FiniteRing::parse("Z/4");
  auto so6 = rep_of("A3", Lattice::IntermediateSO6);
  Mat bad = mat_identity(*r, 6);
  bad.at(0, 0) = r->from_int(3);
  CHECK_FALSE(so6->satisfies_equations(*r, bad));
  auto dec = decompose_te(*so6, *r, bad);
  CHECK_FALSE(dec.member);
  CHECK(dec.diagnosis.find("form") != std::string::npos);
}

TEST_CASE("Gauss decomposition round trip") {
  std::mt19937 rng(7);
  for (auto [system, lattice, ring] :
       {std::tuple{"A3", Lattice::IntermediateSO6, "dual(Z/2)"}, std::tuple{"A2", Lattice::Adjoint, "Z/4"},
        std::tuple{"C2", Lattice::SimplyConnected, "Z/9"}, std::tuple{"A3", Lattice::SimplyConnected, "Z/5"}}) {
    auto rep = rep_of(system, lattice);
    auto r = FiniteRing::parse(ring);
    const RootSystem& rs = rep->roots();
    auto units = r->units();
    for (int trial = 0; trial < 30; ++trial) {
      Mat g = mat_identity(*r, rep->dim());
      for (int k = 0; k < 6; ++k) {
        std::size_t a = rng() % rs.size();
        g = mat_mul(*r, g, rep->root_element(*r, a, static_cast<elem_t>(rng() % r->size())));
        g = mat_mul(*r, g, rep->torus_element(*r, a, units[rng() % units.size()]));
      }
      auto te = decompose_te(*rep, *r, g);
      REQUIRE(te.member);
      Mat wg = mat_mul(*r, weyl_word_matrix(*rep, *r, te.weyl_word), g);
      CHECK(gauss_reassemble(*rep, *r, te.factors) == wg);
    }
    CHECK(gauss_decompose(*rep, *r, mat_identity(*r, rep->dim()))->upper.empty());
  }
  CHECK_THROWS(gauss_decompose(*rep_of("A2", Lattice::SimplyConnected), *FiniteRing::parse("Z/6"),
                               mat_identity(*FiniteRing::parse("Z/6"), 3)));
}

TEST_CASE("SO6 elementary membership") {
  auto so6 = rep_of("A3", Lattice::IntermediateSO6);
  auto d = FiniteRing::parse("dual(Z/2)");
  elem_t u = d->parse_element("(1,1)");
  auto m = elementary_membership_so6(*so6, *d, mat_scalar(*d, 6, u));
  CHECK(m.in_te);
  CHECK_FALSE(m.elementary);
  CHECK(m.square_class == u);
  Mat g = mat_mul(*d, so6->root_element(*d, 2, u), so6->root_element(*d, 7, d->one()));
  CHECK(elementary_membership_so6(*so6, *d, g).elementary);
  // Multiplying by root elements leaves the class unchanged.
  Mat h = mat_mul(*d, mat_mul(*d, g, mat_scalar(*d, 6, u)), so6->root_element(*d, 4, u));
  CHECK(elementary_membership_so6(*so6, *d, h).square_class == u);
  auto z5 = FiniteRing::parse("Z/5");
  Mat t = so6->torus_from_params(*z5, {z5->from_int(2), z5->from_int(2), z5->one()});
  CHECK(elementary_membership_so6(*so6, *z5, t).elementary);
}

TEST_CASE("center scalars") {
  CHECK(center_scalars(*rep_of("A2", Lattice::Adjoint), *FiniteRing::parse("Z/4")).size() == 1);
  CHECK(center_scalars(*rep_of("A3", Lattice::IntermediateSO6), *FiniteRing::parse("dual(Z/2)")).size() == 2);
  CHECK(center_scalars(*rep_of("A3", Lattice::SimplyConnected), *FiniteRing::parse("Z/5")).size() == 4);
  CHECK(center_scalars(*rep_of("C2", Lattice::SimplyConnected), *FiniteRing::parse("Z/8")).size() == 4);
}

TEST_CASE("reduction modulo an ideal") {
  auto d = FiniteRing::parse("dual(Z/2)");
  auto is = ideals(*d);
  auto q = quotient_ring(d, is[1]);
  elem_t u = d->parse_element("(1,1)");
  CHECK(mat_is_identity(*q.ring, reduce_mod(mat_scalar(*d, 6, u), q)));
  auto so6 = rep_of("A3", Lattice::IntermediateSO6);
  Mat x = so6->root_element(*d, 1, u);
  CHECK(reduce_mod(x, q) == so6->root_element(*q.ring, 1, q.projection[u]));
}

TEST_CASE("matrix dump round trip") {
  auto r = FiniteRing::parse("GF(2)[t]/(t^2+t+1)");
  auto rep = rep_of("A2", Lattice::SimplyConnected);
  Mat x = rep->root_element(*r, 4, r->parse_element("(0,1)"));
  CHECK(mat_from_line(*r, mat_to_line(*r, x)) == x);
}
