#include "doctest.h"

#include "chevlab/ring.hpp"

using namespace chevlab;

TEST_CASE("modular ring arithmetic") {
  auto r = FiniteRing::parse("Z/4");
  CHECK(r->size() == 4);
  CHECK(r->units().size() == 2);
  CHECK(r->is_local());
  CHECK(r->check_axioms().empty());
  elem_t three = r->from_int(3);
  CHECK(r->mul(three, three) == r->one());
  CHECK(r->name(three) == "3");
}

TEST_CASE("galois field of order 4") {
  auto f = FiniteRing::parse("GF(2)[t]/(t^2+t+1)");
  CHECK(f->size() == 4);
  CHECK(f->units().size() == 3);
  elem_t t = f->parse_element("(0,1)");
  CHECK(f->mul(t, t) == f->add(t, f->one()));
}

TEST_CASE("dual numbers and ideals") {
  auto d = FiniteRing::parse("dual(Z/2)");
  CHECK(d->size() == 4);
  CHECK(d->is_local());
  auto is = ideals(*d);
  CHECK(is.size() == 3);
  auto q = quotient_ring(d, is[1]);
  CHECK(q.ring->size() == 2);
}

TEST_CASE("product ring is not local") {
  auto p = FiniteRing::parse("prod(Z/2,Z/3)");
  CHECK(p->size() == 6);
  CHECK_FALSE(p->is_local());
  CHECK(p->units().size() == 2);
  CHECK(p->check_axioms().empty());
}

TEST_CASE("ring isomorphisms") {
  auto a = FiniteRing::parse("Z/6");
  auto b = FiniteRing::parse("prod(Z/2,Z/3)");
  CHECK(find_ring_isomorphism(*a, *b).has_value());
  auto c = FiniteRing::parse("Z/4");
  auto d = FiniteRing::parse("dual(Z/2)");
  CHECK_FALSE(find_ring_isomorphism(*c, *d).has_value());
  auto f = FiniteRing::parse("GF(2)[t]/(t^2+t+1)");
  CHECK(ring_automorphisms(*f).size() == 2);
}

TEST_CASE("goodness") {
  auto z2 = FiniteRing::parse("Z/2");
  auto z3 = FiniteRing::parse("Z/3");
  CHECK_FALSE(is_good(*z2, RootType::A, 2));
  CHECK(is_good(*z2, RootType::A, 3));
  CHECK(is_good(*z3, RootType::C, 2));
  CHECK_FALSE(is_good(*z3, RootType::G, 2));
  CHECK(is_good(*z2, RootType::D, 4));
}
