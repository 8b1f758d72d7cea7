#include "doctest.h"
#include "khom/catalog.hpp"
#include "khom/error.hpp"
#include "khom/homotopy.hpp"

using namespace khom;
using Q = Rational;

namespace {

// P2 -> P1 -> S1 in degrees -1, 0, 1 over a2.
Complex<Q> short_exact() {
  auto a2 = catalog_algebra<Q>("a2");
  auto p1 = projective<Q>(a2, 0), p2 = projective<Q>(a2, 1), s1 = simple<Q>(a2, 0);
  auto i = hom_basis(p2, p1).at(0);
  auto e = hom_basis(p1, s1).at(0);
  return Complex<Q>(a2, -1, {p2, p1, s1}, {i, e});
}

}  // namespace

TEST_CASE("cone of the identity is contractible") {
  auto x = short_exact();
  auto c = cone(ChainMap<Q>::identity(x));
  auto h = is_contractible(c);
  REQUIRE(h);
  CHECK(boundary_of(*h) == ChainMap<Q>::identity(c));
}

TEST_CASE("exact but not contractible") {
  auto x = short_exact();
  CHECK(is_acyclic(x));
  CHECK_FALSE(is_contractible(x));
  CHECK(hom_K_dim(x, x) == 1);
}

TEST_CASE("stalk homs") {
  auto a2 = catalog_algebra<Q>("a2");
  auto p1 = Complex<Q>::stalk(projective<Q>(a2, 0), 0);
  auto s1 = Complex<Q>::stalk(simple<Q>(a2, 0), 0);
  CHECK(hom_K_dim(p1, s1) == 1);
  CHECK(hom_K_dim(s1, p1) == 0);
  CHECK(hom_K_dim(s1, shift(s1, 1)) == 0);
}

TEST_CASE("d squared must vanish") {
  auto a2 = catalog_algebra<Q>("a2");
  auto p1 = projective<Q>(a2, 0);
  auto id = ModuleMap<Q>::identity(p1);
  CHECK_THROWS_AS(Complex<Q>(a2, 0, {p1, p1, p1}, {id, id}), StructureError);
}

TEST_CASE("shift and dual") {
  auto x = short_exact();
  auto y = shift(x, 2);
  CHECK(y.lo() == -3);
  CHECK(shift(y, -2) == x);
  auto dx = dual_D(x);
  CHECK(dx.lo() == -1);
  CHECK(dx.algebra() == x.algebra()->opposite());
  CHECK(is_acyclic(dx));
}

TEST_CASE("minimize removes split pieces") {
  auto a2 = catalog_algebra<Q>("a2");
  auto x = short_exact();
  auto c = cone(ChainMap<Q>::identity(x));
  auto m = minimize(c, 3);
  CHECK(m.complex.is_zero());
  CHECK(m.certificate.verify());

  auto p1 = projective<Q>(a2, 0);
  auto s1 = simple<Q>(a2, 0);
  auto sum = direct_sum<Q>(a2, {p1, s1});
  auto e = hom_basis(p1, s1).at(0);
  // P1 -> P1 ⊕ S1 via (id, e) splits off P1
  auto in = ModuleMap<Q>(p1, sum.module,
                         (injection<Q>(sum, 0) + injection<Q>(sum, 1) * e).components());
  auto z = Complex<Q>(a2, 0, {p1, sum.module}, {in});
  auto mz = minimize(z, 5);
  CHECK(mz.certificate.verify());
  CHECK(mz.complex.total_dim() == 1);
  CHECK(homotopy_equivalent(z, Complex<Q>::stalk(s1, 1), 1, 4).status ==
        Equivalence<Q>::Status::equivalent);
}

TEST_CASE("inequivalent complexes are told apart") {
  auto a2 = catalog_algebra<Q>("a2");
  auto s1 = Complex<Q>::stalk(simple<Q>(a2, 0), 0);
  auto r = homotopy_equivalent(s1, shift(s1, 1), 1, 4);
  CHECK(r.status == Equivalence<Q>::Status::not_equivalent);
  CHECK_FALSE(r.witness.empty());
}
