#include "doctest.h"
#include "khom/catalog.hpp"
#include "khom/columns.hpp"
#include "khom/error.hpp"

using namespace khom;
using Q = Rational;

namespace {

bool equivalent(const Complex<Q>& x, const Complex<Q>& y) {
  auto r = homotopy_equivalent(x, y, 7, 6);
  if (r.status != Equivalence<Q>::Status::equivalent) return false;
  return r.certificate->verify();
}

Complex<Q> two_term(const Module<Q>& a, const Module<Q>& b, int lo) {
  auto f = hom_basis(a, b).at(0);
  return Complex<Q>(a.algebra(), lo, {a, b}, {f});
}

}  // namespace

TEST_CASE("transpose column of a simple left module") {
  auto op = catalog_algebra<Q>("a2^op");
  auto c = phi(Complex<Q>::stalk(simple<Q>(op, 1), 0));
  REQUIRE(c.lo() == 0);
  REQUIRE(c.hi() == 2);
  CHECK(c.term(0).dims() == std::vector<Index>{0, 1});
  CHECK(c.term(1).dims() == std::vector<Index>{1, 1});
  CHECK(c.term(2).dims() == std::vector<Index>{1, 0});
  CHECK(phi(Complex<Q>::zero(op)).is_zero());
}

TEST_CASE("phi of the regular module") {
  auto a2 = catalog_algebra<Q>("a2");
  auto op = a2->opposite();
  auto reg_op = direct_sum<Q>(op, {projective<Q>(op, 0), projective<Q>(op, 1)}).module;
  auto reg = direct_sum<Q>(a2, {projective<Q>(a2, 0), projective<Q>(a2, 1)}).module;
  CHECK(equivalent(phi(Complex<Q>::stalk(reg_op, 0)), Complex<Q>::stalk(reg, 0)));
}

TEST_CASE("serre functor on a2 stalks") {
  auto a2 = catalog_algebra<Q>("a2");
  auto m = minimize(serre_U(Complex<Q>::stalk(projective<Q>(a2, 0), 0)), 1);
  CHECK(m.certificate.verify());
  CHECK(equivalent(m.complex, Complex<Q>::stalk(injective<Q>(a2, 0), 0)));
  CHECK(nakayama(projective<Q>(a2, 0)).dims() == injective<Q>(a2, 0).dims());
  CHECK_THROWS_AS(nakayama(simple<Q>(a2, 0)), PreconditionError);

  // [S2 -> I2 -> I1] in degrees -2..0
  auto s2 = simple<Q>(a2, 1), i2 = injective<Q>(a2, 1), i1 = injective<Q>(a2, 0);
  auto x = Complex<Q>(a2, -2, {s2, i2, i1}, {hom_basis(s2, i2).at(0), hom_basis(i2, i1).at(0)});
  CHECK(equivalent(serre_U(Complex<Q>::stalk(simple<Q>(a2, 0), 0)), x));
}

TEST_CASE("resolutions of complexes") {
  auto a2 = catalog_algebra<Q>("a2");
  auto s1 = Complex<Q>::stalk(simple<Q>(a2, 0), 0);
  auto r = proj_resolve_complex(s1);
  CHECK(r.map.is_chain_map());
  CHECK(is_acyclic(cone(r.map)));
  CHECK(equivalent(r.complex, two_term(projective<Q>(a2, 1), projective<Q>(a2, 0), -1)));

  auto s2 = Complex<Q>::stalk(simple<Q>(a2, 1), 0);
  auto i = inj_resolve_complex(s2);
  CHECK(i.map.is_chain_map());
  CHECK(is_acyclic(cone(i.map)));
  CHECK(equivalent(i.complex, two_term(injective<Q>(a2, 1), injective<Q>(a2, 0), 0)));

  auto p1 = projective<Q>(a2, 0), p2 = projective<Q>(a2, 1), sm = simple<Q>(a2, 0);
  auto ex = Complex<Q>(a2, -1, {p2, p1, sm}, {hom_basis(p2, p1).at(0), hom_basis(p1, sm).at(0)});
  auto re = proj_resolve_complex(ex);
  CHECK(is_contractible(re.complex));
}

TEST_CASE("duality and serre identities on small pairs") {
  for (const char* name : {"a2", "n3"}) {
    auto alg = catalog_algebra<Q>(name);
    std::vector<Complex<Q>> objs;
    for (int i = 0; i < alg->num_vertices(); ++i) {
      objs.push_back(Complex<Q>::stalk(simple<Q>(alg, i), 0));
      objs.push_back(Complex<Q>::stalk(projective<Q>(alg, i), 1));
      objs.push_back(Complex<Q>::stalk(injective<Q>(alg, i), -1));
    }
    for (const auto& x : objs) {
      auto sx = serre_U(x);
      for (const auto& y : objs) CHECK(hom_K_dim(x, y) == hom_K_dim(y, sx));
    }
    auto op = alg->opposite();
    std::vector<Complex<Q>> ops;
    for (int i = 0; i < op->num_vertices(); ++i) {
      ops.push_back(Complex<Q>::stalk(simple<Q>(op, i), 0));
      ops.push_back(Complex<Q>::stalk(projective<Q>(op, i), 1));
    }
    for (const auto& x : ops)
      for (const auto& y : ops) CHECK(hom_K_dim(x, y) == hom_K_dim(phi(y), phi(x)));
  }
}

TEST_CASE("phi on maps is a chain map") {
  auto op = catalog_algebra<Q>("a3^op");
  auto p = projective<Q>(op, 2), s = simple<Q>(op, 2);
  auto f = hom_basis(p, s).at(0);
  auto x = Complex<Q>::stalk(p, 0), y = Complex<Q>::stalk(s, 0);
  auto g = ChainMap<Q>(x, y, 0, {f});
  auto pg = phi(g);
  CHECK(pg.is_chain_map());
  CHECK(pg.source().algebra() == op->opposite());
  auto sg = serre_U(g);
  CHECK(sg.is_chain_map());
}
