#include "doctest.h"
#include "khom/catalog.hpp"
#include "khom/error.hpp"
#include "khom/serrear.hpp"

using namespace khom;
using Q = Rational;

namespace {

bool equivalent(const Complex<Q>& x, const Complex<Q>& y) {
  auto r = homotopy_equivalent(minimize(x, 3).complex, minimize(y, 4).complex, 7, 8);
  return r.status == Equivalence<Q>::Status::equivalent && r.certificate->verify();
}

std::vector<Index> dims(const Complex<Q>& x, int n) { return x.term(n).dims(); }

}  // namespace

TEST_CASE("lambda of a simple on a2") {
  auto a2 = catalog_algebra<Q>("a2");
  auto l = lambda(simple<Q>(a2, 0));
  REQUIRE(l.lo() == -2);
  REQUIRE(l.hi() == 0);
  CHECK(dims(l, -2) == std::vector<Index>{0, 1});
  CHECK(dims(l, -1) == std::vector<Index>{1, 1});
  CHECK(dims(l, 0) == std::vector<Index>{1, 0});
  CHECK(is_acyclic(l));
  CHECK_FALSE(is_contractible(l));
}

TEST_CASE("lambda_prime of a simple on a2") {
  auto a2 = catalog_algebra<Q>("a2");
  auto l = lambda_prime(simple<Q>(a2, 1));
  REQUIRE(l.lo() == 0);
  REQUIRE(l.hi() == 2);
  CHECK(dims(l, 0) == std::vector<Index>{0, 1});
  CHECK(dims(l, 1) == std::vector<Index>{1, 1});
  CHECK(dims(l, 2) == std::vector<Index>{1, 0});
  CHECK(is_acyclic(l));
}

TEST_CASE("lambda images of projectives and injectives are contractible") {
  for (const char* name : {"a2", "a3", "n3", "d4"}) {
    auto alg = catalog_algebra<Q>(name);
    for (int i = 0; i < alg->num_vertices(); ++i) {
      CHECK(is_contractible(lambda(projective<Q>(alg, i))));
      CHECK(is_contractible(lambda_prime(injective<Q>(alg, i))));
      CHECK(is_acyclic(lambda(simple<Q>(alg, i))));
      CHECK(is_acyclic(lambda_prime(simple<Q>(alg, i))));
    }
  }
}

TEST_CASE("quotient models") {
  auto a3 = catalog_algebra<Q>("a3");
  auto s2 = simple<Q>(a3, 1);
  auto x = Complex<Q>::stalk(s2, 0);
  auto q = quotient_model(x, Side::prj);
  CHECK(equivalent(q, lambda(s2)));
  CHECK(equivalent(quotient_model(q, Side::prj), q));
  CHECK(is_contractible(quotient_model(Complex<Q>::stalk(projective<Q>(a3, 0), 1), Side::prj)));
  CHECK(equivalent(quotient_model(x, Side::inj), lambda_prime(s2)));
}

TEST_CASE("i_rho") {
  auto a2 = catalog_algebra<Q>("a2");
  auto l = lambda(simple<Q>(a2, 0));
  CHECK(equivalent(i_rho(l), l));
  CHECK(is_contractible(i_rho(Complex<Q>::stalk(injective<Q>(a2, 1), 0))));
  // adjunction shadow against acyclic sources
  auto x = Complex<Q>::stalk(simple<Q>(a2, 1), 1);
  auto ix = i_rho(x);
  for (int s = -2; s <= 2; ++s) CHECK(hom_K_dim(shift(l, s), ix) == hom_K_dim(shift(l, s), x));
}

TEST_CASE("serre_S") {
  auto a2 = catalog_algebra<Q>("a2");
  CHECK(serre_S(Complex<Q>::zero(a2)).is_zero());
  CHECK_THROWS_AS(serre_S(Complex<Q>::stalk(simple<Q>(a2, 0), 0)), PreconditionError);
  auto s = serre_S(lambda(simple<Q>(a2, 0)), 1);
  CHECK(is_acyclic(s));
  int hits = 0, found = 99;
  for (int k = -4; k <= 4; ++k)
    if (equivalent(shift(s, k), lambda_prime(simple<Q>(a2, 1)))) {
      ++hits;
      found = k;
    }
  CHECK(hits == 1);
  CHECK(found == -2);
}

TEST_CASE("end algebras and indecomposability") {
  auto a2 = catalog_algebra<Q>("a2");
  auto l = lambda(simple<Q>(a2, 0));
  auto e = end_algebra(l);
  CHECK(e.dim == 1);
  CHECK(e.radical.cols() == 0);
  auto ll = direct_sum<Q>({l, l});
  CHECK(end_algebra(ll).dim == 4);
  CHECK(end_algebra(Complex<Q>::zero(a2)).dim == 0);

  CHECK(is_indecomposable(l).verdict == Indecomposability<Q>::Verdict::yes);
  auto d = is_indecomposable(ll, 5);
  REQUIRE(d.verdict == Indecomposability<Q>::Verdict::no);
  REQUIRE(d.idempotent);
  CHECK(d.corner_dims[0] + d.corner_dims[1] == 2);
  CHECK_THROWS_AS(is_indecomposable(Complex<Q>::zero(a2)), PreconditionError);

  auto a3 = catalog_algebra<Q>("a3");
  auto m = lambda(simple<Q>(a3, 1));
  CHECK(is_indecomposable(m).verdict == Indecomposability<Q>::Verdict::yes);
}

TEST_CASE("AR triangle on a2 and a3") {
  auto a2 = catalog_algebra<Q>("a2");
  std::vector<Probe<Q>> probes;
  for (int i = 0; i < 2; ++i)
    for (auto m : {simple<Q>(a2, i), projective<Q>(a2, i)})
      for (int s = -2; s <= 2; ++s) probes.push_back({"p", shift(lambda(m), s)});
  auto t = ar_triangle(lambda(simple<Q>(a2, 0)), probes, 1);
  CHECK(t.w_nonzero);
  CHECK(t.ends_indecomposable);
  CHECK(t.pass());
  CHECK(equivalent(shift(t.sz, -2), lambda_prime(simple<Q>(a2, 1))));

  // a3: Z = lambda([1,2]); the end term matches tau[1,2] = [2,3]
  auto a3 = catalog_algebra<Q>("a3");
  std::vector<Mat<Q>> maps{Mat<Q>::Constant(1, 1, Q(1)), zeros<Q>(0, 1)};
  auto i12 = Module<Q>(a3, {1, 1, 0}, maps);
  std::vector<Mat<Q>> maps23{zeros<Q>(1, 0), Mat<Q>::Constant(1, 1, Q(1))};
  auto i23 = Module<Q>(a3, {0, 1, 1}, maps23);
  auto ta = ar_triangle(lambda(i12), {}, 2);
  CHECK(ta.w_nonzero);
  CHECK(ta.ends_indecomposable);
  CHECK(equivalent(shift(ta.sz, -2), lambda_prime(i23)));
}

TEST_CASE("ar_triangle rejects decomposable input") {
  auto a2 = catalog_algebra<Q>("a2");
  auto l = lambda(simple<Q>(a2, 0));
  CHECK_THROWS_AS(ar_triangle(direct_sum<Q>({l, l}), {}, 1), PreconditionError);
}
