#include "doctest.h"
#include "khom/error.hpp"
#include "khom/linalg.hpp"

using namespace khom;
using Q = Rational;

namespace {

Mat<Q> mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Mat<Q> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (auto& r : rows) {
    Index j = 0;
    for (long long x : r) m(i, j++) = Q(x);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("kernel of a rank one matrix") {
  auto k = kernel_basis<Q>(mat({{1, 2}, {2, 4}}));
  REQUIRE(k.cols() == 1);
  // proportional to (2, -1)
  CHECK(k(0, 0) * Q(-1) == k(1, 0) * Q(2));
  CHECK(rank<Q>(mat({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel of trivial maps") {
  CHECK(kernel_basis<Q>(zeros<Q>(2, 2)).cols() == 2);
  CHECK(kernel_basis<Q>(identity<Q>(3)).cols() == 0);
  CHECK(rank<Q>(zeros<Q>(3, 4)) == 0);
  CHECK(rank<Q>(identity<Q>(5)) == 5);
}

TEST_CASE("solve by back substitution") {
  Vec<Q> b(2);
  b << Q(3), Q(1);
  auto x = solve<Q>(mat({{1, 1}, {0, 1}}), b);
  REQUIRE(x);
  CHECK((*x)(0) == Q(2));
  CHECK((*x)(1) == Q(1));
  CHECK_FALSE(solve<Q>(zeros<Q>(2, 2), b));
  auto y = solve<Q>(identity<Q>(2), b);
  REQUIRE(y);
  CHECK(*y == b);
  CHECK_THROWS_AS(solve<Q>(identity<Q>(3), b), MathError);
}

TEST_CASE("rank nullity") {
  Mat<Q> m = mat({{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}});
  CHECK(rank<Q>(m) + kernel_basis<Q>(m).cols() == m.cols());
  CHECK(is_zero<Q>(Mat<Q>(m * kernel_basis<Q>(m))));
}

TEST_CASE("prime field arithmetic") {
  PrimeScope scope(5);
  Mat<ModP> m(2, 2);
  m << ModP(1), ModP(2), ModP(3), ModP(1);
  // det = 1 - 6 = 0 mod 5
  CHECK(rank<ModP>(m) == 1);
  CHECK(ModP(3) * ModP(2) == ModP(1));
}

TEST_CASE("rationals stay canonical past 64 bits") {
  Q big(1);
  for (int i = 0; i < 5; ++i) big = big * Q(1000000007LL);
  Q back = big;
  for (int i = 0; i < 5; ++i) back = back / Q(1000000007LL);
  CHECK(back == Q(1));
  CHECK(back.is_small());
  CHECK(Q::parse("6/4") == Q(3, 2));
}
