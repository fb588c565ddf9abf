#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gf.hpp"

using namespace spn;

namespace {
struct Params {
  int p, k;
};
const Params kFields[] = {{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}};
}  // namespace

TEST_CASE("field axioms on the grid fields") {
  for (auto [p, k] : kFields) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(k);
    int q = F.q();
    REQUIRE(q <= 32);
    for (int a = 0; a < q; ++a) {
      Fe fa = static_cast<Fe>(a);
      CHECK(F.add(fa, F.zero()) == fa);
      CHECK(F.mul(fa, F.one()) == fa);
      CHECK(F.add(fa, F.neg(fa)) == F.zero());
      if (fa != F.zero()) CHECK(F.mul(fa, F.inv(fa)) == F.one());
      for (int b = 0; b < q; ++b) {
        Fe fb = static_cast<Fe>(b);
        CHECK(F.add(fa, fb) == F.add(fb, fa));
        CHECK(F.mul(fa, fb) == F.mul(fb, fa));
        CHECK(F.sub(fa, fb) == F.add(fa, F.neg(fb)));
        for (int c = 0; c < q; ++c) {
          Fe fc = static_cast<Fe>(c);
          CHECK(F.mul(fa, F.add(fb, fc)) == F.add(F.mul(fa, fb), F.mul(fa, fc)));
        }
      }
    }
  }
}

TEST_CASE("omega generates the multiplicative group") {
  for (auto [p, k] : kFields) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(k);
    CHECK(F.order(F.omega()) == F.q() - 1);
    std::vector<bool> seen(F.q(), false);
    Fe r = F.one();
    for (int e = 0; e < F.q() - 1; ++e) {
      CHECK(!seen[r]);
      seen[r] = true;
      CHECK(F.dlog(r) == e);
      r = F.mul(r, F.omega());
    }
    CHECK(r == F.one());
  }
}

TEST_CASE("pow and dlog agree") {
  Field F(3, 3);
  for (int e = -10; e <= 30; ++e) {
    Fe v = F.pow(F.omega(), e);
    CHECK(F.dlog(v) == ((e % (F.q() - 1)) + F.q() - 1) % (F.q() - 1));
  }
}

TEST_CASE("two_squares covers every nonzero element") {
  for (auto [p, k] : kFields) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(k);
    for (int v = 1; v < F.q(); ++v) {
      Fe mu = static_cast<Fe>(v);
      auto ts = F.two_squares(mu);
      REQUIRE(ts.terms >= 1);
      REQUIRE(ts.terms <= 2);
      Fe got = F.pow(F.omega(), 2L * ts.a);
      if (ts.terms == 2) got = F.add(got, F.pow(F.omega(), 2L * ts.b));
      CHECK(got == mu);
    }
    CHECK(F.two_squares(F.zero()).terms == 0);
  }
}

TEST_CASE("deterministic default modulus is the lexicographically smallest") {
  Field F9(3, 2);
  CHECK(F9.modulus() == std::vector<int>{1, 0, 1});  // x^2 + 1
  CHECK(F9.describe() == "p=3 k=2 mod=1,0,1");
  Field F27(3, 3);
  CHECK(F27.modulus() == std::vector<int>{1, 0, 2, 1});  // x^3 + 2x^2 + 1
  Field F25(5, 2);
  CHECK(F25.modulus()[2] == 1);
  Field F3(3, 1);
  CHECK(F3.modulus() == std::vector<int>{0, 1});
}

TEST_CASE("coeffs round trip") {
  Field F(3, 3);
  for (int v = 0; v < F.q(); ++v) {
    Fe fv = static_cast<Fe>(v);
    CHECK(F.from_coeffs(F.coeffs(fv)) == fv);
  }
}

TEST_CASE("constructor rejects bad parameters") {
  CHECK_THROWS_AS(Field(4, 1), Error);
  CHECK_THROWS_AS(Field(1, 1), Error);
  CHECK_THROWS_AS(Field(2, 1), Error);
  CHECK_THROWS_AS(Field(3, 0), Error);
  CHECK_THROWS_AS(Field(3, 2, {0, 0, 1}), Error);   // x^2, reducible
  CHECK_THROWS_AS(Field(3, 2, {1, 0}), Error);      // wrong degree
  try {
    Field(3, 2, {2, 0, 1});  // x^2 + 2 = (x+1)(x+2)
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::ReducibleModulus);
  }
}

TEST_CASE("division by zero and dlog of zero throw") {
  Field F(5, 1);
  CHECK_THROWS_AS(F.inv(F.zero()), Error);
  CHECK_THROWS_AS(F.dlog(F.zero()), Error);
}

TEST_CASE("explicit modulus is honored") {
  Field F(3, 2, {2, 2, 1});  // x^2 + 2x + 2, irreducible over GF(3)
  CHECK(F.q() == 9);
  CHECK(F.order(F.omega()) == 8);
  CHECK(!(F == Field(3, 2)));
}
