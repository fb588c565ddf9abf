#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blackbox.hpp"

using namespace spn;

TEST_CASE("oracle operations mirror the shadow group") {
  Field F(5, 1);
  BlackBox bb(F, 2, /*scramble_seed=*/7);
  Matrix a = random_symplectic(F, 2, 1);
  Matrix b = random_symplectic(F, 2, 2);
  auto ha = bb.wrap(a), hb = bb.wrap(b);
  CHECK(bb.shadow(ha) == a);
  CHECK(bb.shadow(bb.mul(ha, hb)) == a * b);
  CHECK(bb.shadow(bb.inv(ha)) == a.inverse());
  CHECK(bb.eq(ha, bb.wrap(a)));
  CHECK(!bb.eq(ha, hb));
  CHECK(bb.shadow(bb.identity()) == Matrix::identity(F, 4));
}

TEST_CASE("generator handles are scrambled but shadow to the naturals") {
  Field F(3, 1);
  BlackBox bb(F, 2, 12345);
  auto nat = standard_generators(F, 2);
  bool any_scrambled = false;
  for (int i = 0; i < 6; ++i) {
    CHECK(bb.shadow(bb.generators()[i]) == nat[i]);
    if (!(bb.generators()[i] == nat[i])) any_scrambled = true;
  }
  CHECK(any_scrambled);
}

TEST_CASE("seed zero disables the scramble") {
  Field F(3, 1);
  BlackBox bb(F, 2, 0);
  auto nat = standard_generators(F, 2);
  for (int i = 0; i < 6; ++i) CHECK(bb.generators()[i] == nat[i]);
}

TEST_CASE("every oracle call is counted") {
  Field F(3, 1);
  BlackBox bb(F, 1, 3);
  bb.reset_stats();
  auto h = bb.generators()[0];
  (void)bb.mul(h, h);
  (void)bb.mul(h, h);
  (void)bb.inv(h);
  (void)bb.eq(h, h);
  CHECK(bb.stats().nmul == 2);
  CHECK(bb.stats().ninv == 1);
  CHECK(bb.stats().neq == 1);
  CHECK(bb.stats().total() == 4);
  bb.reset_stats();
  CHECK(bb.stats().total() == 0);
}

TEST_CASE("different seeds give different scrambles, same group") {
  Field F(5, 1);
  BlackBox b1(F, 2, 1), b2(F, 2, 2);
  Matrix m = random_symplectic(F, 2, 9);
  CHECK(!(b1.wrap(m) == b2.wrap(m)));
  CHECK(b1.shadow(b1.wrap(m)) == b2.shadow(b2.wrap(m)));
}
