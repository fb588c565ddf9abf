#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "natrep.hpp"

using namespace spn;

namespace {

Matrix eval_word(const Word& w, const Field& F, int n) {
  auto gens = standard_generators(F, n);
  return w_eval(
      w, gens, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& a) { return a.inverse(); }, Matrix::identity(F, 2 * n));
}

}  // namespace

TEST_CASE("sl2 rewrite round-trips random elements") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    Field F(p, k);
    CAPTURE(p);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Matrix m = random_symplectic(F, 1, seed);
      CHECK(eval_word(sl2_rewrite(F, m), F, 1) == m);
    }
  }
}

TEST_CASE("sl2 rewrite is exhaustive over Sp(2,3)") {
  Field F(3, 1);
  auto G = standard_generators(F, 1);
  std::vector<Matrix> seen{Matrix::identity(F, 2)};
  auto contains = [&](const Matrix& m) {
    for (const auto& x : seen)
      if (x == m) return true;
    return false;
  };
  size_t head = 0;
  while (head < seen.size()) {
    Matrix cur = seen[head++];
    for (int i = 0; i < 3; ++i) {
      Matrix nx = cur * G[i];
      if (!contains(nx)) seen.push_back(nx);
    }
  }
  REQUIRE(seen.size() == 24);
  for (const Matrix& m : seen) CHECK(eval_word(sl2_rewrite(F, m), F, 1) == m);
}

TEST_CASE("rewrite_natural round-trips the grid") {
  struct Cell {
    int p, k, n;
  };
  for (auto [p, k, n] : {Cell{3, 1, 2}, {5, 1, 2}, {7, 1, 2}, {3, 2, 2},
                         {3, 1, 3}, {5, 1, 3}, {3, 1, 4}, {3, 3, 2}}) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(k);
    CAPTURE(n);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      Matrix m = random_symplectic(F, n, seed);
      CHECK(eval_word(rewrite_natural(F, n, m), F, n) == m);
    }
  }
}

TEST_CASE("rewrite_natural handles special elements") {
  Field F(3, 1);
  int n = 3;
  auto G = standard_generators(F, n);
  std::vector<Matrix> targets{Matrix::identity(F, 2 * n)};
  for (const auto& g : G) {
    targets.push_back(g);
    targets.push_back(g.inverse());
  }
  targets.push_back(G[0] * G[4] * G[3]);
  Matrix minus(F, 2 * n);
  for (int i = 0; i < 2 * n; ++i) minus.at(i, i) = F.neg(F.one());
  targets.push_back(minus);
  for (const Matrix& m : targets)
    CHECK(eval_word(rewrite_natural(F, n, m), F, n) == m);
}

TEST_CASE("rewrite_natural rejects non-symplectic input") {
  Field F(3, 1);
  Matrix bad = Matrix::identity(F, 4);
  bad.at(0, 1) = F.one();  // breaks the form
  bad.at(0, 0) = F.one();
  try {
    rewrite_natural(F, 2, bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotSymplectic);
  }
}
