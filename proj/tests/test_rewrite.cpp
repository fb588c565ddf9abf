#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "natrep.hpp"
#include "rewrite.hpp"

using namespace spn;

namespace {

Matrix eval_word(const Word& w, const Field& F, int n) {
  auto gens = standard_generators(F, n);
  return w_eval(
      w, gens, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& a) { return a.inverse(); }, Matrix::identity(F, 2 * n));
}

}  // namespace

TEST_CASE("kit handles shadow to the intended natural elements") {
  Field F(5, 1);
  int n = 3;
  BlackBox bb(F, n, 11);
  GenKit kit(bb);
  auto G = standard_generators(F, n);
  // q = t^s is the transvection T_{e1,1}
  CHECK(bb.shadow(kit.q) == conj(G[1], G[0]));
  // t^(delta^-k) = T_{f1, omega^2k} = ell(omega^2k)
  for (int k = 0; k < F.q() - 1; ++k)
    CHECK(bb.shadow(kit.tconj[k]) ==
          ell_element(F, n, F.pow(F.omega(), 2L * k)));
  // ell handles and words agree
  for (int v = 1; v < F.q(); ++v) {
    Fe mu = static_cast<Fe>(v);
    CHECK(bb.shadow(kit.ell_h.at(mu)) == ell_element(F, n, mu));
    CHECK(eval_word(kit.ell_p.at(mu), F, n) == ell_element(F, n, mu));
  }
  // x_i(1) chain and words
  for (int i = 2; i <= 2 * n - 1; ++i) {
    CHECK(bb.shadow(kit.xi1_h.at(i)) == xi_element(F, n, i, F.one()));
    CHECK(eval_word(kit.xi1_p.at(i), F, n) == xi_element(F, n, i, F.one()));
  }
  // transvection family for the centralizer tests
  for (int i = 1; i <= n; ++i) {
    Matrix Te = conj(conj(G[1], G[0]), [&] {
      Matrix vp = Matrix::identity(F, 2 * n);
      for (int j = 0; j < i - 1; ++j) vp = vp * G[4];
      return vp;
    }());
    CHECK(bb.shadow(kit.Te.at(i)) == Te);
  }
  // -identity handle and word
  Matrix minus(F, 2 * n);
  for (int i = 0; i < 2 * n; ++i) minus.at(i, i) = F.neg(F.one());
  CHECK(bb.shadow(kit.minus_h) == minus);
  CHECK(eval_word(kit.minus_p, F, n) == minus);
}

TEST_CASE("in_S matches the shadow (1,2n) entry") {
  Field F(3, 1);
  int n = 2;
  BlackBox bb(F, n, 5);
  GenKit kit(bb);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Matrix m = random_symplectic(F, n, seed);
    auto h = bb.wrap(m);
    bool pred = in_S(kit, h);
    bool truth = m.at(0, 2 * n - 1) == F.zero();
    CHECK(pred == truth);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("entry_is_zero matches the shadow row-1 entries") {
  Field F(5, 1);
  int n = 3;
  BlackBox bb(F, n, 8);
  GenKit kit(bb);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Matrix m = random_symplectic(F, n, seed);
    auto h = bb.wrap(m);
    for (int j = 1; j <= 2 * n; ++j)
      CHECK(entry_is_zero(kit, h, j) == (m.at(0, j - 1) == F.zero()));
  }
}

TEST_CASE("in_T and in_Tp match the shadow stabilizer conditions") {
  Field F(3, 1);
  int n = 2;
  BlackBox bb(F, n, 9);
  GenKit kit(bb);
  auto row_in_span = [&](const Matrix& m, int col) {
    for (int j = 0; j < 2 * n; ++j)
      if (j != col && m.at(col, j) != F.zero()) return false;
    return m.at(col, col) != F.zero();
  };
  int t_hits = 0, tp_hits = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Matrix m = random_symplectic(F, n, seed);
    auto h = bb.wrap(m);
    bool tt = row_in_span(m, 0);
    bool tp = row_in_span(m, 2 * n - 1);
    CHECK(in_T(kit, h) == tt);
    CHECK(in_Tp(kit, h) == tp);
    t_hits += tt;
    tp_hits += tp;
  }
  CHECK(t_hits > 0);
  CHECK(tp_hits > 0);
}

TEST_CASE("b-element reproduces the quoted coordinate formulas") {
  // For g in S with nonzero (1,1) and (1,2n-1) entries, the element
  // b = ((x^(q^g)) x^-1)^s is the transvection-group element with
  //   gamma_i  = -g1i * g1(2n-1)                       for 2 <= i <= 2n-1
  //   gamma_2n = -g1(2n-1) * (2 g11 - g11^2 g1(2n) - g1(2n-1))
  struct Cell {
    int p, k, n;
  };
  for (auto [p, k, n] : {Cell{3, 1, 2}, {5, 1, 2}, {3, 1, 3}, {5, 1, 3}}) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(n);
    BlackBox bb(F, n, 4);
    GenKit kit(bb);
    int qualifying = 0;
    for (std::uint64_t seed = 1; qualifying < 100 && seed <= 4000; ++seed) {
      Matrix m = random_symplectic(F, n, seed);
      if (m.at(0, 2 * n - 1) != F.zero()) continue;   // need g in S
      if (m.at(0, 0) == F.zero()) continue;
      if (m.at(0, 2 * n - 2) == F.zero()) continue;   // (1,2n-1) in 1-based
      ++qualifying;
      auto g = bb.wrap(m);
      auto qg = bb.mul(bb.mul(bb.inv(g), kit.q), g);
      auto xb = bb.mul(bb.mul(bb.inv(qg), bb.generators()[5]), qg);
      auto b = bb.mul(xb, bb.inv(bb.generators()[5]));
      b = bb.mul(bb.mul(bb.inv(bb.generators()[0]), b), bb.generators()[0]);
      Matrix bm = bb.shadow(b);
      Fe g11 = m.at(0, 0);
      Fe gm = m.at(0, 2 * n - 2);   // g tilde (1, 2n-1)
      Fe g2n = m.at(0, 2 * n - 1);
      for (int i = 2; i <= 2 * n - 1; ++i) {
        Fe expect = F.neg(F.mul(m.at(0, i - 1), gm));
        CHECK(bm.at(0, i - 1) == expect);
      }
      Fe inner = F.sub(F.add(g11, g11), F.add(F.mul(F.mul(g11, g11), g2n), gm));
      CHECK(bm.at(0, 2 * n - 1) == F.neg(F.mul(gm, inner)));
    }
    CHECK(qualifying == 100);
  }
}

TEST_CASE("black-box rewrite round-trips and is exact, center included") {
  struct Cell {
    int p, k, n;
  };
  for (auto [p, k, n] : {Cell{3, 1, 1}, {5, 1, 1}, {3, 1, 2}, {5, 1, 2},
                         {3, 2, 2}, {3, 1, 3}}) {
    Field F(p, k);
    CAPTURE(p);
    CAPTURE(k);
    CAPTURE(n);
    BlackBox bb(F, n, 1);
    GenKit kit(bb);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Matrix m = random_symplectic(F, n, seed);
      auto r = rewrite_blackbox(bb, kit, bb.wrap(m));
      CHECK(eval_word(r.word, F, n) == m);
    }
  }
}

TEST_CASE("black-box rewrite handles special targets") {
  Field F(3, 1);
  int n = 3;
  BlackBox bb(F, n, 2);
  GenKit kit(bb);
  auto G = standard_generators(F, n);
  std::vector<Matrix> targets{Matrix::identity(F, 2 * n)};
  for (const auto& g : G) {
    targets.push_back(g);
    targets.push_back(g.inverse());
  }
  targets.push_back(G[0] * G[4]);
  targets.push_back(G[2] * G[2]);
  targets.push_back(conj(G[0], G[4]));
  Matrix minus(F, 2 * n);
  for (int i = 0; i < 2 * n; ++i) minus.at(i, i) = F.neg(F.one());
  targets.push_back(minus);
  for (const Matrix& m : targets) {
    auto r = rewrite_blackbox(bb, kit, bb.wrap(m));
    CHECK(eval_word(r.word, F, n) == m);
  }
}

TEST_CASE("exhaustive Sp(2,3) round trip over the oracle") {
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
  BlackBox bb(F, 1, 5);
  GenKit kit(bb);
  for (const Matrix& m : seen) {
    auto h = bb.wrap(m);
    CHECK(in_S(kit, h) == (m.at(0, 1) == F.zero()));
    CHECK(in_T(kit, h) == (m.at(0, 1) == F.zero()));
    auto r = rewrite_blackbox(bb, kit, h);
    CHECK(eval_word(r.word, F, 1) == m);
  }
}

TEST_CASE("emitted programs are scramble invariant") {
  Field F(5, 1);
  int n = 2;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix m = random_symplectic(F, n, seed);
    std::string texts[2];
    for (int i = 0; i < 2; ++i) {
      BlackBox bb(F, n, i + 1);
      GenKit kit(bb);
      auto r = rewrite_blackbox(bb, kit, bb.wrap(m));
      texts[i] = serialize_slp(r.slp);
    }
    CHECK(texts[0] == texts[1]);
  }
}

TEST_CASE("stats account for every oracle call") {
  Field F(5, 1);
  BlackBox bb(F, 2, 3);
  Matrix m = random_symplectic(F, 2, 17);
  auto r = rewrite_blackbox(bb, bb.wrap(m));
  // the inter-step products g*w are attributed to steps 2 and 3
  CHECK(r.stats.oracle.total() ==
        r.stats.kit_calls + r.stats.step1_calls + r.stats.step2_calls +
            r.stats.step3_calls + r.stats.step4_calls + r.stats.verify_calls);
  CHECK(r.stats.slp_length == r.slp.length());
  CHECK(r.stats.slp_length > 0);
}
