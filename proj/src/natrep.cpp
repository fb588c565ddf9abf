#include "natrep.hpp"

namespace spn {

namespace {

constexpr int kS = 0, kT = 1, kD = 2, kU = 3, kV = 4, kX = 5;

/// Word for ell(mu) = T_{f1,mu} via the at-most-two-squares decomposition
/// mu = omega^2a (+ omega^2b) of delta-conjugates of t.
Word ell_word(const Field& F, Fe mu) {
  auto ts = F.two_squares(mu);
  Word first = w_conj(w_gen(kT), w_pow(w_gen(kD), -ts.a));
  if (ts.terms == 1) return first;
  return w_mul(first, w_conj(w_gen(kT), w_pow(w_gen(kD), -ts.b)));
}

/// Word for x_i(1): conjugate x_2(1) = (x^s)^-1 down the chain of
/// adjacent swaps, then scale by delta^-k for x_i(omega^k).
Word xi_word(const Field& F, int n, int i, Fe alpha) {
  int k = F.dlog(alpha);
  Word p = w_inv(w_conj(w_gen(kX), w_gen(kS)));
  for (int i2 = 2; i2 < i; ++i2) {
    Word c;
    if (i2 < n)
      c = w_conj(w_gen(kU), w_pow(w_gen(kV), i2 - 1));
    else if (i2 == n)
      c = w_conj(w_gen(kS), w_pow(w_gen(kV), n - 1));
    else
      c = w_conj(w_gen(kU), w_pow(w_gen(kV), 2 * n - i2 - 1));
    p = w_conj(p, c);
  }
  return w_conj(p, w_pow(w_gen(kD), -k));
}

Matrix v_power(const std::vector<Matrix>& gens, const Field& F, int n, int k) {
  Matrix r = Matrix::identity(F, 2 * n);
  for (int i = 0; i < k % n; ++i) r = r * gens[kV];
  return r;
}

}  // namespace

Word sl2_rewrite(const Field& F, const Matrix& M) {
  if (!is_symplectic(M, F, 1)) throw Error(Errc::NotSymplectic, "not in Sp(2,q)");
  auto gens = standard_generators(F, 1);
  Matrix g = M;
  Word wp;
  auto apply = [&](const Matrix& mm, const Word& pp) {
    g = g * mm;
    wp = wp ? w_mul(wp, pp) : pp;
  };
  if (g.at(0, 0) == F.zero()) apply(gens[kS], w_gen(kS));
  // clear (1,2) with ell(mu)
  if (Fe bv = g.at(0, 1); bv != F.zero()) {
    Fe mu = F.neg(F.mul(bv, F.inv(g.at(0, 0))));
    apply(ell_element(F, 1, mu), ell_word(F, mu));
  }
  // clear (2,1) with lower(nu) = ell(-nu)^s
  if (Fe cv = g.at(1, 0); cv != F.zero()) {
    Fe nu = F.neg(F.mul(cv, g.at(0, 0)));
    Fe mneg = F.neg(nu);
    apply(conj(ell_element(F, 1, mneg), gens[kS]),
          w_conj(ell_word(F, mneg), w_gen(kS)));
  }
  int k = F.dlog(g.at(0, 0));
  Word final = w_pow(w_gen(kD), k);
  return wp ? w_mul(final, w_inv(wp)) : final;
}

Word rewrite_natural(const Field& F, int n, const Matrix& M) {
  if (!is_symplectic(M, F, n)) throw Error(Errc::NotSymplectic, "not in Sp(2n,q)");
  if (n == 1) return sl2_rewrite(F, M);
  auto gens = standard_generators(F, n);
  Matrix g = M;
  Word wp;
  auto apply = [&](const Matrix& mm, const Word& pp) {
    g = g * mm;
    wp = wp ? w_mul(wp, pp) : pp;
  };
  // make (1,1) nonzero by moving some nonzero row-1 entry into column 1
  if (g.at(0, 0) == F.zero()) {
    int j = 1;
    while (g.at(0, j - 1) == F.zero()) ++j;
    if (j <= n) {
      int k = ((1 - j) % n + n) % n;
      apply(v_power(gens, F, n, k), w_pow(w_gen(kV), k));
    } else {
      int k = ((1 - (2 * n + 1 - j)) % n + n) % n;
      apply(v_power(gens, F, n, k) * gens[kS],
            w_mul(w_pow(w_gen(kV), k), w_gen(kS)));
    }
  }
  // clear row-1 columns 2..2n-1 with transvection-group elements
  for (int i = 2; i <= 2 * n - 1; ++i) {
    Fe val = g.at(0, i - 1);
    if (val == F.zero()) continue;
    Fe mu = F.neg(F.mul(val, F.inv(g.at(0, 0))));
    apply(xi_element(F, n, i, mu), xi_word(F, n, i, mu));
  }
  // clear (1,2n) with ell
  if (Fe val = g.at(0, 2 * n - 1); val != F.zero()) {
    Fe mu = F.neg(F.mul(val, F.inv(g.at(0, 0))));
    apply(ell_element(F, n, mu), ell_word(F, mu));
  }
  // one-sided second reduction: repeat on g^s, conjugate the word back
  Matrix h = conj(g, gens[kS]);
  Word hp;
  for (int i = 2; i <= 2 * n - 1; ++i) {
    Fe val = h.at(0, i - 1);
    if (val == F.zero()) continue;
    Fe mu = F.neg(F.mul(val, F.inv(h.at(0, 0))));
    h = h * xi_element(F, n, i, mu);
    Word pp = xi_word(F, n, i, mu);
    hp = hp ? w_mul(hp, pp) : pp;
  }
  if (Fe val = h.at(0, 2 * n - 1); val != F.zero()) {
    Fe mu = F.neg(F.mul(val, F.inv(h.at(0, 0))));
    h = h * ell_element(F, n, mu);
    Word pp = ell_word(F, mu);
    hp = hp ? w_mul(hp, pp) : pp;
  }
  if (hp) {
    Word zp = w_conj(hp, w_inv(w_gen(kS)));
    Matrix zm = w_eval(
        zp, gens, [](const Matrix& a, const Matrix& b) { return a * b; },
        [](const Matrix& a) { return a.inverse(); }, Matrix::identity(F, 2 * n));
    apply(zm, zp);
  }
  // g is now block diagonal: diag(a, B, a^-1) with B in Sp(2n-2,q);
  // recurse on B through the embedded subgroup generated by
  // s^u, t^u, delta^u, u^v, v*u, x^v.
  Fe a = g.at(0, 0);
  int d2 = 2 * n - 2;
  Matrix B(F, d2);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) B.at(i, j) = g.at(i + 1, j + 1);
  Word sub = rewrite_natural(F, n - 1, B);
  std::vector<Word> subs;
  if (n - 1 >= 2) {
    subs = {w_conj(w_gen(kS), w_gen(kU)), w_conj(w_gen(kT), w_gen(kU)),
            w_conj(w_gen(kD), w_gen(kU)), w_conj(w_gen(kU), w_gen(kV)),
            w_mul(w_gen(kV), w_gen(kU)), w_conj(w_gen(kX), w_gen(kV))};
  } else {
    subs = {w_conj(w_gen(kS), w_gen(kU)), w_conj(w_gen(kT), w_gen(kU)),
            w_conj(w_gen(kD), w_gen(kU)), w_id(), w_id(), w_id()};
  }
  Word zp = w_substitute(sub, subs);
  int k = (F.q() - 1 - F.dlog(a)) % (F.q() - 1);
  Word final = w_mul(w_pow(w_gen(kD), -k), zp);
  return wp ? w_mul(final, w_inv(wp)) : final;
}

}  // namespace spn
