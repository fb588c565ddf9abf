#include "rewrite.hpp"

#include <algorithm>

#include "natrep.hpp"

namespace spn {

namespace {

constexpr int kS = 0, kT = 1, kD = 2, kU = 3, kV = 4, kX = 5;

Handle conj_h(const BlackBox& bb, const Handle& a, const Handle& b) {
  return bb.mul(bb.mul(bb.inv(b), a), b);
}

bool commutes(const BlackBox& bb, const Handle& a, const Handle& b) {
  return bb.eq(bb.mul(a, b), bb.mul(b, a));
}

/// delta^-k handle, built by repeated multiplication (k < q).
Handle dpow_h(const GenKit& kit, int k) {
  const BlackBox& bb = kit.bb();
  Handle r = kit.id;
  for (int i = 0; i < k; ++i) r = bb.mul(r, kit.di);
  return r;
}

int pair_of(int n, int j) { return j <= n ? j : 2 * n + 1 - j; }
bool is_f_side(int n, int j) { return j > n; }

}  // namespace

GenKit::GenKit(const BlackBox& bbx) : bb_(&bbx) {
  const BlackBox& bb = *bb_;
  const Field& F = bb.field();
  int n = bb.n();
  const auto& G = bb.generators();
  s = G[kS]; t = G[kT]; d = G[kD]; u = G[kU]; v = G[kV]; x = G[kX];
  si = bb.inv(s);
  di = bb.inv(d);
  id = bb.identity();
  q = bb.mul(bb.mul(si, t), s);
  qi = bb.inv(q);

  // t^(delta^-k) for k = 0..q-2
  {
    Handle cur = t, dk = id, dki = id;
    for (int k = 0; k < F.q() - 1; ++k) {
      tconj.push_back(cur);
      dk = bb.mul(dk, di);
      dki = bb.mul(d, dki);
      cur = bb.mul(bb.mul(dki, t), dk);
    }
  }
  // ell family via two squares
  for (int val = 1; val < F.q(); ++val) {
    Fe mu = static_cast<Fe>(val);
    auto ts = F.two_squares(mu);
    if (ts.terms == 1) {
      ell_h.emplace(mu, tconj[ts.a]);
      ell_p.emplace(mu, w_conj(w_gen(kT), w_pow(w_gen(kD), -ts.a)));
    } else {
      ell_h.emplace(mu, bb.mul(tconj[ts.a], tconj[ts.b]));
      ell_p.emplace(mu, w_mul(w_conj(w_gen(kT), w_pow(w_gen(kD), -ts.a)),
                              w_conj(w_gen(kT), w_pow(w_gen(kD), -ts.b))));
    }
  }
  if (n >= 2) {
    // z family: z_{omega^k} = (x^s)^(delta^-k)
    Handle z1 = bb.mul(bb.mul(si, x), s);
    Word z1p = w_conj(w_gen(kX), w_gen(kS));
    {
      Handle cur = z1, dk = id, dki = id;
      for (int k = 0; k < F.q() - 1; ++k) {
        z_h.push_back(cur);
        z_p.push_back(w_conj(z1p, w_pow(w_gen(kD), -k)));
        dk = bb.mul(dk, di);
        dki = bb.mul(d, dki);
        cur = bb.mul(bb.mul(dki, z1), dk);
      }
    }
    // v powers
    vp_h.push_back(id);
    vp_p.push_back(w_id());
    {
      Handle cur = id;
      for (int k = 1; k < n; ++k) {
        cur = bb.mul(cur, v);
        vp_h.push_back(cur);
        vp_p.push_back(w_pow(w_gen(kV), k));
      }
    }
    // x_i(1) chain, x_2(1) = (x^s)^-1
    xi1_h.emplace(2, bb.inv(z1));
    xi1_p.emplace(2, w_inv(z1p));
    for (int i = 2; i <= 2 * n - 2; ++i) {
      std::pair<Handle, Word> c;
      if (i < n)
        c = conj_vw(u, w_gen(kU), i - 1);
      else if (i == n)
        c = conj_vw(s, w_gen(kS), n - 1);
      else
        c = conj_vw(u, w_gen(kU), 2 * n - i - 1);
      xi1_h.emplace(i + 1, bb.mul(bb.mul(bb.inv(c.first), xi1_h.at(i)), c.first));
      xi1_p.emplace(i + 1, w_conj(xi1_p.at(i), c.second));
    }
    // column-permutation words w_j (column j -> 2n)
    for (int j = 1; j <= 2 * n; ++j) {
      if (j <= n) {
        int k = ((1 - j) % n + n) % n;
        w_h.emplace(j, bb.mul(vp_h[k], s));
        w_p.emplace(j, w_mul(vp_p[k], w_gen(kS)));
      } else {
        int k = (j - n) % n;
        w_h.emplace(j, vp_h[k]);
        w_p.emplace(j, vp_p[k]);
      }
    }
    // transvections T_{e_i,1} = q^(v^{i-1}), T_{f_i,1} = t^(v^{i-1})
    for (int i = 1; i <= n; ++i) {
      Te.emplace(i, i == 1 ? q : bb.mul(bb.mul(bb.inv(vp_h[i - 1]), q), vp_h[i - 1]));
      Tf.emplace(i, i == 1 ? t : bb.mul(bb.mul(bb.inv(vp_h[i - 1]), t), vp_h[i - 1]));
    }
    // embedded Sp(2n-2,q) generator words
    if (n - 1 >= 2) {
      sub_p = {w_conj(w_gen(kS), w_gen(kU)), w_conj(w_gen(kT), w_gen(kU)),
               w_conj(w_gen(kD), w_gen(kU)), w_conj(w_gen(kU), w_gen(kV)),
               w_mul(w_gen(kV), w_gen(kU)), w_conj(w_gen(kX), w_gen(kV))};
    } else {
      sub_p = {w_conj(w_gen(kS), w_gen(kU)), w_conj(w_gen(kT), w_gen(kU)),
               w_conj(w_gen(kD), w_gen(kU)), w_id(), w_id(), w_id()};
    }
  }
  // -identity = prod_i (s^(v^i))^2
  minus_h = id;
  for (int i = 0; i < n; ++i) {
    Word w = n >= 2 ? w_conj(w_gen(kS), w_pow(w_gen(kV), i)) : w_gen(kS);
    Word w2 = w_mul(w, w);
    minus_p = minus_p ? w_mul(minus_p, w2) : w2;
    Handle sv = n >= 2 ? bb.mul(bb.mul(bb.inv(vp_h[i]), s), vp_h[i]) : s;
    minus_h = bb.mul(minus_h, bb.mul(sv, sv));
  }
}

std::pair<Handle, Word> GenKit::conj_vw(const Handle& h, const Word& p, int k) const {
  if (k == 0) return {h, p};
  const BlackBox& bb = *bb_;
  return {bb.mul(bb.mul(bb.inv(vp_h[k]), h), vp_h[k]), w_conj(p, vp_p[k])};
}

bool in_S(const GenKit& kit, const Handle& h) {
  const BlackBox& bb = kit.bb();
  Handle qh = conj_h(bb, kit.q, h);
  return bb.eq(conj_h(bb, kit.q, qh), kit.q);
}

bool entry_is_zero(const GenKit& kit, const Handle& g, int j) {
  const BlackBox& bb = kit.bb();
  if (kit.n() == 1) {
    if (j == 2) return in_S(kit, g);
    return in_S(kit, bb.mul(g, kit.s));
  }
  return in_S(kit, bb.mul(g, kit.w_h.at(j)));
}

bool in_T(const GenKit& kit, const Handle& h) {
  const BlackBox& bb = kit.bb();
  Handle qh = conj_h(bb, kit.q, h);
  if (kit.n() == 1) return commutes(bb, qh, kit.q);
  for (int i = 1; i <= kit.n(); ++i)
    if (!commutes(bb, qh, kit.Te.at(i))) return false;
  for (int i = 2; i <= kit.n(); ++i)
    if (!commutes(bb, qh, kit.Tf.at(i))) return false;
  return true;
}

bool in_Tp(const GenKit& kit, const Handle& h) {
  const BlackBox& bb = kit.bb();
  Handle th = conj_h(bb, kit.t, h);
  if (kit.n() == 1) return commutes(bb, th, kit.t);
  if (!commutes(bb, th, kit.t)) return false;
  for (int i = 2; i <= kit.n(); ++i) {
    if (!commutes(bb, th, kit.Te.at(i))) return false;
    if (!commutes(bb, th, kit.Tf.at(i))) return false;
  }
  return true;
}

namespace {

/// Monomial word moving pair bp -> pair 2 while fixing pair 1 (bp >= 2):
/// the chain of adjacent-pair swaps t_j = u^(v^{j-1}).
std::pair<Handle, Word> transposition_chain(const GenKit& kit, int bp) {
  const BlackBox& bb = kit.bb();
  Handle hh = kit.id;
  Word pp = w_id();
  for (int j = bp - 1; j >= 2; --j) {
    auto [th, tp] = kit.conj_vw(kit.u, w_gen(kU), j - 1);
    hh = bb.mul(hh, th);
    pp = w_mul(pp, tp);
  }
  return {hh, pp};
}

/// s_a = s^(v^{a-1}), the e/f swap on pair a.
std::pair<Handle, Word> side_swap(const GenKit& kit, int a) {
  return kit.conj_vw(kit.s, w_gen(kS), a - 1);
}

struct Reducer {
  const BlackBox& bb;
  const GenKit& kit;
  Handle g;
  Handle wh;
  Word wp;

  Reducer(const GenKit& k, Handle g0)
      : bb(k.bb()), kit(k), g(std::move(g0)), wh(k.id), wp() {}

  void apply(const Handle& hh, const Word& pp) {
    g = bb.mul(g, hh);
    wh = bb.mul(wh, hh);
    wp = wp ? w_mul(wp, pp) : pp;
  }
};

/// Multiply g on the right by derived elements until g*w lies in T (the
/// stabilizer of <e_1> on row 1).  With preserve_f1 set, only words fixing
/// f_1 are used, so membership in T' is preserved (used inside step 3).
/// Returns (handle, word) of the accumulated w.
std::pair<Handle, Word> reduce_to_T(const GenKit& kit, Handle g0, bool preserve_f1,
                                    long* step1_calls = nullptr) {
  const BlackBox& bb = kit.bb();
  const Field& F = kit.F();
  int n = kit.n();
  Reducer R(kit, std::move(g0));
  long step1_base = bb.stats().total();
  auto finish = [&]() -> std::pair<Handle, Word> {
    return {R.wh, R.wp ? R.wp : w_id()};
  };

  // step 1: make the (1,2n) entry zero
  if (!in_S(kit, R.g)) {
    bool done = false;
    if (preserve_f1) {
      for (int val = 1; val < F.q(); ++val) {
        Fe mu = static_cast<Fe>(val);
        if (in_S(kit, bb.mul(R.g, kit.ell_h.at(mu)))) {
          R.apply(kit.ell_h.at(mu), kit.ell_p.at(mu));
          done = true;
          break;
        }
      }
      if (!done) throw Error(Errc::StepFailed, "step1 ell scan");
    } else {
      for (int k = 0; k < F.q() - 1 && !done; ++k) {
        if (in_S(kit, bb.mul(R.g, kit.z_h[k]))) {
          R.apply(kit.z_h[k], kit.z_p[k]);
          done = true;
        }
      }
      if (!done && in_S(kit, bb.mul(R.g, kit.u))) {
        R.apply(kit.u, w_gen(kU));
        done = true;
      }
      if (!done) throw Error(Errc::StepFailed, "step1 z scan");
    }
  }
  if (step1_calls) *step1_calls = bb.stats().total() - step1_base;

  // corner preparation: make (1,1) and (1,2n-1) nonzero
  std::vector<int> nz;
  for (int j = 1; j <= 2 * n; ++j)
    if (!entry_is_zero(kit, R.g, j)) nz.push_back(j);
  if (nz.empty()) throw Error(Errc::NotInGroup, "zero row");
  auto contains = [&](int j) {
    return std::find(nz.begin(), nz.end(), j) != nz.end();
  };
  if (preserve_f1) {
    // (1,1) != 0 is guaranteed by membership in T'
    std::vector<int> mid;
    for (int j : nz)
      if (2 <= j && j <= 2 * n - 1) mid.push_back(j);
    if (mid.empty()) return finish();  // row 1 is already a multiple of e_1
    if (!contains(2 * n - 1)) {
      int j = mid[0];
      int bp = pair_of(n, j);
      if (!is_f_side(n, j)) {
        if (bp == 1) throw Error(Errc::StepFailed, "corner pair");
        auto [ch, cp] = transposition_chain(kit, bp);
        auto [sh, sp] = side_swap(kit, 2);
        R.apply(bb.mul(ch, sh), w_mul(cp, sp));
      } else {
        auto [ch, cp] = transposition_chain(kit, bp);
        R.apply(ch, cp);
      }
    }
  } else {
    if (nz.size() == 1) {
      // degenerate row: single nonzero entry, move it to column 1
      int j = nz[0];
      if (j == 1) return finish();
      if (j <= n) {
        int k = ((1 - j) % n + n) % n;
        R.apply(kit.vp_h[k], kit.vp_p[k]);
      } else {
        int k = ((1 - (2 * n + 1 - j)) % n + n) % n;
        R.apply(bb.mul(kit.vp_h[k], kit.s), w_mul(kit.vp_p[k], w_gen(kS)));
      }
      return finish();
    }
    if (contains(1)) {
      // pair 1 already carries a nonzero e-entry; move another pair to 2n-1
      int j = 0;
      for (int c : nz)
        if (pair_of(n, c) != 1) {
          j = c;
          break;
        }
      int bp = pair_of(n, j);
      Handle hh = kit.id;
      Word pp = w_id();
      if (!is_f_side(n, j)) {
        auto [sh, sp] = side_swap(kit, bp);
        hh = sh;
        pp = sp;
      }
      auto [ch, cp] = transposition_chain(kit, bp);
      R.apply(bb.mul(hh, ch), w_mul(pp, cp));
    } else {
      // find a pair with exactly one nonzero side
      int mixed = 0;
      for (int a = 2; a <= n; ++a) {
        bool e_nz = contains(a), f_nz = contains(2 * n + 1 - a);
        if (e_nz != f_nz) {
          mixed = a;
          break;
        }
      }
      if (mixed == 0) {
        // homogeneous pattern: every pair is both-zero or both-nonzero.
        // Kill the f-side of the smallest both-nonzero pair with a
        // T_{f_a,mu} scan, producing a mixed pair.
        int a = 0;
        for (int c = 2; c <= n; ++c)
          if (contains(c)) {
            a = c;
            break;
          }
        if (a == 0) throw Error(Errc::StepFailed, "pair pattern");
        int fcol = 2 * n + 1 - a;
        bool fixed = false;
        for (int val = 1; val < F.q(); ++val) {
          Fe mu = static_cast<Fe>(val);
          auto [eh, ep] = kit.conj_vw(kit.ell_h.at(mu), kit.ell_p.at(mu), a - 1);
          if (entry_is_zero(kit, bb.mul(R.g, eh), fcol)) {
            R.apply(eh, ep);
            fixed = true;
            break;
          }
        }
        if (!fixed) throw Error(Errc::StepFailed, "pair fix scan");
        mixed = a;
        nz.erase(std::remove(nz.begin(), nz.end(), fcol), nz.end());
      }
      int a = mixed;
      bool e_nz = contains(a);
      // bring pair a to pair 1 with its nonzero side on the e-slot
      Handle hh = kit.id;
      Word pp = w_id();
      if (!e_nz) {
        auto [sh, sp] = side_swap(kit, a);
        hh = sh;
        pp = sp;
      }
      int k = ((1 - a) % n + n) % n;
      R.apply(bb.mul(hh, kit.vp_h[k]), w_mul(pp, kit.vp_p[k]));
      // pick the pair for column 2n-1 from the refreshed pattern
      std::vector<int> nz2;
      for (int j = 2; j <= 2 * n - 1; ++j)
        if (!entry_is_zero(kit, R.g, j)) nz2.push_back(j);
      if (nz2.empty()) return finish();  // now degenerate: row ~ e_1
      int j = nz2[0];
      int bp = pair_of(n, j);
      Handle hh2 = kit.id;
      Word pp2 = w_id();
      if (!is_f_side(n, j)) {
        auto [sh, sp] = side_swap(kit, bp);
        hh2 = sh;
        pp2 = sp;
      }
      auto [ch, cp] = transposition_chain(kit, bp);
      R.apply(bb.mul(hh2, ch), w_mul(pp2, cp));
    }
  }
  if (entry_is_zero(kit, R.g, 1) || entry_is_zero(kit, R.g, 2 * n - 1)) {
    // a cleared middle may leave a T element immediately
    if (in_T(kit, R.g)) return finish();
    throw Error(Errc::StepFailed, "corner condition");
  }

  // step 2: b-element whose delta-conjugates sweep the candidate
  // transvection-group corrections
  Handle qg = conj_h(bb, kit.q, R.g);
  Handle b = conj_h(bb, bb.mul(conj_h(bb, kit.x, qg), bb.inv(kit.x)), kit.s);
  // k0 scan: find the delta-twist of b clearing column 2n-1
  int k0 = -1;
  Handle z0 = kit.id;
  {
    Handle cur = b, dk = kit.id, dki = kit.id;
    for (int k = 0; k < kit.F().q() - 1; ++k) {
      if (entry_is_zero(kit, bb.mul(R.g, cur), 2 * n - 1)) {
        k0 = k;
        z0 = cur;
        break;
      }
      dk = bb.mul(dk, kit.di);
      dki = bb.mul(kit.d, dki);
      cur = bb.mul(bb.mul(dki, b), dk);
    }
  }
  if (k0 < 0) throw Error(Errc::StepFailed, "k0 scan");
  // recover the coordinates of z0 as a product of x_i(omega^k) and emit
  // that product (b itself never needs a word)
  Handle zh = kit.id;
  Word zp;
  for (int i = 2; i <= 2 * n - 1; ++i) {
    if (entry_is_zero(kit, z0, i)) continue;
    int ki = -1;
    Handle xii = bb.inv(kit.xi1_h.at(i));
    Handle cur = xii, dk = kit.id, dki = kit.id;
    for (int k = 0; k < F.q() - 1; ++k) {
      if (entry_is_zero(kit, bb.mul(z0, cur), i)) {
        ki = k;
        break;
      }
      dk = bb.mul(dk, kit.di);
      dki = bb.mul(kit.d, dki);
      cur = bb.mul(bb.mul(dki, xii), dk);
    }
    if (ki < 0) throw Error(Errc::StepFailed, "coordinate scan");
    Handle fh = conj_h(bb, kit.xi1_h.at(i), dpow_h(kit, ki));
    Word fp = w_conj(kit.xi1_p.at(i), w_pow(w_gen(kD), -ki));
    zh = bb.mul(zh, fh);
    zp = zp ? w_mul(zp, fp) : fp;
  }
  if (zp) R.apply(zh, zp);
  // residual ell scan absorbs the central factor of the (non-abelian)
  // transvection group
  if (!in_S(kit, R.g)) {
    bool done = false;
    for (int val = 1; val < F.q(); ++val) {
      Fe mu = static_cast<Fe>(val);
      if (in_S(kit, bb.mul(R.g, kit.ell_h.at(mu)))) {
        R.apply(kit.ell_h.at(mu), kit.ell_p.at(mu));
        done = true;
        break;
      }
    }
    if (!done) throw Error(Errc::StepFailed, "residual scan");
  }
  if (!in_T(kit, R.g)) throw Error(Errc::NotInGroup, "not reducible to T");
  return finish();
}

/// step 3: for g in T, produce w with g*w in G_1 (the pointwise stabilizer
/// of <e_1> and <f_1>) by running the T'-preserving reduction on g^s and
/// conjugating the correction back by s^-1.
std::pair<Handle, Word> step3(const GenKit& kit, const Handle& g) {
  const BlackBox& bb = kit.bb();
  Handle h = conj_h(bb, g, kit.s);
  auto [wh, wp] = reduce_to_T(kit, h, /*preserve_f1=*/true);
  Handle zh = bb.mul(bb.mul(kit.s, wh), kit.si);
  Word zp = w_conj(wp, w_inv(w_gen(kS)));
  return {zh, zp};
}

/// Row-1 coordinates of a transvection-group element, by x_i scans.
std::map<int, Fe> recover_qcoords(const GenKit& kit, const Handle& y) {
  const BlackBox& bb = kit.bb();
  const Field& F = kit.F();
  int n = kit.n();
  std::map<int, Fe> out;
  for (int j = 2; j <= 2 * n - 1; ++j) {
    if (entry_is_zero(kit, y, j)) continue;
    int kj = -1;
    Handle xji = bb.inv(kit.xi1_h.at(j));
    Handle cur = xji, dk = kit.id, dki = kit.id;
    for (int k = 0; k < F.q() - 1; ++k) {
      if (entry_is_zero(kit, bb.mul(y, cur), j)) {
        kj = k;
        break;
      }
      dk = bb.mul(dk, kit.di);
      dki = bb.mul(kit.d, dki);
      cur = bb.mul(bb.mul(dki, xji), dk);
    }
    if (kj < 0) throw Error(Errc::StepFailed, "qcoord scan");
    out[j] = F.pow(F.omega(), kj);
  }
  return out;
}

/// step 4: g in G_1.  Recover the middle block via the action on the
/// x_i(1), rewrite it in the natural representation of Sp(2n-2,q),
/// substitute the embedded generators, and resolve the central
/// delta-power and sign by an eq scan.
Word step4(const GenKit& kit, const Handle& g) {
  const BlackBox& bb = kit.bb();
  const Field& F = kit.F();
  int n = kit.n();
  int d2 = 2 * n - 2;
  Matrix M(F, d2);
  for (int i = 2; i <= 2 * n - 1; ++i) {
    Handle y = conj_h(bb, kit.xi1_h.at(i), g);
    auto co = recover_qcoords(kit, y);
    for (int j = 2; j <= 2 * n - 1; ++j) {
      auto it = co.find(j);
      M.at(i - 2, j - 2) = it == co.end() ? F.zero() : it->second;
    }
  }
  // similitude scalar: M J' M^T = lambda J'
  Matrix J2 = form_matrix(F, n - 1);
  Matrix P = M * J2 * M.transpose();
  Fe lambda = F.zero();
  for (int i = 0; i < d2 && lambda == F.zero(); ++i)
    for (int j = 0; j < d2; ++j)
      if (J2.at(i, j) != F.zero()) {
        lambda = F.mul(P.at(i, j), F.inv(J2.at(i, j)));
        break;
      }
  if (lambda == F.zero()) throw Error(Errc::NotInGroup, "degenerate block");
  Fe ilam = F.inv(lambda);
  Fe c0 = 0;
  for (int val = 1; val < F.q(); ++val) {
    Fe c = static_cast<Fe>(val);
    if (F.mul(c, c) == ilam) {
      c0 = c;
      break;
    }
  }
  if (c0 == 0) throw Error(Errc::NotInGroup, "scalar has no square root");
  for (Fe c : {c0, F.neg(c0)}) {
    Matrix Mc(F, d2);
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j) Mc.at(i, j) = F.mul(c, M.at(i, j));
    if (!is_symplectic(Mc, F, n - 1)) continue;
    Word sub = rewrite_natural(F, n - 1, Mc);
    Word zp = w_substitute(sub, kit.sub_p);
    Handle zh = w_eval(
        zp, bb.generators(),
        [&bb](const Handle& a, const Handle& b) { return bb.mul(a, b); },
        [&bb](const Handle& a) { return bb.inv(a); }, bb.identity());
    Handle r = bb.mul(g, bb.inv(zh));
    Handle dk = kit.id;
    for (int k = 0; k < F.q() - 1; ++k) {
      Handle cand = bb.mul(r, dk);
      if (bb.eq(cand, kit.id))
        return w_mul(w_mul(w_id(), w_pow(w_gen(kD), -k)), zp);
      if (bb.eq(cand, kit.minus_h))
        return w_mul(w_mul(kit.minus_p, w_pow(w_gen(kD), -k)), zp);
      dk = bb.mul(dk, kit.d);
    }
  }
  throw Error(Errc::NotInGroup, "central scan exhausted");
}

/// n = 1 base case: triangularize over the oracle, then match a delta power.
Word bb_sl2(const GenKit& kit, Handle g) {
  const BlackBox& bb = kit.bb();
  const Field& F = kit.F();
  Handle wh = kit.id;
  Word wp;
  auto apply = [&](const Handle& hh, const Word& pp) {
    g = bb.mul(g, hh);
    wh = bb.mul(wh, hh);
    wp = wp ? w_mul(wp, pp) : pp;
  };
  if (!in_S(kit, g)) {
    bool done = false;
    for (int val = 1; val < F.q(); ++val) {
      Fe mu = static_cast<Fe>(val);
      if (in_S(kit, bb.mul(g, kit.ell_h.at(mu)))) {
        apply(kit.ell_h.at(mu), kit.ell_p.at(mu));
        done = true;
        break;
      }
    }
    if (!done && in_S(kit, bb.mul(g, kit.s))) {
      apply(kit.s, w_gen(kS));
      done = true;
    }
    if (!done) throw Error(Errc::NotInGroup, "sl2 upper scan");
  }
  // clear the (2,1) entry with lower(nu) = ell(-nu)^s, testing via s h _ s
  auto entry21_zero = [&](const Handle& h) {
    return in_S(kit, bb.mul(bb.mul(kit.s, h), kit.s));
  };
  if (!entry21_zero(g)) {
    bool done = false;
    for (int val = 1; val < F.q(); ++val) {
      Fe nu = static_cast<Fe>(val);
      Handle lh = conj_h(bb, kit.ell_h.at(F.neg(nu)), kit.s);
      if (entry21_zero(bb.mul(g, lh))) {
        apply(lh, w_conj(kit.ell_p.at(F.neg(nu)), w_gen(kS)));
        done = true;
        break;
      }
    }
    if (!done) throw Error(Errc::NotInGroup, "sl2 lower scan");
  }
  // diagonal: match a power of delta
  Handle dk = kit.id;
  for (int k = 0; k < F.q() - 1; ++k) {
    if (bb.eq(g, dk)) {
      Word z = w_pow(w_gen(kD), k);
      return wp ? w_mul(z, w_inv(wp)) : z;
    }
    dk = bb.mul(dk, kit.d);
  }
  throw Error(Errc::NotInGroup, "sl2 diagonal scan");
}

}  // namespace

RewriteResult rewrite_blackbox(const BlackBox& bb, const GenKit& kit,
                               const Handle& g, bool verify) {
  RewriteResult out;
  long base = bb.stats().total();
  Word word;
  if (kit.n() == 1) {
    word = bb_sl2(kit, g);
    out.stats.step1_calls = bb.stats().total() - base;
  } else {
    auto [w1h, w1p] =
        reduce_to_T(kit, g, /*preserve_f1=*/false, &out.stats.step1_calls);
    Handle g1 = bb.mul(g, w1h);
    out.stats.step2_calls = bb.stats().total() - base - out.stats.step1_calls;
    long mark = bb.stats().total();
    auto [w2h, w2p] = step3(kit, g1);
    Handle g2 = bb.mul(g1, w2h);
    out.stats.step3_calls = bb.stats().total() - mark;
    mark = bb.stats().total();
    Word s4 = step4(kit, g2);
    out.stats.step4_calls = bb.stats().total() - mark;
    word = w_mul(s4, w_mul(w_inv(w2p), w_inv(w1p)));
  }
  if (verify) {
    long mark = bb.stats().total();
    Handle val = w_eval(
        word, bb.generators(),
        [&bb](const Handle& a, const Handle& b) { return bb.mul(a, b); },
        [&bb](const Handle& a) { return bb.inv(a); }, bb.identity());
    if (!bb.eq(val, g))
      throw Error(Errc::NotInGroup, "verification failed: program does not evaluate to the target");
    out.stats.verify_calls = bb.stats().total() - mark;
  }
  out.word = word;
  out.slp = compile(word, 6);
  out.stats.oracle = bb.stats();
  out.stats.slp_length = out.slp.length();
  return out;
}

RewriteResult rewrite_blackbox(const BlackBox& bb, const Handle& g, bool verify) {
  long base = bb.stats().total();
  GenKit kit(bb);
  long kitc = bb.stats().total() - base;
  RewriteResult r = rewrite_blackbox(bb, kit, g, verify);
  r.stats.kit_calls = kitc;
  return r;
}

}  // namespace spn
