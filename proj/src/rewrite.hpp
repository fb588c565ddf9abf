#pragma once

#include <map>

#include "blackbox.hpp"
#include "slp.hpp"

namespace spn {

using Handle = BlackBox::Handle;

/// One-time element kit over a black box: handles and words for the derived
/// elements the pipeline scans against.  Every decision downstream flows
/// only through eq-oracle answers, so the emitted words are independent of
/// the scramble.
class GenKit {
 public:
  explicit GenKit(const BlackBox& bb);

  const BlackBox& bb() const { return *bb_; }
  const Field& F() const { return bb_->field(); }
  int n() const { return bb_->n(); }

  // named generator handles
  Handle s, t, d, u, v, x, si, di, id;
  Handle q, qi;  // q = t^s = T_{e1,1}

  // t^(delta^-k) = T_{f1, omega^2k}, k = 0..q-2
  std::vector<Handle> tconj;

  // ell(mu) = T_{f1,mu} for mu != 0, via two squares; indexed by Fe
  std::map<Fe, Handle> ell_h;
  std::map<Fe, Word> ell_p;

  // z_{omega^k} = (x^s)^(delta^-k), k = 0..q-2   (n >= 2 only)
  std::vector<Handle> z_h;
  std::vector<Word> z_p;

  // x_i(1) for i = 2..2n-1   (n >= 2 only)
  std::map<int, Handle> xi1_h;
  std::map<int, Word> xi1_p;

  // v^k, k = 0..n-1
  std::vector<Handle> vp_h;
  std::vector<Word> vp_p;

  // column-permutation words w_j moving column j -> 2n, j = 1..2n
  std::map<int, Handle> w_h;
  std::map<int, Word> w_p;

  // T_{e_i,1} = q^(v^{i-1}), T_{f_i,1} = t^(v^{i-1}), i = 1..n
  std::map<int, Handle> Te, Tf;

  // words for the standard generators of the embedded Sp(2n-2,q)
  std::vector<Word> sub_p;

  // -identity
  Handle minus_h;
  Word minus_p;

  /// h^(v^k) together with the conjugated word.
  std::pair<Handle, Word> conj_vw(const Handle& h, const Word& p, int k) const;

 private:
  const BlackBox* bb_;
};

/// Membership tests driven purely by oracle calls.
/// in_S: row-1 column-2n entry of the underlying matrix is zero.
bool in_S(const GenKit& kit, const Handle& h);
/// Row-1 column-j entry is zero.
bool entry_is_zero(const GenKit& kit, const Handle& g, int j);
/// g stabilizes <e_1> acting on row 1 (the transvection-centralizer test).
bool in_T(const GenKit& kit, const Handle& h);
/// The mirrored test for the f_1 side.
bool in_Tp(const GenKit& kit, const Handle& h);

struct RewriteStats {
  OracleStats oracle;   // totals including kit construction and verify
  long kit_calls = 0;
  long step1_calls = 0;  // first in_S scan
  long step2_calls = 0;  // corner prep + b-element + coordinate recovery
  long step3_calls = 0;
  long step4_calls = 0;
  long verify_calls = 0;
  long slp_length = 0;
};

struct RewriteResult {
  Word word;
  Slp slp;  // compiled over the 6 generator slots
  RewriteStats stats;
};

/// Constructive membership over the oracle: returns a program over the six
/// standard-generator slots evaluating exactly to g.  Throws
/// Errc::NotInGroup if g is not an element of the black-box group and
/// Errc::StepFailed if an internal invariant breaks.
RewriteResult rewrite_blackbox(const BlackBox& bb, const GenKit& kit,
                               const Handle& g, bool verify = true);

/// Convenience wrapper constructing a fresh kit.
RewriteResult rewrite_blackbox(const BlackBox& bb, const Handle& g,
                               bool verify = true);

}  // namespace spn
