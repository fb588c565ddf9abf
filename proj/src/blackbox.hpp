#pragma once

#include <cstdint>
#include <vector>

#include "mat.hpp"

namespace spn {

struct OracleStats {
  long nmul = 0;
  long ninv = 0;
  long neq = 0;
  long total() const { return nmul + ninv + neq; }
};

/// Matrix-backed black-box copy of Sp(2n,q).  All handles are conjugated by
/// a seeded random invertible scrambling matrix c, so nothing about a handle
/// beyond the mul/inv/eq oracles is meaningful to a caller.  Every oracle
/// call is counted.
///
/// `shadow` undoes the scramble; it exists for tests and instrumentation
/// only and is never called by the rewriting pipeline.
class BlackBox {
 public:
  using Handle = Matrix;

  /// seed == 0 leaves handles unscrambled (c = identity).
  BlackBox(const Field& F, int n, std::uint64_t scramble_seed);

  const Field& field() const { return *F_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  /// Scrambled handles of the standard generators s, t, delta, u, v, x.
  const std::vector<Handle>& generators() const { return gens_; }

  Handle mul(const Handle& a, const Handle& b) const;
  Handle inv(const Handle& a) const;
  bool eq(const Handle& a, const Handle& b) const;
  Handle identity() const;

  /// Scramble a natural matrix into a handle.
  Handle wrap(const Matrix& m) const;
  /// Unscramble a handle (test hatch).
  Matrix shadow(const Handle& h) const;

  const OracleStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 private:
  const Field* F_;
  int n_;
  Matrix c_, ci_;
  std::vector<Handle> gens_;
  mutable OracleStats stats_;
};

}  // namespace spn
