#pragma once

#include "mat.hpp"
#include "slp.hpp"

namespace spn {

/// Constructive membership in the natural representation: given M in
/// Sp(2n,q) as an explicit matrix, return a word over the standard
/// generators s, t, delta, u, v, x (slots 0..5) evaluating exactly to M.
/// Throws Errc::NotSymplectic / Errc::NotInGroup for bad input.
Word rewrite_natural(const Field& F, int n, const Matrix& M);

/// n = 1 base case over slots s, t, delta.
Word sl2_rewrite(const Field& F, const Matrix& M);

}  // namespace spn
