#pragma once

namespace spn::limits {

/// Frozen complexity ceilings.  Calibrated once over the full acceptance
/// grid (n in {1,2,3} x q in {3,5,7,9}, plus n=2 with q in {11,13,25,27}
/// and n=4 with q=3) and kept with headroom; the acceptance suite and the
/// selftest subcommand fail if a rewrite ever exceeds them.

/// Total oracle calls per rewrite (kit amortized out) <= kTotalC * n^2 * q.
inline constexpr long kTotalC = 90;

/// Step 1 (first in_S scan) <= kStep1C * q.
inline constexpr long kStep1C = 40;

/// Step 2 (corner preparation + coordinate recovery) <= kStep2C * n * q.
inline constexpr long kStep2C = 50;

/// Step 4 (block recovery + central resolution) <= kStep4C * n^2 * q.
inline constexpr long kStep4C = 50;

/// Emitted program length <= kSlpLenC * n^2 * log2(q) group operations.
inline constexpr long kSlpLenC = 60;

inline long total_ceiling(int n, int q) { return kTotalC * long(n) * n * q; }
inline long step1_ceiling(int /*n*/, int q) { return kStep1C * long(q); }
inline long step2_ceiling(int n, int q) { return kStep2C * long(n) * q; }
inline long step4_ceiling(int n, int q) { return kStep4C * long(n) * n * q; }
long slp_length_ceiling(int n, int q);

}  // namespace spn::limits
