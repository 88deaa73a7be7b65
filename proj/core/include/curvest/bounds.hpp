#pragma once

#include <cstdint>

namespace curvest {

enum class BoundFormula { CurveThm, SurfaceThm, GenericPair };

/// The two readings of the pair-coverage numerator. The proof derives
/// binom(m,2) > (log(1-p) - log n) / log(1-alpha^2), i.e. the factor 8
/// multiplies the whole numerator; the printed display formula applies
/// it to log(1-p) only. Proof grouping is the default and the larger
/// (conservative) bound.
enum class LogGrouping { Proof, Printed };

struct BoundResult {
    std::uint64_t m_min; ///< smallest admissible integer sample size
    double raw_value;    ///< formula value before integer rounding
    BoundFormula formula;
};

/// Smallest m such that, with probability at least p, each of n cells of
/// hit-probability >= alpha contains two distinct sample points.
/// n may be fractional (it enters only through log n).
BoundResult generic_pair_bound(double alpha, double n, double p,
                               LogGrouping grouping = LogGrouping::Proof);

/// Minimum sample size for an epsilon-triangle estimate anywhere on a
/// curve of length l, via alpha = eps/l and n = max(1, l/(2 eps)).
/// The returned m_min is the smallest integer strictly above the raw value.
BoundResult curve_bound(double l, double epsilon, double p,
                        LogGrouping grouping = LogGrouping::Proof);

/// True iff the radicand inside the curve-bound square root is
/// nonnegative; holds for every l >= epsilon.
bool radicand_positive(double l, double epsilon, double p);

/// Minimum sample size for principal-curvature witnesses anywhere on a
/// surface of area s with cone angle theta:
///   m >= log((1 - p^{pi eps^2 / 12 s}) / 4) / log(1 - theta eps^2 / 2 s).
/// m_min is the smallest integer >= the raw value.
BoundResult surface_bound(double s, double epsilon, double theta, double p);

/// Independent integer-search oracle: smallest m >= 2 with
/// 1 - n (1 - alpha^2)^{binom(m,2)} >= p, evaluated in log space.
std::uint64_t oracle_min_m(double alpha, double n, double p);

} // namespace curvest
