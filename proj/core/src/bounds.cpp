#include "curvest/bounds.hpp"

#include <cmath>
#include <limits>

#include "curvest/errors.hpp"

namespace curvest {

namespace {

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie strictly inside (0,1)");
}

double pair_bound_raw(double alpha, double n, double p, LogGrouping grouping) {
    // b = (log(1-p) - log n) / log(1-alpha^2), proof grouping; the
    // printed display formula divides log n by 8 relative to that.
    const double denom = std::log1p(-alpha * alpha); // < 0, -inf at alpha == 1
    double numer = std::log1p(-p) - std::log(n);
    if (grouping == LogGrouping::Printed)
        numer = std::log1p(-p) - std::log(n) / 8.0;
    double b = numer / denom;
    if (std::isinf(denom)) b = 0.0;
    if (b < 0.0) b = 0.0; // any pair-admitting m works; the quadratic root still applies
    return 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * b));
}

// smallest integer strictly greater than v
std::uint64_t strictly_above(double v) {
    const double f = std::floor(v);
    const double next = (f == v) ? v + 1.0 : std::ceil(v);
    return next < 2.0 ? 2 : static_cast<std::uint64_t>(next);
}

} // namespace

BoundResult generic_pair_bound(double alpha, double n, double p, LogGrouping grouping) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie strictly inside (0,1)");
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    check_p(p);
    const double raw = pair_bound_raw(alpha, n, p, grouping);
    return {strictly_above(raw), raw, BoundFormula::GenericPair};
}

BoundResult curve_bound(double l, double epsilon, double p, LogGrouping grouping) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!(l >= epsilon)) throw DomainError("curve_bound requires l >= epsilon");
    check_p(p);
    const double alpha = epsilon / l; // == 1 allowed when l == epsilon
    const double n = std::max(1.0, l / (2.0 * epsilon));
    const double raw = pair_bound_raw(alpha, n, p, grouping);
    return {strictly_above(raw), raw, BoundFormula::CurveThm};
}

bool radicand_positive(double l, double epsilon, double p) {
    if (!(l > 0.0 && epsilon > 0.0)) return false;
    const double denom = std::log1p(-(epsilon / l) * (epsilon / l));
    if (std::isinf(denom) || denom == 0.0) return true; // l == epsilon or epsilon/l underflows
    const double n = std::max(1.0, l / (2.0 * epsilon));
    const double numer = 8.0 * (std::log1p(-p) - std::log(n));
    return 1.0 + numer / denom >= 0.0;
}

BoundResult surface_bound(double s, double epsilon, double theta, double p) {
    if (!(s > 0.0)) throw DomainError("surface area must be positive");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    check_p(p);
    const double cone_frac = theta * epsilon * epsilon / (2.0 * s);
    if (!(cone_frac < 1.0))
        throw DomainError("theta*eps^2/(2s) must be < 1; the log argument 1-theta*eps^2/(2s) "
                          "leaves (0,1)");
    const double exponent = M_PI * epsilon * epsilon / (12.0 * s);
    if (!(exponent <= 1.0))
        throw DomainError("pi*eps^2/(12s) must be <= 1; the exponent of p leaves (0,1]");
    const double numer_arg = (1.0 - std::pow(p, exponent)) / 4.0;
    if (!(numer_arg > 0.0 && numer_arg < 1.0))
        throw DomainError("(1-p^{pi eps^2/12s})/4 leaves (0,1)");
    const double raw = std::log(numer_arg) / std::log1p(-cone_frac);
    const std::uint64_t m = raw <= 2.0 ? 2 : static_cast<std::uint64_t>(std::ceil(raw));
    return {m, raw, BoundFormula::SurfaceThm};
}

std::uint64_t oracle_min_m(double alpha, double n, double p) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie strictly inside (0,1)");
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    check_p(p);
    // need binom(m,2) * log(1-alpha^2) <= log(1-p) - log n
    const double la = std::log1p(-alpha * alpha);
    const double target = std::log1p(-p) - std::log(n);
    for (std::uint64_t m = 2;; ++m) {
        const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
        if (pairs * la <= target) return m;
        if (m > 100000000ULL)
            throw DomainError("oracle_min_m: no m below 1e8 satisfies the inequality");
    }
}

} // namespace curvest
