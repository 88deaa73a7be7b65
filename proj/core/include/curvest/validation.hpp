#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvest/point.hpp"
#include "curvest/shapes.hpp"

namespace curvest {

struct TrialReport {
    std::uint64_t trials;
    std::uint64_t successes;
    double empirical_rate;
    double claimed_p;
    std::uint64_t m_used;
    double wilson_lower; ///< one-sided 95% lower confidence bound on the rate
};

struct BenchmarkRow {
    std::string shape_name;
    Point probe;
    double truth;
    double estimate;
    double abs_error;
    double rel_error; ///< |estimate-truth|/|truth|; NaN when truth == 0
    std::uint64_t seed;
    std::string flag;  ///< e.g. "paper-discrepancy"; empty otherwise
    std::string error; ///< estimator error message; empty on success
};

/// One-sided lower confidence bound on a binomial rate (Wilson score).
double wilson_lower_bound(std::uint64_t successes, std::uint64_t trials,
                          double z = 1.6448536269514722);

/// Monte-Carlo check of the curve coverage claim: per trial, sample
/// m = curve_bound(l, eps, p) points and require every one of `probes`
/// equally-spaced probe points to have an opposite-side pair within eps.
TrialReport validate_curve_bound(const CurveSpec& spec, double epsilon, double p,
                                 std::uint64_t trials, std::uint64_t probes,
                                 std::uint64_t seed,
                                 std::optional<std::uint64_t> m_override = std::nullopt);

/// Monte-Carlo check of the surface coverage claim via the operational
/// surrogate event: the surface estimator completes without Empty*
/// errors at every probe point.
TrialReport validate_surface_bound(const SurfaceSpec& spec, double epsilon, double p,
                                   std::uint64_t trials, std::uint64_t probes,
                                   std::uint64_t seed,
                                   std::optional<std::uint64_t> m_override = std::nullopt);

/// Deterministic probe sets used by the validators.
std::vector<Point> curve_probes(const CurveSpec& spec, std::uint64_t count);
std::vector<Point> surface_probes(const SurfaceSpec& spec, std::uint64_t count);

/// Reproduction of the reference result tables at eps = p = 0.1: every
/// catalog shape with a table probe, estimated once per shape with the
/// given seed. Estimator errors are recorded per row, never thrown.
std::vector<BenchmarkRow> benchmark_tables(std::uint64_t seed);
std::vector<BenchmarkRow> benchmark_curve_table(std::uint64_t seed);
std::vector<BenchmarkRow> benchmark_surface_table(std::uint64_t seed);

void write_rows_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows);
std::string rows_to_json(const std::vector<BenchmarkRow>& rows);
std::string report_to_json(const TrialReport& r);

} // namespace curvest
