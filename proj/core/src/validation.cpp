#include "curvest/validation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "curvest/bounds.hpp"
#include "curvest/curve_estimator.hpp"
#include "curvest/geometry.hpp"
#include "curvest/rng.hpp"
#include "curvest/surface_estimator.hpp"

namespace curvest {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool has_bracketing_pair(const PointCloud& cloud, const Point& a, double epsilon) {
    const auto nbrs = radius_query(cloud, a, epsilon);
    for (std::size_t j = 1; j < nbrs.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (opposite_side_test(a, nbrs[i].point, nbrs[j].point)) return true;
    return false;
}

double halton(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t n = i + 1; n > 0; n /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(n % base);
    }
    return r;
}

} // namespace

double wilson_lower_bound(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return 0.0;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double rad = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return std::max(0.0, (center - rad) / denom);
}

std::vector<Point> curve_probes(const CurveSpec& spec, std::uint64_t count) {
    const double l = curve_length(spec);
    std::vector<Point> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(curve_point_at_arclength(
            spec, (static_cast<double>(i) + 0.5) / static_cast<double>(count) * l));
    return out;
}

std::vector<Point> surface_probes(const SurfaceSpec& spec, std::uint64_t count) {
    std::vector<Point> out;
    out.reserve(count);
    if (const auto* s = std::get_if<SurfaceSpec::Sphere>(&spec.kind)) {
        // Fibonacci lattice
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (std::uint64_t i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = ga * static_cast<double>(i);
            out.push_back({s->center.x() + s->radius * r * std::cos(phi),
                           s->center.y() + s->radius * r * std::sin(phi),
                           s->center.z() + s->radius * z});
        }
    } else {
        const auto& g = std::get<SurfaceSpec::Graph>(spec.kind);
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = g.x0 + (g.x1 - g.x0) * halton(i, 2);
            const double y = g.y0 + (g.y1 - g.y0) * halton(i, 3);
            out.push_back({x, y, g.f(x, y)});
        }
    }
    return out;
}

TrialReport validate_curve_bound(const CurveSpec& spec, double epsilon, double p,
                                 std::uint64_t trials, std::uint64_t probes,
                                 std::uint64_t seed, std::optional<std::uint64_t> m_override) {
    if (trials < 100) throw DomainError("validate_curve_bound requires trials >= 100");
    const double l = curve_length(spec);
    const BoundResult bound = curve_bound(l, std::min(l, epsilon), p);
    const std::uint64_t m = m_override.value_or(bound.m_min);
    const auto probe_points = curve_probes(spec, probes);

    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const PointCloud cloud = sample_curve_uniform(spec, m, Rng::mix(seed, t));
        bool ok = true;
        for (const Point& a : probe_points)
            if (!has_bracketing_pair(cloud, a, epsilon)) {
                ok = false;
                break;
            }
        if (ok) ++successes;
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(trials);
    return {trials, successes, rate, p, m, wilson_lower_bound(successes, trials)};
}

TrialReport validate_surface_bound(const SurfaceSpec& spec, double epsilon, double p,
                                   std::uint64_t trials, std::uint64_t probes,
                                   std::uint64_t seed, std::optional<std::uint64_t> m_override) {
    if (trials < 100) throw DomainError("validate_surface_bound requires trials >= 100");
    const double s = surface_area(spec);
    const BoundResult bound = surface_bound(s, epsilon, epsilon / 10.0, p);
    const std::uint64_t m = m_override.value_or(bound.m_min);
    const auto probe_points = surface_probes(spec, probes);

    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const PointCloud cloud = sample_surface_uniform(spec, m, Rng::mix(seed, t));
        bool ok = true;
        for (const Point& a : probe_points) {
            try {
                estimate_surface_curvature(cloud, a, epsilon, p, s);
            } catch (const Error&) {
                ok = false;
                break;
            }
        }
        if (ok) ++successes;
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(trials);
    return {trials, successes, rate, p, m, wilson_lower_bound(successes, trials)};
}

namespace {

constexpr double kTableEpsilon = 0.1;
constexpr double kTableP = 0.1;

BenchmarkRow make_row(const std::string& name, const Point& probe, double truth,
                      std::uint64_t seed, bool discrepancy) {
    BenchmarkRow row{name,  probe, truth, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(), seed,
                     discrepancy ? "paper-discrepancy" : "", ""};
    return row;
}

void finish_row(BenchmarkRow& row, double estimate) {
    row.estimate = estimate;
    row.abs_error = std::abs(estimate - row.truth);
    row.rel_error = row.truth != 0.0 ? row.abs_error / std::abs(row.truth)
                                     : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

std::vector<BenchmarkRow> benchmark_curve_table(std::uint64_t seed) {
    std::vector<BenchmarkRow> rows;
    std::uint64_t stream = 0;
    for (const CurveSpec& spec : curve_catalog()) {
        ++stream;
        if (!spec.table_probe) continue;
        const Point probe = *spec.table_probe;
        BenchmarkRow row = make_row(spec.name, probe, 0.0, seed, spec.paper_discrepancy);
        try {
            row.truth = curve_curvature_oracle(spec, probe);
            const double l = curve_length(spec);
            const std::uint64_t m = curve_bound(l, std::min(l, kTableEpsilon), kTableP).m_min;
            const PointCloud cloud = sample_curve_uniform(spec, m, Rng::mix(seed, stream));
            finish_row(row, estimate_curve_curvature(cloud, probe, kTableEpsilon, kTableP, l).kappa);
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BenchmarkRow> benchmark_surface_table(std::uint64_t seed) {
    std::vector<BenchmarkRow> rows;
    std::uint64_t stream = 1000;
    for (const SurfaceSpec& spec : surface_catalog()) {
        ++stream;
        if (!spec.table_probe) continue;
        const Point probe = *spec.table_probe;
        BenchmarkRow row = make_row(spec.name, probe, 0.0, seed, spec.paper_discrepancy);
        try {
            row.truth = surface_curvature_oracle(spec, probe).gaussian;
            const double s = surface_area(spec);
            const std::uint64_t m = surface_bound(s, kTableEpsilon, kTableEpsilon / 10.0, kTableP).m_min;
            const PointCloud cloud = sample_surface_uniform(spec, m, Rng::mix(seed, stream));
            finish_row(row,
                       estimate_surface_curvature(cloud, probe, kTableEpsilon, kTableP, s).gaussian);
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BenchmarkRow> benchmark_tables(std::uint64_t seed) {
    std::vector<BenchmarkRow> rows = benchmark_curve_table(seed);
    std::vector<BenchmarkRow> surf = benchmark_surface_table(seed);
    rows.insert(rows.end(), std::make_move_iterator(surf.begin()),
                std::make_move_iterator(surf.end()));
    return rows;
}

void write_rows_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows) {
    os << "shape,px,py,pz,truth,estimate,abs_error,rel_error,seed,flag,error\n";
    for (const BenchmarkRow& r : rows) {
        os << r.shape_name << ',' << fmt17(r.probe.x()) << ',' << fmt17(r.probe.y()) << ',';
        if (r.probe.dim() == 3) os << fmt17(r.probe.z());
        os << ',' << fmt17(r.truth) << ',' << fmt17(r.estimate) << ',' << fmt17(r.abs_error)
           << ',' << fmt17(r.rel_error) << ',' << r.seed << ',' << r.flag << ',' << r.error
           << '\n';
    }
}

namespace {

json row_to_json(const BenchmarkRow& r) {
    json probe = json::array();
    for (int k = 0; k < r.probe.dim(); ++k) probe.push_back(r.probe[k]);
    json j{{"shape", r.shape_name},   {"probe", probe},
           {"truth", r.truth},        {"estimate", r.estimate},
           {"abs_error", r.abs_error}, {"rel_error", r.rel_error},
           {"seed", r.seed},          {"flag", r.flag},
           {"error", r.error}};
    if (std::isnan(r.estimate)) j["estimate"] = nullptr;
    if (std::isnan(r.abs_error)) j["abs_error"] = nullptr;
    if (std::isnan(r.rel_error)) j["rel_error"] = nullptr;
    return j;
}

} // namespace

std::string rows_to_json(const std::vector<BenchmarkRow>& rows) {
    json arr = json::array();
    for (const BenchmarkRow& r : rows) arr.push_back(row_to_json(r));
    return arr.dump(2);
}

std::string report_to_json(const TrialReport& r) {
    return json{{"trials", r.trials},
                {"successes", r.successes},
                {"empirical_rate", r.empirical_rate},
                {"claimed_p", r.claimed_p},
                {"m_used", r.m_used},
                {"wilson_lower", r.wilson_lower}}
        .dump(2);
}

} // namespace curvest
