#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvest/bounds.hpp"
#include "curvest/curve_estimator.hpp"
#include "curvest/errors.hpp"
#include "curvest/shapes.hpp"
#include "curvest/surface_estimator.hpp"
#include "curvest/validation.hpp"
#include "curvest/version.hpp"

namespace {

using curvest::Point;
using curvest::PointCloud;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitEstimator = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json envelope(const std::string& command, json params) {
    return json{{"tool", "curvest"},
                {"version", CURVEST_VERSION},
                {"command", command},
                {"params", std::move(params)}};
}

PointCloud read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw curvest::DomainError("cannot open cloud file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw curvest::DomainError("empty cloud file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int dim;
    if (line == "x,y")
        dim = 2;
    else if (line == "x,y,z")
        dim = 3;
    else
        throw curvest::DomainError("cloud header must be 'x,y' or 'x,y,z', got '" + line + "'");
    PointCloud cloud(dim);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        double c[3] = {0, 0, 0};
        char comma;
        ss >> c[0] >> comma >> c[1];
        if (dim == 3) ss >> comma >> c[2];
        if (!ss)
            throw curvest::DomainError("bad cloud row at line " + std::to_string(lineno));
        cloud.push_back(dim == 2 ? Point{c[0], c[1]} : Point{c[0], c[1], c[2]});
    }
    return cloud;
}

Point parse_point(const std::vector<double>& coords) {
    if (coords.size() == 2) return {coords[0], coords[1]};
    if (coords.size() == 3) return {coords[0], coords[1], coords[2]};
    throw curvest::DomainError("--point takes 2 or 3 coordinates");
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
    os << (cloud.dim() == 2 ? "x,y" : "x,y,z") << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point p = cloud.point(i);
        os << fmt17(p[0]) << ',' << fmt17(p[1]);
        if (cloud.dim() == 3) os << ',' << fmt17(p[2]);
        os << '\n';
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw curvest::DomainError("cannot open output file: " + path);
    return file;
}

int run(int argc, char** argv) {
    CLI::App app{"curvature estimation from uniform point clouds"};
    app.require_subcommand(1);

    // bound
    auto* bound = app.add_subcommand("bound", "minimum sample size for a coverage guarantee");
    bool b_curve = false, b_surface = false;
    double b_l = 0, b_s = 0, b_eps = 0, b_p = 0, b_theta = -1;
    bound->add_flag("--curve", b_curve, "curve bound");
    bound->add_flag("--surface", b_surface, "surface bound");
    bound->add_option("-l,--length", b_l, "curve length");
    bound->add_option("-s,--area", b_s, "surface area");
    bound->add_option("-e,--epsilon", b_eps, "scale epsilon")->required();
    bound->add_option("-p,--probability", b_p, "coverage probability")->required();
    bound->add_option("--theta", b_theta, "surface angle parameter (default epsilon/10)");

    // sample
    auto* sample = app.add_subcommand("sample", "draw a uniform point cloud from a catalog shape");
    std::string s_shape, s_out;
    std::uint64_t s_m = 0, s_seed = 0;
    sample->add_option("--shape", s_shape, "catalog shape name")->required();
    sample->add_option("-m,--count", s_m, "number of points")->required();
    sample->add_option("--seed", s_seed, "RNG seed")->required();
    sample->add_option("-o,--output", s_out, "output CSV path (default stdout)");

    // estimate-curve
    auto* ec = app.add_subcommand("estimate-curve", "curvature of a plane curve at a point");
    std::string ec_cloud;
    std::vector<double> ec_point;
    double ec_eps = 0, ec_p = 0, ec_l = 0;
    ec->add_option("--cloud", ec_cloud, "cloud CSV path")->required();
    ec->add_option("--point", ec_point, "query point x y")->expected(2)->required();
    ec->add_option("-e,--epsilon", ec_eps, "scale epsilon")->required();
    ec->add_option("-p,--probability", ec_p, "coverage probability")->required();
    ec->add_option("-l,--length", ec_l, "curve length")->required();

    // estimate-surface
    auto* es = app.add_subcommand("estimate-surface", "principal curvatures of a surface at a point");
    std::string es_cloud;
    std::vector<double> es_point;
    double es_eps = 0, es_p = 0, es_s = 0, es_theta = -1;
    es->add_option("--cloud", es_cloud, "cloud CSV path")->required();
    es->add_option("--point", es_point, "query point x y z")->expected(3)->required();
    es->add_option("-e,--epsilon", es_eps, "scale epsilon")->required();
    es->add_option("-p,--probability", es_p, "coverage probability")->required();
    es->add_option("-s,--area", es_s, "surface area")->required();
    es->add_option("--theta", es_theta, "angle parameter (default epsilon/10)");

    // validate
    auto* val = app.add_subcommand("validate", "Monte-Carlo check of a coverage bound");
    bool v_curve = false, v_surface = false;
    std::string v_shape;
    double v_eps = 0, v_p = 0;
    std::uint64_t v_trials = 0, v_probes = 0, v_seed = 0;
    std::optional<std::uint64_t> v_m;
    val->add_flag("--curve", v_curve, "validate the curve bound");
    val->add_flag("--surface", v_surface, "validate the surface bound");
    val->add_option("--shape", v_shape, "catalog shape name")->required();
    val->add_option("-e,--epsilon", v_eps, "scale epsilon")->required();
    val->add_option("-p,--probability", v_p, "coverage probability")->required();
    val->add_option("--trials", v_trials, "number of trials (>= 100)")->required();
    val->add_option("--probes", v_probes, "probe points per trial")->required();
    val->add_option("--seed", v_seed, "RNG seed")->required();
    val->add_option("-m,--count", v_m, "override the sample size per trial");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "reproduce the reference result tables");
    std::uint64_t bm_seed = 0;
    std::string bm_out;
    bench->add_option("--seed", bm_seed, "RNG seed")->required();
    bench->add_option("-o,--output", bm_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (bound->parsed()) {
        if (b_curve == b_surface)
            throw curvest::DomainError("bound: pass exactly one of --curve/--surface");
        curvest::BoundResult r{};
        json params{{"epsilon", b_eps}, {"p", b_p}};
        if (b_curve) {
            if (!bound->count("-l") && !bound->count("--length"))
                throw curvest::DomainError("bound --curve requires --length");
            r = curvest::curve_bound(b_l, b_eps, b_p);
            params["length"] = b_l;
        } else {
            if (!bound->count("-s") && !bound->count("--area"))
                throw curvest::DomainError("bound --surface requires --area");
            const double theta = b_theta > 0 ? b_theta : b_eps / 10.0;
            r = curvest::surface_bound(b_s, b_eps, theta, b_p);
            params["area"] = b_s;
            params["theta"] = theta;
        }
        json out = envelope("bound", params);
        out["m_min"] = r.m_min;
        out["raw_value"] = r.raw_value;
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (sample->parsed()) {
        PointCloud cloud(2);
        try {
            cloud = curvest::sample_curve_uniform(curvest::find_curve(s_shape), s_m, s_seed);
        } catch (const curvest::DomainError&) {
            cloud = curvest::sample_surface_uniform(curvest::find_surface(s_shape), s_m, s_seed);
        }
        std::ofstream file;
        write_cloud_csv(open_output(file, s_out), cloud);
        return 0;
    }

    if (ec->parsed()) {
        const PointCloud cloud = read_cloud_csv(ec_cloud);
        const Point a = parse_point(ec_point);
        const auto est = curvest::estimate_curve_curvature(cloud, a, ec_eps, ec_p, ec_l);
        json out = envelope("estimate-curve", {{"cloud", ec_cloud},
                                               {"point", ec_point},
                                               {"epsilon", ec_eps},
                                               {"p", ec_p},
                                               {"length", ec_l}});
        out["kappa"] = est.kappa;
        out["witness1"] = est.witness1;
        out["witness2"] = est.witness2;
        out["epsilon_used"] = est.epsilon_used;
        out["m_required"] = est.m_required;
        out["m_provided"] = est.m_provided;
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (es->parsed()) {
        const PointCloud cloud = read_cloud_csv(es_cloud);
        const Point a = parse_point(es_point);
        const std::optional<double> theta =
            es_theta > 0 ? std::optional<double>(es_theta) : std::nullopt;
        const auto est = curvest::estimate_surface_curvature(cloud, a, es_eps, es_p, es_s, theta);
        json out = envelope("estimate-surface", {{"cloud", es_cloud},
                                                 {"point", es_point},
                                                 {"epsilon", es_eps},
                                                 {"p", es_p},
                                                 {"area", es_s},
                                                 {"theta", est.theta_used}});
        out["kappa1"] = est.kappa1;
        out["kappa2"] = est.kappa2;
        out["gaussian"] = est.gaussian;
        out["mean"] = est.mean;
        out["q_index"] = est.q_index;
        out["q_prime_index"] = est.q_prime_index;
        out["b_index"] = est.b_index;
        out["b_prime_index"] = est.b_prime_index;
        out["epsilon_used"] = est.epsilon_used;
        out["theta_used"] = est.theta_used;
        out["m_required"] = est.m_required;
        out["m_provided"] = est.m_provided;
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (val->parsed()) {
        if (v_curve == v_surface)
            throw curvest::DomainError("validate: pass exactly one of --curve/--surface");
        curvest::TrialReport report{};
        if (v_curve)
            report = curvest::validate_curve_bound(curvest::find_curve(v_shape), v_eps, v_p,
                                                   v_trials, v_probes, v_seed, v_m);
        else
            report = curvest::validate_surface_bound(curvest::find_surface(v_shape), v_eps, v_p,
                                                     v_trials, v_probes, v_seed, v_m);
        json out = envelope("validate", {{"shape", v_shape},
                                         {"mode", v_curve ? "curve" : "surface"},
                                         {"epsilon", v_eps},
                                         {"p", v_p},
                                         {"trials", v_trials},
                                         {"probes", v_probes},
                                         {"seed", v_seed}});
        out["report"] = json::parse(curvest::report_to_json(report));
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (bench->parsed()) {
        const auto curves = curvest::benchmark_curve_table(bm_seed);
        const auto surfaces = curvest::benchmark_surface_table(bm_seed);
        {
            std::ofstream f(bm_out + "/table1.csv", std::ios::binary);
            if (!f) throw curvest::DomainError("cannot write to output directory: " + bm_out);
            curvest::write_rows_csv(f, curves);
        }
        {
            std::ofstream f(bm_out + "/table2.csv", std::ios::binary);
            curvest::write_rows_csv(f, surfaces);
        }
        json out = envelope("benchmark", {{"seed", bm_seed}, {"output", bm_out}});
        auto all = curves;
        all.insert(all.end(), surfaces.begin(), surfaces.end());
        out["rows"] = json::parse(curvest::rows_to_json(all));
        std::ofstream f(bm_out + "/tables.json", std::ios::binary);
        f << out.dump(2) << '\n';
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const curvest::InsufficientSamples& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInsufficient;
    } catch (const curvest::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvest::DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvest::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEstimator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
