// black-box tests of the curvest CLI; argv[1] is the binary path
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAILED: " << what << '\n';
        ++failures;
    }
}

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return {-1, ""};
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_envelope(const json& j, const std::string& command) {
    check(j.contains("tool") && j["tool"] == "curvest", command + ": tool field");
    check(j.contains("version") && j["version"].is_string(), command + ": version field");
    check(j.contains("command") && j["command"] == command, command + ": command field");
    check(j.contains("params") && j["params"].is_object(), command + ": params field");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: curvest_cli_tests <path-to-curvest>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path dir = fs::current_path() / "cli_test_tmp";
    fs::create_directories(dir);

    { // bound --curve against the frozen golden
        auto r = run(cli + " bound --curve -l 31.415926535897931 -e 0.1 -p 0.1");
        check(r.status == 0, "bound --curve exit 0");
        const json j = json::parse(r.out);
        check_envelope(j, "bound");
        check(j["m_min"] == 1010, "bound m_min golden");
        check(std::abs(j["raw_value"].get<double>() - 1009.9332230901211) < 1e-9,
              "bound raw_value golden");
    }
    { // bound --surface golden
        auto r = run(cli + " bound --surface -s 314.15926535897933 -e 0.1 --theta 0.01 -p 0.1");
        check(r.status == 0, "bound --surface exit 0");
        const json j = json::parse(r.out);
        check(j["m_min"] == 76953423, "surface bound m_min golden");
        check(j["params"]["theta"] == 0.01, "surface bound theta echoed");
    }
    { // config errors exit 2
        check(run(cli + " bound --curve --surface -l 1 -s 1 -e 0.1 -p 0.1").status == 2,
              "bound with both flags exits 2");
        check(run(cli + " bound --curve -l 0.01 -e 0.1 -p 0.1").status == 2,
              "bound with l < eps exits 2");
        check(run(cli + " estimate-curve --cloud /no/such/file --point 0 0 -e 0.1 -p 0.1 -l 1")
                      .status == 2,
              "missing cloud file exits 2");
    }

    const fs::path cloud_csv = dir / "circle5.csv";
    { // sample: format, determinism, on-shape
        auto r = run(cli + " sample --shape circle-r5 -m 1010 --seed 7 -o " +
                     cloud_csv.string());
        check(r.status == 0, "sample exit 0");
        std::ifstream in(cloud_csv);
        std::string header;
        std::getline(in, header);
        check(header == "x,y", "sample header x,y");
        std::size_t rows = 0;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        check(rows == 1010, "sample row count");

        const fs::path again = dir / "circle5b.csv";
        run(cli + " sample --shape circle-r5 -m 1010 --seed 7 -o " + again.string());
        check(slurp(cloud_csv) == slurp(again), "sample is seed-deterministic");
        const fs::path other = dir / "circle5c.csv";
        run(cli + " sample --shape circle-r5 -m 1010 --seed 8 -o " + other.string());
        check(slurp(cloud_csv) != slurp(other), "different seed changes the cloud");

        const fs::path sph = dir / "sph.csv";
        run(cli + " sample --shape sphere-r5 -m 20 --seed 1 -o " + sph.string());
        std::ifstream sin(sph);
        std::getline(sin, header);
        check(header == "x,y,z", "surface sample header x,y,z");
    }
    { // estimate-curve round-trips the sampled cloud to the frozen estimate
        auto r = run(cli + " estimate-curve --cloud " + cloud_csv.string() +
                     " --point 4 3 -e 0.1 -p 0.1 -l 31.415926535897931");
        check(r.status == 0, "estimate-curve exit 0");
        const json j = json::parse(r.out);
        check_envelope(j, "estimate-curve");
        check(std::abs(j["kappa"].get<double>() - 0.2000000000392218) < 1e-12,
              "estimate-curve kappa golden (lossless CSV round-trip)");
        check(j["witness1"] == 818 && j["witness2"] == 428, "estimate-curve witnesses");
        check(j["m_required"] == 1010, "estimate-curve m_required");
        check(j["m_provided"] == 1010, "estimate-curve m_provided");
        check(j["epsilon_used"] == 0.1, "estimate-curve epsilon_used");
    }
    { // insufficient samples exits 3 and names the requirement
        const fs::path tiny = dir / "tiny.csv";
        run(cli + " sample --shape circle-r5 -m 50 --seed 7 -o " + tiny.string());
        auto r = run(cli + " estimate-curve --cloud " + tiny.string() +
                     " --point 4 3 -e 0.1 -p 0.1 -l 31.415926535897931");
        check(r.status == 3, "undersized cloud exits 3");
    }
    { // estimator failure (no bracketing pair) exits 4
        const fs::path line_csv = dir / "line.csv";
        run(cli + " sample --shape line -m 30 --seed 2 -o " + line_csv.string());
        auto r = run(cli + " estimate-curve --cloud " + line_csv.string() +
                     " --point 0.5 5 -e 0.1 -p 0.5 -l 1");
        check(r.status == 4, "far-off probe exits 4");
    }
    { // estimate-surface on a plane cloud with a workable bound
        const fs::path plane_csv = dir / "plane.csv";
        run(cli + " sample --shape plane -m 800 --seed 31 -o " + plane_csv.string());
        auto r = run(cli + " estimate-surface --cloud " + plane_csv.string() +
                     " --point 0.5 0.5 0 -e 0.5 -p 0.5 -s 1 --theta 0.05");
        check(r.status == 0, "estimate-surface exit 0");
        const json j = json::parse(r.out);
        check_envelope(j, "estimate-surface");
        check(j["kappa1"].get<double>() <= 1e-4, "plane kappa1 near zero");
        check(j["gaussian"].get<double>() ==
                  j["kappa1"].get<double>() * j["kappa2"].get<double>(),
              "gaussian = kappa1*kappa2");
        check(j["theta_used"] == 0.05, "estimate-surface theta_used");
        check(j.contains("q_index") && j.contains("b_prime_index"),
              "estimate-surface witness fields");
    }
    { // validate emits a complete report
        auto r = run(cli + " validate --curve --shape line -e 0.5 -p 0.5 --trials 100"
                           " --probes 8 --seed 3 -m 64");
        check(r.status == 0, "validate exit 0");
        const json j = json::parse(r.out);
        check_envelope(j, "validate");
        const json& rep = j["report"];
        check(rep["trials"] == 100, "validate trials");
        check(rep["m_used"] == 64, "validate m override respected");
        check(rep.contains("successes") && rep.contains("empirical_rate") &&
                  rep.contains("claimed_p") && rep.contains("wilson_lower"),
              "validate report fields");
        check(run(cli + " validate --curve --shape line -e 0.5 -p 0.5 --trials 50"
                        " --probes 8 --seed 3").status == 2,
              "validate with trials < 100 exits 2");
    }

    fs::remove_all(dir);
    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
