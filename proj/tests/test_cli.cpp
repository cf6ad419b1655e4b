#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "torlab/lfun.hpp"
#include "torlab/spectral.hpp"

// End-to-end tests of the installed binary (path injected by the build).

namespace {
struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix;
    if (!cmd.empty()) cmd += ' ';
    cmd += TORLAB_BIN;
    cmd += ' ';
    cmd += args;
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}
} // namespace

TEST_CASE("--version and --help succeed") {
    const auto v = run_cli("--version");
    CHECK(v.code == 0);
    CHECK(v.out == "torlab 1.0.0\n");
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("zeros: JSON payload round-trips through the library parser") {
    const auto r = run_cli("zeros --d -4 --t-max 15 --format json");
    REQUIRE(r.code == 0);
    // The CLI nests the payload under "zerolist" next to the config echo.
    const auto doc = nlohmann::json::parse(r.out);
    const auto zl = torlab::lfun::zerolist_from_json(doc.at("zerolist").dump());
    REQUIRE(zl.ordinates.size() == 4);
    CHECK(zl.ordinates.front() == doctest::Approx(6.0209489047).epsilon(1e-6));
    CHECK(zl.ordinates.back() == doctest::Approx(14.1347251417).epsilon(1e-6));
    CHECK(zl.audit_match);
}

TEST_CASE("zeros: CSV shape and --out redirection") {
    const auto r = run_cli("zeros --d -4 --t-max 7 --format csv");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2); // header + the single zero below 7
    CHECK(rows[0] == "index,gamma,residual,bracket_lo,bracket_hi");
    CHECK(rows[1].substr(0, 8) == "0,6.0209");

    const auto w = run_cli("zeros --d -4 --t-max 7 --format csv --out cli_zeros.csv");
    REQUIRE(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream f("cli_zeros.csv");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == r.out);
    std::remove("cli_zeros.csv");
}

TEST_CASE("zeros output is byte-stable across runs") {
    const auto a = run_cli("zeros --d -4 --t-max 12 --format json");
    const auto b = run_cli("zeros --d -4 --t-max 12 --format json");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("eis: CSV grid, header bytes, and thread invariance") {
    const std::string grid =
        "eis --x0 -0.375 --x1 0.375 --nx 4 --y0 0.8 --y1 1.1 --ny 4 "
        "--re-s 0.5 --im-s 2 --format csv";
    const auto r1 = run_cli(grid + " --threads 1");
    REQUIRE(r1.code == 0);
    const auto rows = lines_of(r1.out);
    REQUIRE(rows.size() == 17); // header + 4x4 points
    CHECK(rows[0] == "x,y,re_s,im_s,re_E,im_E,err");

    const auto r4 = run_cli(grid + " --threads 4");
    REQUIRE(r4.code == 0);
    CHECK(r1.out == r4.out);
}

TEST_CASE("period subcommand agrees with the closed form") {
    const auto r = run_cli("period --d -4 --re-s 0.75");
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("periods").at("rel_errors")[0].get<double>() < 1e-6);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").code == 2);                                   // no subcommand
    CHECK(run_cli("--nope").code == 2);                             // unknown flag
    CHECK(run_cli("zeros --t-max 10").code == 2);                   // missing --d
    CHECK(run_cli("zeros --d -4 --tol 1").code == 2);               // tol out of range
    CHECK(run_cli("eis --re-s 0.5 --nx 200 --ny 200").code == 2);   // grid too large
    CHECK(run_cli("eis --re-s 0.5 --y0 -1 --y1 -1").code == 2);     // y <= 0
    CHECK(run_cli("verify --suite bogus").code == 2);               // unknown suite
    CHECK(run_cli("zeros --d 20 --t-max 5").code == 2);             // non-fundamental d
}

TEST_CASE("TORLAB_TOL: validated, applied, and overridden by --tol") {
    // Malformed or out-of-range env values are usage errors.
    CHECK(run_cli("zeros --d -4 --t-max 5", "TORLAB_TOL=banana").code == 2);
    CHECK(run_cli("zeros --d -4 --t-max 5", "TORLAB_TOL=1e-20").code == 2);

    // The env default is applied (echoed through config.tol and passing at
    // any permitted value: the siegel identity holds to ~2e-14 here)...
    auto tol_of = [](const CliRun& r) {
        return nlohmann::json::parse(r.out).at("config").at("tol").get<double>();
    };
    const auto r_env = run_cli("siegel --d -4 --class 0 --re-s 0.75", "TORLAB_TOL=1e-4");
    CHECK(r_env.code == 0);
    CHECK(tol_of(r_env) == 1e-4);
    const auto r_tight = run_cli("siegel --d -4 --class 0 --re-s 0.75", "TORLAB_TOL=1e-12");
    CHECK(r_tight.code == 0);
    CHECK(tol_of(r_tight) == 1e-12);
    // ...and an explicit --tol wins over the env in both directions.
    const auto r_o1 = run_cli("siegel --d -4 --class 0 --re-s 0.75 --tol 1e-4",
                              "TORLAB_TOL=1e-12");
    CHECK(r_o1.code == 0);
    CHECK(tol_of(r_o1) == 1e-4);
    const auto r_o2 = run_cli("siegel --d -4 --class 0 --re-s 0.75 --tol 1e-12",
                              "TORLAB_TOL=1e-3");
    CHECK(r_o2.code == 0);
    CHECK(tol_of(r_o2) == 1e-12);
}

TEST_CASE("precision-window violations exit 3") {
    CHECK(run_cli("eis --re-s 0.5 --im-s 50").code == 3);
}

TEST_CASE("packet: toroidal file passes, off-zero file fails") {
    using torlab::special::cplx;
    const auto on = torlab::spectral::make_packet(
        {{cplx(0.5, 6.0209489047), cplx(1.0, 0.0)}});
    {
        std::ofstream f("cli_pkt_on.json");
        f << torlab::spectral::packet_to_json(on);
    }
    const auto off = torlab::spectral::make_packet({{cplx(0.5, 7.0), cplx(1.0, 0.0)}});
    {
        std::ofstream f("cli_pkt_off.json");
        f << torlab::spectral::packet_to_json(off);
    }

    const auto good =
        run_cli("packet --file cli_pkt_on.json --d -4 --t-max 11 --tol 1e-6");
    CHECK(good.code == 0);
    const auto bad =
        run_cli("packet --file cli_pkt_off.json --d -4 --t-max 11 --tol 1e-6");
    CHECK(bad.code == 1);
    // Malformed packet file is a usage error.
    {
        std::ofstream f("cli_pkt_bad.json");
        f << "{not json";
    }
    CHECK(run_cli("packet --file cli_pkt_bad.json --d -4 --t-max 11").code == 2);
    std::remove("cli_pkt_on.json");
    std::remove("cli_pkt_off.json");
    std::remove("cli_pkt_bad.json");
}

TEST_CASE("verify: fast suite passes and reports structured JSON") {
    const auto r = run_cli("verify --suite gammapoly");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema").get<int>() == 1);
    CHECK(doc.at("suite").get<std::string>() == "gammapoly");
    CHECK(doc.at("pass").get<bool>());
}
