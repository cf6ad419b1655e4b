#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "torlab/eis.hpp"
#include "torlab/lfun.hpp"
#include "torlab/nfield.hpp"
#include "torlab/parallel.hpp"
#include "torlab/periods.hpp"
#include "torlab/special.hpp"
#include "torlab/spectral.hpp"
#include "torlab/verify.hpp"

// Exit codes: 0 success, 1 verification failure (a checked identity exceeded
// its tolerance), 2 usage error, 3 precision-window error.  Reports embed the
// config and tool version but never the thread count: for a fixed config the
// bytes are identical at every thread count.

namespace {

using nlohmann::ordered_json;
using torlab::special::cplx;

constexpr const char* kVersion = "torlab 1.0.0";

// Default tolerance, overridable by the TORLAB_TOL environment variable
// (explicit --tol always wins; same [1e-12, 1e-3] bounds).
double default_tol(double fallback) {
    const char* env = std::getenv("TORLAB_TOL");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 1e-12 && v <= 1e-3))
        throw std::invalid_argument(
            "TORLAB_TOL must be a number in [1e-12, 1e-3], got '" +
            std::string(env) + "'");
    return v;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

torlab::lfun::HeckeCharacter resolve_chi(const torlab::nfield::QuadraticField& K,
                                         const std::string& spec) {
    if (spec == "trivial") return torlab::lfun::trivial_character(K);
    if (spec.rfind("genus", 0) == 0) {
        const auto all = torlab::lfun::real_class_characters(K);
        if (spec == "genus") {
            for (const auto& c : all)
                if (!c.is_trivial()) return c;
            throw std::invalid_argument(
                "field has no genus character (class number 1)");
        }
        if (spec.size() > 6 && spec[5] == ':') {
            long long d1 = 0, d2 = 0;
            char comma = '\0';
            std::istringstream in(spec.substr(6));
            if ((in >> d1 >> comma >> d2) && comma == ',') {
                for (const auto& c : all)
                    if (!c.is_trivial() &&
                        ((c.d1 == d1 && c.d2 == d2) || (c.d1 == d2 && c.d2 == d1)))
                        return c;
                throw std::invalid_argument("no genus character with factors " +
                                            std::to_string(d1) + "," +
                                            std::to_string(d2));
            }
        }
    }
    throw std::invalid_argument("chi must be 'trivial', 'genus', or 'genus:d1,d2'");
}

ordered_json config_head(const std::string& command) {
    ordered_json j;
    j["schema"] = 1;
    j["version"] = kVersion;
    j["config"] = ordered_json::object();
    j["config"]["command"] = command;
    return j;
}

std::string g17(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

// ----------------------------------------------------------------- zeros

int cmd_zeros(long long d, const std::string& chi_spec, double t_max, double tol,
              const std::string& format, const std::string& out) {
    const auto K = torlab::nfield::make_field(d);
    const auto chi = resolve_chi(K, chi_spec);
    const auto zl = torlab::lfun::find_zeros(K, chi, t_max, tol);

    if (format == "csv") {
        std::string text = "index,gamma,residual,bracket_lo,bracket_hi\n";
        for (std::size_t i = 0; i < zl.ordinates.size(); ++i) {
            text += std::to_string(i) + "," + g17(zl.ordinates[i]) + "," +
                    g17(zl.residuals[i]) + "," + g17(zl.brackets[i].lo) + "," +
                    g17(zl.brackets[i].hi) + "\n";
        }
        emit(text, out);
    } else {
        ordered_json j = config_head("zeros");
        j["config"]["d"] = d;
        j["config"]["chi"] = chi.name;
        j["config"]["t_max"] = t_max;
        j["config"]["tol"] = tol;
        j["zerolist"] = ordered_json::parse(torlab::lfun::zerolist_to_json(zl));
        emit(j.dump(2) + "\n", out);
    }
    if (!zl.audit_match) {
        std::fprintf(stderr,
                     "zeros: argument-principle audit count %d does not match "
                     "the %zu bisected ordinates\n",
                     zl.audit_count, zl.ordinates.size());
        return 1;
    }
    return 0;
}

// ------------------------------------------------------------------- eis

int cmd_eis(double x0, double x1, int nx, double y0, double y1, int ny,
            double re_s, double im_s, int threads, const std::string& format,
            const std::string& out) {
    if (nx < 1 || ny < 1 || static_cast<long long>(nx) * ny > 10000)
        throw std::invalid_argument("grid size must be between 1 and 10^4 points");
    if (!(y0 > 0.0) || !(y1 > 0.0))
        throw std::invalid_argument("need y > 0 on the whole grid");
    const cplx s(re_s, im_s);

    struct Row {
        double x, y;
        cplx E;
        double err;
    };
    std::vector<Row> rows(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    torlab::parallel_for(static_cast<int>(rows.size()), threads, [&](int k) {
        const int i = k % nx;
        const int jy = k / nx;
        const double x = (nx == 1) ? x0 : x0 + (x1 - x0) * i / (nx - 1);
        const double y = (ny == 1) ? y0 : y0 + (y1 - y0) * jy / (ny - 1);
        const auto ev = torlab::eis::eisenstein({x, y}, s);
        if (ev.pole)
            throw std::invalid_argument(
                "E(z, s) has a pole at this s (s = 1); evaluate the residue instead");
        rows[static_cast<std::size_t>(k)] = {x, y, ev.value, ev.error_estimate};
    });

    if (format == "json") {
        ordered_json j = config_head("eis");
        j["config"]["x0"] = x0;
        j["config"]["x1"] = x1;
        j["config"]["nx"] = nx;
        j["config"]["y0"] = y0;
        j["config"]["y1"] = y1;
        j["config"]["ny"] = ny;
        j["config"]["re_s"] = re_s;
        j["config"]["im_s"] = im_s;
        auto arr = ordered_json::array();
        for (const Row& r : rows) {
            ordered_json e;
            e["x"] = r.x;
            e["y"] = r.y;
            e["re_E"] = r.E.real();
            e["im_E"] = r.E.imag();
            e["err"] = r.err;
            arr.push_back(e);
        }
        j["rows"] = arr;
        emit(j.dump(2) + "\n", out);
    } else {
        std::string text = "x,y,re_s,im_s,re_E,im_E,err\n";
        for (const Row& r : rows)
            text += g17(r.x) + "," + g17(r.y) + "," + g17(re_s) + "," + g17(im_s) +
                    "," + g17(r.E.real()) + "," + g17(r.E.imag()) + "," +
                    g17(r.err) + "\n";
        emit(text, out);
    }
    return 0;
}

// ---------------------------------------------------------------- period

int cmd_period(long long d, const std::string& chi_spec, double re_s, double im_s,
               double tol, const std::string& out) {
    const auto K = torlab::nfield::make_field(d);
    const auto chi = resolve_chi(K, chi_spec);
    const cplx s(re_s, im_s);
    const std::string inner = torlab::periods::periods_report_json(K, chi, {s});

    ordered_json j = config_head("period");
    j["config"]["d"] = d;
    j["config"]["chi"] = chi.name;
    j["config"]["re_s"] = re_s;
    j["config"]["im_s"] = im_s;
    j["config"]["tol"] = tol;
    j["periods"] = ordered_json::parse(inner);
    emit(j.dump(2) + "\n", out);

    const double rel = j["periods"]["rel_errors"][0].get<double>();
    if (rel > tol) {
        std::fprintf(stderr,
                     "period: direct period vs H(s, chi) L(s, chi) relative "
                     "error %.6e exceeds tol %.6e\n",
                     rel, tol);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- siegel

int cmd_siegel(long long d, int cls, double re_s, double im_s, double tol,
               const std::string& out) {
    const auto K = torlab::nfield::make_field(d);
    const auto ck = torlab::periods::siegel_identity_check(K, cls, cplx(re_s, im_s));

    ordered_json j = config_head("siegel");
    j["config"]["d"] = d;
    j["config"]["class_index"] = cls;
    j["config"]["re_s"] = re_s;
    j["config"]["im_s"] = im_s;
    j["config"]["tol"] = tol;
    j["lhs_re"] = ck.lhs.real();
    j["lhs_im"] = ck.lhs.imag();
    j["rhs_re"] = ck.rhs.real();
    j["rhs_im"] = ck.rhs.imag();
    j["rel_error"] = ck.rel_error;
    emit(j.dump(2) + "\n", out);

    if (ck.rel_error > tol) {
        std::fprintf(stderr,
                     "siegel: identity 2 Lambda(2s) E(z_A, s) = |d|^{s/2}/c_K "
                     "Sum_chi Gamma L chi failed: rel %.6e > tol %.6e\n",
                     ck.rel_error, tol);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------- maass-selberg

int cmd_maass_selberg(double re_s1, double im_s1, double re_s2, double im_s2,
                      double T, double tol, const std::string& out) {
    const torlab::special::QuadratureSpec spec{8, 0.25, 48, 1e-9};
    const auto ck = torlab::eis::maass_selberg_check(cplx(re_s1, im_s1),
                                                     cplx(re_s2, im_s2), T, spec);

    ordered_json j = config_head("maass-selberg");
    j["config"]["re_s1"] = re_s1;
    j["config"]["im_s1"] = im_s1;
    j["config"]["re_s2"] = re_s2;
    j["config"]["im_s2"] = im_s2;
    j["config"]["T"] = T;
    j["config"]["tol"] = tol;
    j["lhs_re"] = ck.lhs.real();
    j["lhs_im"] = ck.lhs.imag();
    j["rhs_re"] = ck.rhs.real();
    j["rhs_im"] = ck.rhs.imag();
    j["rel_error"] = ck.rel_error;
    j["quadrature_declared_error"] = spec.declared_error;
    emit(j.dump(2) + "\n", out);

    if (ck.rel_error > tol) {
        std::fprintf(stderr,
                     "maass-selberg: truncated inner product vs exact relation "
                     "rel %.6e > tol %.6e\n",
                     ck.rel_error, tol);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- packet

int cmd_packet(const std::string& file, long long d, const std::string& chi_spec,
               double t_max, double tol, const std::string& out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open packet file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto p = torlab::spectral::packet_from_json(buf.str());

    const auto K = torlab::nfield::make_field(d);
    const auto chi = resolve_chi(K, chi_spec);
    const auto zl = torlab::lfun::find_zeros(K, chi, t_max, 1e-10);
    const auto rep = torlab::spectral::toroidality_test(p, K, chi, zl, tol);

    ordered_json j = config_head("packet");
    j["config"]["file"] = file;
    j["config"]["d"] = d;
    j["config"]["chi"] = chi.name;
    j["config"]["t_max"] = t_max;
    j["config"]["tol"] = tol;
    j["report"] = ordered_json::parse(
        torlab::spectral::toroidality_report_json(rep, K.d, chi.name, tol));
    emit(j.dump(2) + "\n", out);

    if (!rep.methods_consistent) {
        std::fprintf(stderr,
                     "packet: closed-form and direct period routes disagree "
                     "beyond their combined error\n");
        return 1;
    }
    if (!rep.is_toroidal) {
        std::fprintf(stderr,
                     "packet: not toroidal: |period|/scale = %.6e > tol %.6e\n",
                     std::max(std::abs(rep.period_closed_form),
                              std::abs(rep.period_direct)) /
                         rep.scale,
                     tol);
        return 1;
    }
    return 0;
}

// ----------------------------------------------------------------- trace

int cmd_trace(long long d, const std::string& chi_spec, double a, double t_max,
              double tol, const std::string& out) {
    const auto K = torlab::nfield::make_field(d);
    const auto chi = resolve_chi(K, chi_spec);
    const auto zl = torlab::lfun::find_zeros(K, chi, t_max, 1e-10);
    const auto eps = torlab::spectral::epsilon_flag(K, chi);

    const double a2 = a * a;
    auto u_tilde = [a2](cplx s) { return std::exp((s - 0.5) * (s - 0.5) / a2); };
    const auto path_a = torlab::spectral::trace_formula(zl, eps.epsilon, u_tilde);

    const auto ker = torlab::eis::gaussian_pair_kernel(a);
    double path_b = (eps.epsilon == 1) ? ker.h_of_t(0.0) : 0.0;
    for (const double g : zl.ordinates) path_b += ker.h_of_t(g);
    const double rel =
        std::abs(path_a.value - cplx(path_b, 0.0)) / std::abs(path_a.value);

    ordered_json j = config_head("trace");
    j["config"]["d"] = d;
    j["config"]["chi"] = chi.name;
    j["config"]["a"] = a;
    j["config"]["t_max"] = t_max;
    j["config"]["tol"] = tol;
    j["zeros_used"] = static_cast<int>(zl.ordinates.size());
    j["epsilon"] = eps.epsilon;
    j["lambda_half_mag"] = eps.lambda_half_mag;
    j["epsilon_warning_band"] = eps.warning_band;
    j["path_eigenvalues_re"] = path_a.value.real();
    j["path_eigenvalues_im"] = path_a.value.imag();
    j["path_kernel"] = path_b;
    j["rel_difference"] = rel;
    j["tail_estimate"] = path_a.tail_estimate;
    j["tail_ok"] = path_a.tail_ok;
    emit(j.dump(2) + "\n", out);

    if (!path_a.tail_ok) {
        std::fprintf(stderr,
                     "trace: spectral tail beyond t_max estimated at %.3e; "
                     "increase --t-max or --a\n",
                     path_a.tail_estimate);
        return 1;
    }
    if (rel > tol) {
        std::fprintf(stderr,
                     "trace: eigenvalue-list path and kernel path differ by "
                     "rel %.6e > tol %.6e\n",
                     rel, tol);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, int threads, const std::string& out) {
    if (suite != "all") {
        const auto res = torlab::verify::run_suite(suite, threads);
        std::fprintf(stderr, "%s %s: %s\n", res.pass ? "[ok]  " : "[FAIL]",
                     res.name.c_str(), res.detail.c_str());
        emit(res.report_json, out);
        return res.pass ? 0 : 1;
    }
    ordered_json j;
    j["schema"] = 1;
    j["version"] = kVersion;
    auto arr = ordered_json::array();
    bool all_ok = true;
    for (const std::string& name : torlab::verify::suite_names()) {
        const auto res = torlab::verify::run_suite(name, threads);
        std::fprintf(stderr, "%s %s: %s\n", res.pass ? "[ok]  " : "[FAIL]",
                     res.name.c_str(), res.detail.c_str());
        arr.push_back(ordered_json::parse(res.report_json));
        all_ok = all_ok && res.pass;
    }
    j["suites"] = arr;
    emit(j.dump(2) + "\n", out);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "torlab: Eisenstein series, Hecke L-functions of quadratic fields, "
        "toroidal periods, and spectral verification suites"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::function<int()> action;

    // zeros
    {
        auto* c = app.add_subcommand("zeros", "scan critical-line zeros");
        auto d = std::make_shared<long long>(-4);
        auto chi = std::make_shared<std::string>("trivial");
        auto t_max = std::make_shared<double>(15.0);
        auto tol = std::make_shared<double>(-1.0);
        auto format = std::make_shared<std::string>("json");
        auto out = std::make_shared<std::string>();
        c->add_option("--d", *d, "fundamental discriminant")->required();
        c->add_option("--chi", *chi, "character: trivial | genus | genus:d1,d2");
        c->add_option("--t-max", *t_max, "scan height")->check(CLI::Range(0.5, 60.0));
        c->add_option("--tol", *tol, "bisection tolerance")
            ->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--format", *format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-10);
                return cmd_zeros(*d, *chi, *t_max, t, *format, *out);
            };
        });
    }

    // eis
    {
        auto* c = app.add_subcommand("eis", "evaluate E(z, s) on a grid");
        auto x0 = std::make_shared<double>(0.0);
        auto x1 = std::make_shared<double>(0.0);
        auto nx = std::make_shared<int>(1);
        auto y0 = std::make_shared<double>(1.0);
        auto y1 = std::make_shared<double>(1.0);
        auto ny = std::make_shared<int>(1);
        auto re_s = std::make_shared<double>(0.5);
        auto im_s = std::make_shared<double>(0.0);
        auto threads = std::make_shared<int>(1);
        auto format = std::make_shared<std::string>("csv");
        auto out = std::make_shared<std::string>();
        c->add_option("--x0", *x0, "first x");
        c->add_option("--x1", *x1, "last x");
        c->add_option("--nx", *nx, "x count")->check(CLI::Range(1, 10000));
        c->add_option("--y0", *y0, "first y (> 0)");
        c->add_option("--y1", *y1, "last y (> 0)");
        c->add_option("--ny", *ny, "y count")->check(CLI::Range(1, 10000));
        c->add_option("--re-s", *re_s, "Re s")->required();
        c->add_option("--im-s", *im_s, "Im s");
        c->add_option("--threads", *threads, "worker threads")
            ->check(CLI::Range(1, 64));
        c->add_option("--format", *format, "csv | json")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                return cmd_eis(*x0, *x1, *nx, *y0, *y1, *ny, *re_s, *im_s,
                               *threads, *format, *out);
            };
        });
    }

    // period
    {
        auto* c = app.add_subcommand(
            "period", "toroidal period vs closed form H(s, chi) L(s, chi)");
        auto d = std::make_shared<long long>(-4);
        auto chi = std::make_shared<std::string>("trivial");
        auto re_s = std::make_shared<double>(2.0);
        auto im_s = std::make_shared<double>(0.0);
        auto tol = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        c->add_option("--d", *d, "fundamental discriminant")->required();
        c->add_option("--chi", *chi, "character");
        c->add_option("--re-s", *re_s, "Re s")->required();
        c->add_option("--im-s", *im_s, "Im s");
        c->add_option("--tol", *tol, "comparison tolerance")
            ->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-6);
                return cmd_period(*d, *chi, *re_s, *im_s, t, *out);
            };
        });
    }

    // siegel
    {
        auto* c = app.add_subcommand("siegel", "Siegel identity check (d < 0)");
        auto d = std::make_shared<long long>(-4);
        auto cls = std::make_shared<int>(0);
        auto re_s = std::make_shared<double>(0.75);
        auto im_s = std::make_shared<double>(0.0);
        auto tol = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        c->add_option("--d", *d, "fundamental discriminant < 0")->required();
        c->add_option("--class", *cls, "class index");
        c->add_option("--re-s", *re_s, "Re s");
        c->add_option("--im-s", *im_s, "Im s");
        c->add_option("--tol", *tol, "tolerance")->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-6);
                return cmd_siegel(*d, *cls, *re_s, *im_s, t, *out);
            };
        });
    }

    // maass-selberg
    {
        auto* c = app.add_subcommand(
            "maass-selberg", "truncated inner product vs the exact relation");
        auto re_s1 = std::make_shared<double>(0.5);
        auto im_s1 = std::make_shared<double>(5.0);
        auto re_s2 = std::make_shared<double>(0.5);
        auto im_s2 = std::make_shared<double>(-5.0);
        auto T = std::make_shared<double>(50.0);
        auto tol = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        c->add_option("--re-s1", *re_s1, "Re s1");
        c->add_option("--im-s1", *im_s1, "Im s1");
        c->add_option("--re-s2", *re_s2, "Re s2");
        c->add_option("--im-s2", *im_s2, "Im s2");
        c->add_option("--T", *T, "truncation height")->check(CLI::Range(2.0, 1000.0));
        c->add_option("--tol", *tol, "tolerance")->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-3);
                return cmd_maass_selberg(*re_s1, *im_s1, *re_s2, *im_s2, *T, t,
                                         *out);
            };
        });
    }

    // packet
    {
        auto* c = app.add_subcommand("packet", "toroidality test of a wave packet");
        auto file = std::make_shared<std::string>();
        auto d = std::make_shared<long long>(-4);
        auto chi = std::make_shared<std::string>("trivial");
        auto t_max = std::make_shared<double>(15.0);
        auto tol = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        c->add_option("--file", *file, "packet JSON file")->required();
        c->add_option("--d", *d, "fundamental discriminant")->required();
        c->add_option("--chi", *chi, "character");
        c->add_option("--t-max", *t_max, "zero-scan height")
            ->check(CLI::Range(0.5, 60.0));
        c->add_option("--tol", *tol, "toroidality tolerance")
            ->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-6);
                return cmd_packet(*file, *d, *chi, *t_max, t, *out);
            };
        });
    }

    // trace
    {
        auto* c = app.add_subcommand(
            "trace", "trace formula: eigenvalue path vs kernel path");
        auto d = std::make_shared<long long>(-4);
        auto chi = std::make_shared<std::string>("trivial");
        auto a = std::make_shared<double>(8.0);
        auto t_max = std::make_shared<double>(40.0);
        auto tol = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        c->add_option("--d", *d, "fundamental discriminant");
        c->add_option("--chi", *chi, "character");
        c->add_option("--a", *a, "Gaussian width of the test function")
            ->check(CLI::Range(2.0, 32.0));
        c->add_option("--t-max", *t_max, "zero-scan height")
            ->check(CLI::Range(0.5, 60.0));
        c->add_option("--tol", *tol, "path-agreement tolerance")
            ->check(CLI::Range(1e-12, 1e-3));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] {
                const double t = (*tol > 0.0) ? *tol : default_tol(1e-6);
                return cmd_trace(*d, *chi, *a, *t_max, t, *out);
            };
        });
    }

    // verify
    {
        auto* c = app.add_subcommand("verify", "run an acceptance suite");
        auto suite = std::make_shared<std::string>();
        auto threads = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        std::vector<std::string> allowed = torlab::verify::suite_names();
        allowed.push_back("all");
        c->add_option("--suite", *suite, "suite name or 'all'")
            ->required()
            ->check(CLI::IsMember(allowed));
        c->add_option("--threads", *threads, "worker threads")
            ->check(CLI::Range(1, 64));
        c->add_option("--out", *out, "output path (default stdout)");
        c->callback([=, &action] {
            action = [=] { return cmd_verify(*suite, *threads, *out); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const torlab::special::PrecisionError& e) {
        std::fprintf(stderr, "precision window exceeded: %s\n", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
}
