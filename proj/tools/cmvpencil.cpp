// cmvpencil: coefficient tables, pencil spectra and verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cmvp/cmv.hpp"
#include "cmvp/errors.hpp"
#include "cmvp/recurrences.hpp"
#include "cmvp/verify.hpp"
#include "cmvp/weyl.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNonConvergence = 3 };

struct Common {
    std::string format = "csv";
    std::string output;
    bool reproducible = false;
    double tol = 1e-10;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

json metadata(const std::string& command) {
    return json{{"command", command}, {"version", "0.1.0"}, {"generated_at", timestamp()}};
}

/// Writes to --output, else $CMVPENCIL_OUTPUT_DIR/<command>.<ext>, else stdout.
/// Returns true when the payload went to a file.
bool emit(const Common& c, const std::string& command, const std::string& payload) {
    std::string path = c.output;
    if (path.empty()) {
        if (const char* dir = std::getenv("CMVPENCIL_OUTPUT_DIR"); dir && *dir) {
            path = (std::filesystem::path(dir) / (command + "." + c.format)).string();
        }
    }
    if (path.empty()) {
        std::cout << payload;
        return false;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << payload;
    if (!out) throw std::runtime_error("write failed for " + path);
    return true;
}

std::string csv_preamble(const Common& c, const std::string& command) {
    if (c.reproducible) return {};
    return "# " + command + " generated_at=" + timestamp() + "\n";
}

int run_recurrence(const Common& c, double xi, double eta, double lambda, long n) {
    if (n < 1) throw cmvp::DomainError("--n must be >= 1");
    const auto a = cmvp::jacobi_opuc_reflections(xi, eta);
    const auto rec = cmvp::pencil_recurrence(a, lambda);
    std::ostringstream out;
    if (c.format == "csv") {
        out << csv_preamble(c, "recurrence") << "n,a_n,b_n,u_n\n";
        for (long k = 0; k < n; ++k) {
            out << k << ',' << num(a(k)) << ',' << num(rec.b(k)) << ',' << num(rec.u(k)) << '\n';
        }
    } else {
        json j;
        if (!c.reproducible) j["metadata"] = metadata("recurrence");
        j["parameters"] = {{"xi", xi}, {"eta", eta}, {"lambda", lambda}, {"n", n}};
        json rows = json::array();
        for (long k = 0; k < n; ++k) rows.push_back({{"n", k}, {"a_n", a(k)}, {"b_n", rec.b(k)}, {"u_n", rec.u(k)}});
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    }
    emit(c, "recurrence", out.str());
    return kPass;
}

struct SpectrumRow {
    double lambda;
    std::array<cmvp::Interval, 2> bands;
    std::vector<double> eigenvalues;
    std::vector<bool> inside;
    long outliers = 0;
};

SpectrumRow spectrum_at(const cmvp::ReflectionSequence<double>& a, double lambda, long dim) {
    SpectrumRow row;
    row.lambda = lambda;
    row.bands = cmvp::essential_spectrum_periodic(lambda);
    row.eigenvalues = cmvp::tridiagonal_eigenvalues(cmvp::build_K(a, lambda, cmvp::TruncationSpec::from_dim(dim)));
    for (double e : row.eigenvalues) {
        bool in = false;
        for (const auto& b : row.bands) in = in || (e >= b.lo - 0.05 && e <= b.hi + 0.05);
        row.inside.push_back(in);
        if (!in) ++row.outliers;
    }
    return row;
}

int run_spectrum(const Common& c, std::vector<double> lambdas, const std::string& sweep, long dim, double xi,
                 double eta) {
    if (!sweep.empty()) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(sweep);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || hi < lo) {
            throw cmvp::DomainError("--sweep expects start:stop:step with step > 0");
        }
        for (long k = 0; lo + k * step <= hi + 1e-12 * std::max(1.0, std::abs(hi)); ++k) lambdas.push_back(lo + k * step);
    }
    if (lambdas.empty()) throw cmvp::DomainError("spectrum needs --lambda or --sweep");
    for (double l : lambdas) {
        if (!(l > 0)) throw cmvp::DomainError("spectrum needs lambda > 0");
    }
    cmvp::TruncationSpec::from_dim(dim);
    const auto a = cmvp::jacobi_opuc_reflections(xi, eta);

    // Independent lambda values run concurrently; assembly below is ordered.
    std::vector<std::future<SpectrumRow>> jobs;
    for (double l : lambdas) jobs.push_back(std::async(std::launch::async, spectrum_at, a, l, dim));
    std::vector<SpectrumRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());

    std::ostringstream out;
    if (c.format == "csv") {
        out << csv_preamble(c, "spectrum") << "lambda,index,eigenvalue,in_band,band1_lo,band1_hi,band2_lo,band2_hi\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
                out << num(r.lambda) << ',' << i << ',' << num(r.eigenvalues[i]) << ',' << (r.inside[i] ? 1 : 0) << ','
                    << num(r.bands[0].lo) << ',' << num(r.bands[0].hi) << ',' << num(r.bands[1].lo) << ','
                    << num(r.bands[1].hi) << '\n';
            }
        }
    } else {
        json j;
        if (!c.reproducible) j["metadata"] = metadata("spectrum");
        j["parameters"] = {{"xi", xi}, {"eta", eta}, {"dim", dim}, {"inflation", 0.05}};
        json arr = json::array();
        for (const auto& r : rows) {
            json ev = json::array();
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
                ev.push_back({{"value", r.eigenvalues[i]}, {"in_band", static_cast<bool>(r.inside[i])}});
            }
            arr.push_back({{"lambda", r.lambda},
                           {"intervals", {{r.bands[0].lo, r.bands[0].hi}, {r.bands[1].lo, r.bands[1].hi}}},
                           {"outliers", r.outliers},
                           {"eigenvalues", ev}});
        }
        j["results"] = arr;
        out << j.dump(2) << '\n';
    }
    emit(c, "spectrum", out.str());
    return kPass;
}

int run_verify(const Common& c, const std::string& suite, const cmvp::SuiteParams& params) {
    const auto reports = cmvp::run_suite(suite, params);
    bool pass = true, nonconv = false;
    std::ostringstream human;
    for (const auto& r : reports) {
        pass = pass && r.passed();
        nonconv = nonconv || r.nonconvergence;
        human << "[" << (r.passed() ? "PASS" : "FAIL") << "] " << r.suite;
        if (!c.reproducible) human << " (" << num(r.seconds) << " s)";
        human << '\n';
        for (const auto& k : r.checks) {
            const char* tag = k.informational ? "info" : (k.passed ? "ok" : "FAIL");
            human << "  " << tag << "  " << k.name << ": " << num(k.value) << " (tol " << num(k.tolerance) << ")";
            if (!k.detail.empty()) human << "  " << k.detail;
            human << '\n';
        }
    }

    std::ostringstream out;
    if (c.format == "csv") {
        out << csv_preamble(c, "verify") << "suite,check,value,tolerance,passed,informational\n";
        for (const auto& r : reports) {
            for (const auto& k : r.checks) {
                out << r.suite << ",\"" << k.name << "\"," << num(k.value) << ',' << num(k.tolerance) << ','
                    << (k.passed ? 1 : 0) << ',' << (k.informational ? 1 : 0) << '\n';
            }
        }
    } else {
        json j;
        if (!c.reproducible) j["metadata"] = metadata("verify");
        json arr = json::array();
        for (const auto& r : reports) {
            json checks = json::array();
            for (const auto& k : r.checks) {
                checks.push_back({{"name", k.name},
                                  {"value", std::isfinite(k.value) ? json(k.value) : json(nullptr)},
                                  {"tolerance", k.tolerance},
                                  {"passed", k.passed},
                                  {"informational", k.informational},
                                  {"detail", k.detail}});
            }
            json s{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}};
            if (!c.reproducible) s["seconds"] = r.seconds;
            arr.push_back(s);
        }
        j["passed"] = pass;
        j["suites"] = arr;
        out << j.dump(2) << '\n';
    }
    const bool to_file = emit(c, "verify", out.str());
    (to_file ? std::cout : std::cerr) << human.str();
    if (nonconv) return kNonConvergence;
    return pass ? kPass : kFail;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", c.output, "Output file (default: $CMVPENCIL_OUTPUT_DIR/<command>.<format> or stdout)");
    sub->add_flag("--reproducible", c.reproducible, "Omit timestamps and timings from the output");
    sub->add_option("--tol", c.tol, "Tolerance override, in [1e-13, 1e-3]")->check(CLI::Range(1e-13, 1e-3));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CMV pencil K(lambda) = L + lambda M: recurrences, spectra and verification"};
    app.require_subcommand(1);
    Common common;

    double xi = -0.5, eta = -0.5, lambda = 1.0;
    long n = 10;
    auto* rec = app.add_subcommand("recurrence", "Table of a_n, b_n(lambda), u_n(lambda) for Jacobi reflections");
    rec->add_option("--xi", xi, "Jacobi parameter xi > -1");
    rec->add_option("--eta", eta, "Jacobi parameter eta > -1");
    rec->add_option("--lambda", lambda, "Pencil parameter");
    rec->add_option("--n", n, "Number of rows");
    add_common(rec, common);

    std::vector<double> lambdas;
    std::string sweep;
    long dim = 200;
    double sxi = -0.5, seta = -0.5;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of truncated K(lambda) with band membership flags");
    spectrum_cmd->add_option("--lambda", lambdas, "Pencil parameter (repeatable)");
    spectrum_cmd->add_option("--sweep", sweep, "Lambda sweep start:stop:step");
    spectrum_cmd->add_option("--dim", dim, "Even truncation dimension");
    spectrum_cmd->add_option("--xi", sxi, "Jacobi parameter xi (default -0.5: a = 0)");
    spectrum_cmd->add_option("--eta", seta, "Jacobi parameter eta (default -0.5: a = 0)");
    add_common(spectrum_cmd, common);

    std::string suite = "all";
    cmvp::SuiteParams params;
    double v_xi = 0, v_eta = 0, v_lambda = 0, v_alpha = 0, v_beta = 0, v_c = 0;
    long v_dim = 0;
    std::uint64_t seed = params.seed;
    auto* ver = app.add_subcommand("verify", "Run verification suites");
    std::vector<std::string> choices = cmvp::suite_names();
    choices.push_back("all");
    ver->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(choices));
    auto* o_xi = ver->add_option("--xi", v_xi);
    auto* o_eta = ver->add_option("--eta", v_eta);
    auto* o_lambda = ver->add_option("--lambda", v_lambda);
    auto* o_alpha = ver->add_option("--alpha", v_alpha);
    auto* o_beta = ver->add_option("--beta", v_beta);
    auto* o_c = ver->add_option("--c", v_c);
    auto* o_dim = ver->add_option("--dim", v_dim);
    ver->add_option("--seed", seed, "Seed for randomized checks");
    add_common(ver, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (rec->parsed()) return run_recurrence(common, xi, eta, lambda, n);
        if (spectrum_cmd->parsed()) return run_spectrum(common, lambdas, sweep, dim, sxi, seta);
        if (*o_xi) params.xi = v_xi;
        if (*o_eta) params.eta = v_eta;
        if (*o_lambda) params.lambda = v_lambda;
        if (*o_alpha) params.alpha = v_alpha;
        if (*o_beta) params.beta = v_beta;
        if (*o_c) params.c = v_c;
        if (*o_dim) params.dim = v_dim;
        if (ver->get_option("--tol")->count() > 0) params.tol = common.tol;
        params.seed = seed;
        return run_verify(common, suite, params);
    } catch (const cmvp::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const cmvp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
