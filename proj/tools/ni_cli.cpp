// Command-line front end: tables, kernel evaluations, spectra and the
// verification-suite runner.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilie/coherent.hpp"
#include "nilie/lambda_rep.hpp"
#include "nilie/lie_core.hpp"
#include "nilie/reduction.hpp"
#include "nilie/verify.hpp"
#include "nilie/wigner.hpp"

namespace {

using namespace nilie;

cplx parse_complex(const std::string& s) {
    double re = 0.0, im = 0.0;
    char extra = 0;
    const int n = std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &extra);
    if (n == 1) return cplx(re, 0.0);
    if (n == 2) return cplx(re, im);
    throw CLI::ValidationError("expected a complex number as re[,im]: " + s);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// {"phi": ..., "theta": ..., "psi": ...} in radians
GroupElement parse_element(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    return GroupElement{doc.at("phi").get<double>(), doc.at("theta").get<double>(),
                        doc.at("psi").get<double>()};
}

int cmd_validate(const std::string& input, const std::string& out) {
    const auto sc = StructureConstants::from_json(read_file(input));
    const auto v = validate_structure(sc);
    nlohmann::json doc;
    doc["dim"] = sc.dim;
    doc["antisymmetry_ok"] = v.antisymmetry_ok;
    doc["antisymmetry_residual"] = v.antisymmetry_residual;
    doc["jacobi_ok"] = v.jacobi_ok;
    doc["jacobi_residual"] = v.jacobi_residual;
    doc["pass"] = v.pass();
    emit(out, doc.dump(2) + "\n");
    return v.pass() ? 0 : 1;
}

int cmd_wigner_table(int j, int grid, const std::string& at, const std::string& out) {
    std::ostringstream csv;
    csv << "j,m,n,phi,theta,psi,ReD,ImD\n";
    const auto row = [&](int m, int n, const GroupElement& g) {
        const cplx D = wigner_D(WignerIndex(j, m, n), g);
        csv << j << ',' << m << ',' << n << ',' << fmt(g.phi) << ',' << fmt(g.theta) << ','
            << fmt(g.psi) << ',' << fmt(D.real()) << ',' << fmt(D.imag()) << '\n';
    };
    for (int m = -j; m <= j; ++m)
        for (int n = -j; n <= j; ++n) {
            if (!at.empty()) {
                row(m, n, parse_element(at));
                continue;
            }
            for (int a = 0; a < grid; ++a)
                for (int b = 0; b < grid; ++b)
                    for (int c = 0; c < grid; ++c)
                        row(m, n, GroupElement{two_pi * a / grid, pi * (b + 0.5) / grid,
                                               two_pi * c / grid});
        }
    emit(out, csv.str());
    return 0;
}

int cmd_harmonics_table(int j, int grid, const std::string& out) {
    std::ostringstream csv;
    csv << "j,m,phi,theta,ReY,ImY\n";
    for (int m = -j; m <= j; ++m)
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
                const SpherePoint x{two_pi * a / grid, pi * (b + 0.5) / grid};
                const cplx Y = spherical_Y(j, m, x);
                csv << j << ',' << m << ',' << fmt(x.phi) << ',' << fmt(x.theta) << ','
                    << fmt(Y.real()) << ',' << fmt(Y.imag()) << '\n';
            }
    emit(out, csv.str());
    return 0;
}

int cmd_kernel(int j, int grid, cplx q, cplx qb, const std::string& at, const std::string& out) {
    std::ostringstream csv;
    csv << "j,Re_q,Im_q,Re_qb,Im_qb,phi,theta,psi,ReD,ImD\n";
    const auto row = [&](const GroupElement& g) {
        const cplx D = kernel_D(q, qb, g, j);
        csv << j << ',' << fmt(q.real()) << ',' << fmt(q.imag()) << ',' << fmt(qb.real()) << ','
            << fmt(qb.imag()) << ',' << fmt(g.phi) << ',' << fmt(g.theta) << ',' << fmt(g.psi)
            << ',' << fmt(D.real()) << ',' << fmt(D.imag()) << '\n';
    };
    if (!at.empty()) {
        row(parse_element(at));
    } else {
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b)
                for (int c = 0; c < grid; ++c)
                    row(GroupElement{two_pi * a / grid, pi * (b + 0.5) / grid, two_pi * c / grid});
    }
    emit(out, csv.str());
    return 0;
}

int cmd_cs_overlap(int j, std::optional<cplx> zeta_opt, std::optional<cplx> q_opt,
                   const std::string& out) {
    nlohmann::json doc;
    doc["j"] = j;
    cplx zeta;
    if (!q_opt && !zeta_opt) throw CLI::ValidationError("cs-overlap requires --zeta or --q");
    if (q_opt)
        zeta = cplx(0, -1) * std::tan(*q_opt / 2.0);
    else
        zeta = *zeta_opt;
    if (std::abs(1.0 - zeta * zeta) < 1e-12) {
        // zeta^2 = 1 is the image of the q-chart infinity: no q, no bridge factor
        doc["q"] = nullptr;
        doc["scale"] = nullptr;
    } else {
        const cplx q = q_opt ? *q_opt : 2.0 * std::atan(cplx(0, 1) * zeta);
        doc["q"] = {q.real(), q.imag()};
        const NiToCs n2c = ni_to_cs(NIStateLabel(j, q));
        doc["scale"] = {n2c.scale.real(), n2c.scale.imag()};
    }
    doc["zeta"] = {zeta.real(), zeta.imag()};
    auto u = cs_coeffs(CSLabel(j, zeta));
    auto arr = nlohmann::json::array();
    for (int m = -j; m <= j; ++m) arr.push_back({u[m + j].real(), u[m + j].imag()});
    doc["u"] = arr;
    emit(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_spectrum(int j, const std::string& input, const std::string& out) {
    HamiltonianSpec spec = HamiltonianSpec::symmetric_top(1.0, 2.0);
    if (!input.empty()) {
        const auto doc = nlohmann::json::parse(read_file(input));
        spec = HamiltonianSpec::from_json(read_file(input));
        if (doc.contains("j")) j = doc.at("j").get<int>();
    }
    const auto red = reduced_spectrum(spec, OrbitLabel(j));
    const auto ora = wigner_basis_spectrum(spec, j);
    std::vector<double> expect;
    for (const auto& s : red.solutions)
        for (int k = 0; k < 2 * j + 1; ++k) expect.push_back(s.energy);
    std::sort(expect.begin(), expect.end());
    double oracle_residual = ora.max_imag;
    for (std::size_t k = 0; k < expect.size(); ++k)
        oracle_residual = std::max(oracle_residual, std::abs(expect[k] - ora.energies[k]));

    nlohmann::json doc;
    doc["j"] = j;
    doc["cAB"] = nlohmann::json::parse(spec.to_json())["cAB"];
    doc["cA"] = nlohmann::json::parse(spec.to_json())["cA"];
    auto energies = nlohmann::json::array();
    for (const auto& s : red.solutions) energies.push_back(s.energy);
    doc["energies"] = energies;
    doc["degeneracy_check"] = oracle_residual <= 1e-6;
    doc["oracle_residual"] = oracle_residual;
    doc["hermiticity_defect"] = red.hermiticity_defect;
    emit(out, doc.dump(2) + "\n");
    return oracle_residual <= 1e-6 ? 0 : 1;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opts, bool timings,
               const std::string& out) {
    const auto reports = run_suite(suite, opts);
    emit(out, report_to_json(suite, opts, reports, timings));
    if (!out.empty() || true) {
        // console summary (stderr keeps --out piping clean)
        for (const auto& r : reports)
            std::fprintf(stderr, "[%s] %-40s residual %.3e  tol %.3e  (%.0f ms)\n",
                         r.pass ? "PASS" : "FAIL", r.check.c_str(), r.residual, r.tolerance,
                         r.runtime_ms);
    }
    return all_pass(reports) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-commutative harmonic analysis on the rotation group"};
    app.require_subcommand(1);

    std::string out_path, input_path, suite = "all";
    int j = 1, grid = 4;
    std::string q_str, qb_str, zeta_str, at_str;
    VerifyOptions vopts;
    bool timings = false;

    auto* validate = app.add_subcommand("validate", "check structure constants from JSON");
    validate->add_option("--input", input_path, "structure-constants JSON")->required();
    validate->add_option("--out", out_path, "output path (default stdout)");

    auto* wig = app.add_subcommand("wigner-table", "CSV table of Wigner D values");
    wig->add_option("--j", j, "weight")->check(CLI::PositiveNumber);
    wig->add_option("--grid", grid, "nodes per coordinate")->check(CLI::PositiveNumber);
    wig->add_option("--at", at_str, "single element as {\"phi\":..,\"theta\":..,\"psi\":..}");
    wig->add_option("--out", out_path, "output path");

    auto* harm = app.add_subcommand("harmonics-table", "CSV table of spherical harmonics");
    harm->add_option("--j", j, "weight")->check(CLI::PositiveNumber);
    harm->add_option("--grid", grid, "nodes per coordinate")->check(CLI::PositiveNumber);
    harm->add_option("--out", out_path, "output path");

    auto* ker = app.add_subcommand("kernel", "CSV table of representation-kernel values");
    ker->add_option("--j", j, "weight")->check(CLI::PositiveNumber);
    ker->add_option("--grid", grid, "nodes per coordinate")->check(CLI::PositiveNumber);
    ker->add_option("--q", q_str, "q as re[,im]")->required();
    ker->add_option("--qbar", qb_str, "qbar' as re[,im]")->required();
    ker->add_option("--at", at_str, "single element as {\"phi\":..,\"theta\":..,\"psi\":..}");
    ker->add_option("--out", out_path, "output path");

    auto* cso = app.add_subcommand("cs-overlap", "coherent-state coefficients and bridge scale");
    cso->add_option("--j", j, "weight")->check(CLI::PositiveNumber);
    cso->add_option("--zeta", zeta_str, "zeta as re[,im]");
    cso->add_option("--q", q_str, "q as re[,im]");
    cso->add_option("--out", out_path, "output path");

    auto* spec = app.add_subcommand("spectrum", "reduced spectrum with oracle cross-check");
    spec->add_option("--j", j, "weight")->check(CLI::PositiveNumber);
    spec->add_option("--input", input_path, "Hamiltonian JSON {cAB, cA, j}");
    spec->add_option("--out", out_path, "output path");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "lie|geometry|lambda|wigner|bridge|reduction|all")
        ->check(CLI::IsMember(nilie::verify_suites()));
    ver->add_option("--seed", vopts.seed, "RNG seed recorded in the report");
    ver->add_option("--jmax", vopts.jmax, "largest weight exercised where adjustable");
    ver->add_option("--grid", vopts.grid, "base quadrature size where adjustable");
    ver->add_option("--tol-scale", vopts.tol_scale, "multiply all tolerances");
    ver->add_flag("--timings", timings, "include runtime_ms in the JSON report");
    ver->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(input_path, out_path);
        if (*wig) return cmd_wigner_table(j, grid, at_str, out_path);
        if (*harm) return cmd_harmonics_table(j, grid, out_path);
        if (*ker)
            return cmd_kernel(j, grid, parse_complex(q_str), parse_complex(qb_str), at_str,
                              out_path);
        if (*cso) {
            std::optional<nilie::cplx> z, q;
            if (!zeta_str.empty()) z = parse_complex(zeta_str);
            if (!q_str.empty()) q = parse_complex(q_str);
            return cmd_cs_overlap(j, z, q, out_path);
        }
        if (*spec) return cmd_spectrum(j, input_path, out_path);
        if (*ver) return cmd_verify(suite, vopts, timings, out_path);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
