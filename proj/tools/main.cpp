// Command-line front end: exact Siegel series computations from matrices or
// EGK data, plus the brute-force local-density verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "siegelkit/io.hpp"
#include "siegelkit/selftest.hpp"

using namespace siegelkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitResource = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

std::optional<DyadicCert> make_cert(const std::string& gk_csv, const std::string& sigma_csv) {
    if (gk_csv.empty() && sigma_csv.empty()) return std::nullopt;
    if (gk_csv.empty() || sigma_csv.empty())
        throw std::invalid_argument("--gk and --sigma must be given together");
    GKData gk{parse_longs(gk_csv)};
    std::vector<int> img;
    for (long v : parse_longs(sigma_csv)) img.push_back(static_cast<int>(v));
    return DyadicCert{gk, Involution(img)};
}

CountCaps caps_from_env(int threads) {
    CountCaps caps;
    caps.threads = threads;
    if (const char* env = std::getenv("SIEGELKIT_MAX_STATES")) {
        const double v = std::atof(env);
        if (v > 0) {
            caps.max_states = v;
            caps.max_tuples = v;
        }
    }
    return caps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegelkit: exact Siegel series via Gross-Keating data, with a counting oracle"};
    app.require_subcommand(1);

    long prime = 0;
    std::string matrix_file, egk_file, naive_file, gk_csv, sigma_csv;
    long qval = 0, max_k = -1;
    int threads = 1;
    bool as_json = false;

    auto* inv = app.add_subcommand("invariants", "print D_B, ord(D_B), xi_B, eps_B, eta_B, e_B");
    inv->add_option("--prime", prime)->required();
    inv->add_option("--matrix", matrix_file)->required();

    auto* egk_cmd = app.add_subcommand("egk", "print the EGK datum of a matrix");
    egk_cmd->add_option("--prime", prime)->required();
    egk_cmd->add_option("--matrix", matrix_file)->required();
    egk_cmd->add_option("--gk", gk_csv, "GK exponents a_1,a_2,... (certificate, p = 2)");
    egk_cmd->add_option("--sigma", sigma_csv, "involution image i_1,i_2,... (certificate, p = 2)");

    auto* siegel_cmd = app.add_subcommand("siegel", "print F~ and F");
    siegel_cmd->add_option("--prime", prime);
    siegel_cmd->add_option("--matrix", matrix_file);
    siegel_cmd->add_option("--egk", egk_file, "EGK datum JSON file (with --q)");
    siegel_cmd->add_option("--q", qval, "residue field size for --egk input");
    siegel_cmd->add_option("--gk", gk_csv);
    siegel_cmd->add_option("--sigma", sigma_csv);
    siegel_cmd->add_flag("--json", as_json, "emit the JSON record instead of text");

    auto* fpoly_cmd = app.add_subcommand("fpoly", "print the symbolic polynomial of a naive datum");
    fpoly_cmd->add_option("--naive-egk", naive_file)->required();

    auto* verify_cmd = app.add_subcommand("verify", "compare the formula against the counting oracle");
    verify_cmd->add_option("--prime", prime)->required();
    verify_cmd->add_option("--matrix", matrix_file)->required();
    verify_cmd->add_option("--gk", gk_csv);
    verify_cmd->add_option("--sigma", sigma_csv);
    verify_cmd->add_option("--max-k", max_k, "largest hyperbolic rank the oracle may use");
    verify_cmd->add_option("--threads", threads, "oracle worker threads (deterministic result)");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the embedded property suite");
    (void)selftest_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) {
            PrimeContext ctx(prime);
            HalfIntMat b = matrix_from_json(slurp(matrix_file));
            validate(b, ctx);
            Rational d = d_b(b, ctx);
            std::cout << "D_B = " << rat_to_string(d) << "\n";
            std::cout << "ord(D_B) = " << ordp(ctx, d) << "\n";
            std::cout << "xi_B = " << xi_b(b, ctx) << "\n";
            std::cout << "eps_B = " << eps_b(b, ctx) << "\n";
            std::cout << "eta_B = " << eta_b(b, ctx) << "\n";
            std::cout << "e_B = " << e_b(b, ctx) << "\n";
            return kExitOk;
        }
        if (egk_cmd->parsed()) {
            PrimeContext ctx(prime);
            HalfIntMat b = matrix_from_json(slurp(matrix_file));
            auto cert = make_cert(gk_csv, sigma_csv);
            EGKDatum g;
            if (ctx.dyadic()) {
                if (!cert) throw ValidationError("p = 2 needs --gk and --sigma");
                g = egk_from_reduced(b, cert->gk, cert->sigma, ctx);
            } else {
                validate(b, ctx);
                g = egk_odd(b, ctx);
            }
            std::cout << egk_to_json(g) << "\n";
            return kExitOk;
        }
        if (siegel_cmd->parsed()) {
            SiegelResult r;
            if (!egk_file.empty()) {
                if (qval < 2) throw std::invalid_argument("--egk needs --q");
                r = f_tilde_from_egk(egk_from_json(slurp(egk_file)), qval);
            } else {
                if (matrix_file.empty() || prime == 0)
                    throw std::invalid_argument("siegel needs --matrix with --prime, or --egk with --q");
                PrimeContext ctx(prime);
                HalfIntMat b = matrix_from_json(slurp(matrix_file));
                r = f_tilde_matrix(b, ctx, make_cert(gk_csv, sigma_csv));
            }
            if (as_json) {
                std::cout << siegel_to_json(r) << "\n";
            } else {
                std::cout << "F~ = " << render(r.f_tilde) << "\n";
                std::cout << "F = " << render_poly(r.f_poly) << "\n";
            }
            return kExitOk;
        }
        if (fpoly_cmd->parsed()) {
            NaiveEGK h = naive_from_json(slurp(naive_file));
            std::cout << render(f_recursive(h)) << "\n";
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            PrimeContext ctx(prime);
            HalfIntMat b = matrix_from_json(slurp(matrix_file));
            DensityReport rep = verify(b, ctx, make_cert(gk_csv, sigma_csv),
                                       caps_from_env(threads), max_k);
            std::cout << report_to_json(rep) << "\n";
            return rep.match ? kExitOk : kExitMismatch;
        }
        if (selftest_cmd->parsed()) {
            return selftest(std::cout) ? kExitOk : kExitMismatch;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
