// mucert: certificate-emitting checkers for mu-invariant vanishing of fine
// Selmer groups: elliptic-curve criteria, newform obstruction bounds,
// dihedral criteria, Iwasawa-module invariants.
//
// Exit status: 0 certified/complete, 1 inconclusive, 2 input error,
// 3 budget error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "mucert/errors.hpp"
#include "mucert/io.hpp"

using namespace mucert;

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudgetError = 3;

unsigned scan_threads() {
    const char* env = std::getenv("MU_CERT_THREADS");
    if (!env)
        return 1;
    long v = std::atol(env);
    if (v < 1)
        return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    return static_cast<unsigned>(std::min<long>(v, hw));
}

void maybe_write(const std::string& out_path, const std::string& contents) {
    if (!out_path.empty())
        write_file(out_path, contents);
}

void write_error_report(const std::string& out_path, const std::string& kind,
                        const std::string& message, bool with_timestamp) {
    if (out_path.empty())
        return;
    nlohmann::ordered_json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    j["toolkit_version"] = kToolkitVersion;
    (void)with_timestamp;
    try {
        write_file(out_path, j.dump(2) + "\n");
    } catch (...) {
        // the primary error is reported on stderr regardless
    }
}

int emit_certificate(const Certificate& cert, const std::string& out_path, bool no_timestamp) {
    auto j = certificate_to_json(cert, !no_timestamp);
    std::cout << "subject: " << cert.subject << "\n";
    std::cout << "verdict: " << to_string(cert.verdict) << "\n";
    for (const auto& c : cert.conditions)
        std::cout << "  [" << to_string(c.status) << "] " << c.name << ": " << c.evidence << "\n";
    for (const auto& n : cert.interpretation_notes)
        std::cout << "  note: " << n << "\n";
    maybe_write(out_path, j.dump(2) + "\n");
    return cert.verdict == Verdict::CertifiedMuZero ? kExitCertified : kExitInconclusive;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mu-invariant vanishing certificates for fine Selmer groups"};
    app.require_subcommand(1);

    std::string curve_path, form_path, scenario_path, matrix_path, out_path, preset, kind;
    std::vector<std::string> sibling_paths;
    std::vector<u64> s_extra;
    u64 p = 0, bound = 0, D = 0, n = 0, sturm = 0, irr_bound = 1000;
    i64 a_min = 0, a_max = 0;
    unsigned p_prec = 12, t_prec = 24;
    unsigned h0 = 0, h2 = 0, dim_minus = 0;
    bool no_timestamp = false;

    auto* certify_ec = app.add_subcommand("certify-ec", "elliptic-curve mu = 0 certificate");
    certify_ec->add_option("--curve", curve_path, "curve record JSON")->required();
    certify_ec->add_option("--p", p, "odd prime of good reduction")->required();
    certify_ec->add_option("--irr-bound", irr_bound, "Frobenius witness search bound");
    certify_ec->add_option("--out", out_path, "certificate output path");
    certify_ec->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    auto* weston = app.add_subcommand("weston-bound", "obstruction-prime bound for a newform");
    weston->add_option("--form", form_path, "newform record JSON")->required();
    weston->add_option("--siblings", sibling_paths, "sibling newform JSONs");
    weston->add_option("--sturm", sturm, "Sturm bound override");
    weston->add_option("--out", out_path, "report output path");
    weston->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    auto* ss_scan = app.add_subcommand("supersingular-scan", "a_ell = 0 primes up to a bound");
    ss_scan->add_option("--curve", curve_path, "curve record JSON")->required();
    ss_scan->add_option("--bound", bound, "scan bound (<= 2e6)")->required();
    ss_scan->add_option("--out", out_path, "list output path");
    ss_scan->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    auto* dscan = app.add_subcommand("dihedral-scan", "auxiliary-prime density experiment");
    dscan->add_option("--D", D, "field parameter: K = Q(sqrt(-D))")->required();
    dscan->add_option("--p", p, "odd prime (eta = mod-p cyclotomic)")->required();
    dscan->add_option("--n", n, "degree of the unramified cyclic subextension")->required();
    dscan->add_option("--bound", bound, "prime bound (<= 2e6)")->required();
    dscan->add_option("--out", out_path, "CSV output path (per-prime rows)");

    auto* dcert = app.add_subcommand("dihedral-certify", "dihedral mu = 0 certificate");
    dcert->add_option("--scenario", scenario_path, "scenario JSON (D, p, n, S_extra, oracle_flags)")
        ->required();
    dcert->add_option("--s-extra", s_extra, "override auxiliary prime set");
    dcert->add_option("--out", out_path, "certificate output path");
    dcert->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    auto* lambda = app.add_subcommand("lambda-invariants", "mu/lambda of a presented module");
    lambda->add_option("--matrix", matrix_path, "presentation matrix JSON")->required();
    lambda->add_option("--p", p, "odd prime of the coefficient ring")->required();
    lambda->add_option("--p-prec", p_prec, "coefficient precision (mod p^N)");
    lambda->add_option("--t-prec", t_prec, "series precision (mod T^M)");
    lambda->add_option("--out", out_path, "output path");
    lambda->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    auto* euler = app.add_subcommand("euler-char", "H^1 dimension bookkeeping");
    euler->add_option("--preset", preset, "odd-adjoint | even-adjoint");
    euler->add_option("--h0", h0, "dim H^0");
    euler->add_option("--h2", h2, "dim H^2");
    euler->add_option("--dim-minus", dim_minus, "dimension of the minus eigenspace");
    euler->add_option("--out", out_path, "output path");

    auto* s3 = app.add_subcommand("s3-scan", "S3 family scan (27+4a^3 / 4a^6-27)");
    s3->add_option("--kind", kind, "odd | even")->required();
    s3->add_option("--a-min", a_min, "range start")->required();
    s3->add_option("--a-max", a_max, "range end")->required();
    s3->add_option("--out", out_path, "output path");

    auto* congr = app.add_subcommand("congruence-primes", "candidate congruence primes");
    congr->add_option("--form", form_path, "newform record JSON")->required();
    congr->add_option("--siblings", sibling_paths, "exactly one sibling newform JSON")
        ->required();
    congr->add_option("--sturm", sturm, "Sturm bound");
    congr->add_option("--out", out_path, "output path");
    congr->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (certify_ec->parsed()) {
            CurveRecord curve = load_curve(curve_path);
            Certificate cert = certify_elliptic_mu_zero(curve, p, irr_bound);
            return emit_certificate(cert, out_path, no_timestamp);
        }

        if (weston->parsed()) {
            NewformRecord form = load_newform(form_path);
            std::vector<NewformRecord> siblings;
            for (const auto& sp : sibling_paths)
                siblings.push_back(load_newform(sp));
            ObstructionReport rep = weston_bound(form, siblings, sturm);
            std::cout << "form: " << rep.label << " (level " << rep.level << ", weight "
                      << rep.weight << ")\n";
            auto print_set = [](const char* name, const std::set<u64>& s) {
                std::cout << name << ": {";
                bool comma = false;
                for (u64 q : s) {
                    if (comma)
                        std::cout << ", ";
                    comma = true;
                    std::cout << q;
                }
                std::cout << "}\n";
            };
            print_set("small-weight component", rep.small_weight_component);
            print_set("divisor component", rep.divisor_component);
            print_set("congruence component", rep.congruence_component);
            print_set("bound_set", rep.bound_set);
            for (const auto& a : rep.annotations)
                std::cout << "note: " << a << "\n";
            maybe_write(out_path, obstruction_report_to_json(rep, !no_timestamp).dump(2) + "\n");
            return kExitCertified;
        }

        if (ss_scan->parsed()) {
            CurveRecord curve = load_curve(curve_path);
            std::vector<u64> primes = supersingular_scan(curve, bound);
            std::cout << "supersingular primes of " << curve.label << " up to " << bound << ":";
            for (u64 q : primes)
                std::cout << " " << q;
            std::cout << "\n";
            nlohmann::ordered_json j;
            j["label"] = curve.label;
            j["bound"] = bound;
            j["supersingular_primes"] = primes;
            j["toolkit_version"] = kToolkitVersion;
            maybe_write(out_path, j.dump(2) + "\n");
            return kExitCertified;
        }

        if (dscan->parsed()) {
            DihedralScenario sc = make_dihedral_scenario(D, p, n);
            bool want_rows = !out_path.empty();
            DensityReport rep = dihedral_density_experiment(sc, bound, want_rows, scan_threads());
            std::cout << "D=" << D << " p=" << p << " n=" << n << " h=" << sc.table.h
                      << " bound=" << bound << "\n";
            if (!rep.defined) {
                std::cout << "density undefined: empty sample\n";
            } else {
                std::cout << "sample=" << rep.sample_size << " split=" << rep.split_count
                          << " S1=" << rep.s1_count << " S2=" << rep.s2_count << "\n";
                std::cout << "fraction in S: " << rep.fraction << "\n";
            }
            maybe_write(out_path, density_report_to_csv(rep));
            return kExitCertified;
        }

        if (dcert->parsed()) {
            DihedralScenario sc = load_scenario(scenario_path);
            if (!s_extra.empty())
                sc = make_dihedral_scenario(sc.field.D, sc.p, sc.n, s_extra, sc.oracle_flags);
            Certificate cert = certify_dihedral_mu_zero(sc);
            return emit_certificate(cert, out_path, no_timestamp);
        }

        if (lambda->parsed()) {
            PrecisionProfile prof = PrecisionProfile::make(p, p_prec, t_prec);
            LambdaPresentation pres = load_presentation(matrix_path, prof);
            StructureInvariants inv = module_invariants(pres);
            std::cout << "mu = " << inv.mu << "\n";
            std::cout << "lambda = " << inv.lambda << "\n";
            std::cout << "residual p-adic precision: coefficients certified mod " << p << "^"
                      << inv.residual_p_prec << "\n";
            nlohmann::ordered_json j;
            j["p"] = p;
            j["p_prec"] = p_prec;
            j["t_prec"] = t_prec;
            j["mu"] = inv.mu;
            j["lambda"] = inv.lambda;
            j["residual_p_prec"] = inv.residual_p_prec;
            j["toolkit_version"] = kToolkitVersion;
            maybe_write(out_path, j.dump(2) + "\n");
            return kExitCertified;
        }

        if (euler->parsed()) {
            unsigned dim;
            if (!preset.empty()) {
                if (preset == "odd-adjoint")
                    dim = euler_h1_preset(AdjointParity::Odd);
                else if (preset == "even-adjoint")
                    dim = euler_h1_preset(AdjointParity::Even);
                else
                    throw input_error("unknown preset \"" + preset +
                                      "\" (want odd-adjoint or even-adjoint)");
            } else {
                dim = euler_h1_dimension(h0, h2, dim_minus);
            }
            std::cout << dim << "\n";
            nlohmann::ordered_json j;
            j["h1_dimension"] = dim;
            j["toolkit_version"] = kToolkitVersion;
            maybe_write(out_path, j.dump(2) + "\n");
            return kExitCertified;
        }

        if (s3->parsed()) {
            S3Kind k;
            if (kind == "odd")
                k = S3Kind::Odd;
            else if (kind == "even")
                k = S3Kind::Even;
            else
                throw input_error("--kind must be odd or even");
            auto hits = s3_family_scan(k, a_min, a_max);
            std::cout << hits.size() << " primes in the " << kind << " family for a in ["
                      << a_min << ", " << a_max << "]\n";
            for (auto& [a, q] : hits)
                std::cout << "a=" << a << " p=" << q << "\n";
            nlohmann::ordered_json j;
            j["kind"] = kind;
            j["a_min"] = a_min;
            j["a_max"] = a_max;
            j["count"] = hits.size();
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (auto& [a, q] : hits)
                arr.push_back({{"a", a}, {"p", q}});
            j["pairs"] = arr;
            j["toolkit_version"] = kToolkitVersion;
            maybe_write(out_path, j.dump(2) + "\n");
            return kExitCertified;
        }

        if (congr->parsed()) {
            if (sibling_paths.size() != 1)
                throw input_error("congruence-primes needs exactly one --siblings path");
            NewformRecord f = load_newform(form_path);
            NewformRecord g = load_newform(sibling_paths[0]);
            CongruenceCandidates cand = congruence_primes(f, g, sturm);
            std::cout << "candidate congruence primes of (" << f.label << ", " << g.label
                      << "):";
            for (u64 q : cand.primes)
                std::cout << " " << q;
            std::cout << "\n" << cand.convention << "\n";
            maybe_write(out_path,
                        congruence_to_json(cand, f.label, g.label, !no_timestamp).dump(2) + "\n");
            return kExitCertified;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        write_error_report(out_path, "budget", e.what(), !no_timestamp);
        return kExitBudgetError;
    } catch (const precision_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        write_error_report(out_path, "precision", e.what(), !no_timestamp);
        return kExitInconclusive;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        write_error_report(out_path, "input", e.what(), !no_timestamp);
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        write_error_report(out_path, "internal", e.what(), !no_timestamp);
        return kExitInputError;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return kExitInputError;
    }
    return kExitInputError;
}
