// Command-line surface checks: exit statuses, report determinism, stdout
// contracts. usage: test_cli <path-to-mucert-binary> <path-to-data-dir>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "ok " : "FAIL ") << name;
    if (!detail.empty())
        std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok)
        ++g_failures;
}

int run(const std::string& cmd, std::string* stdout_text = nullptr) {
    std::string full = cmd;
    if (stdout_text)
        full += " > cli_stdout.txt 2> /dev/null";
    else
        full += " > /dev/null 2>&1";
    int status = std::system(full.c_str());
    if (stdout_text) {
        std::ifstream in("cli_stdout.txt");
        std::stringstream ss;
        ss << in.rdbuf();
        *stdout_text = ss.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <mucert-binary> <data-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];

    // exit statuses: 0 certified, 1 inconclusive, 2 input, 3 budget
    report("certify-ec good prime exits 0",
           run(bin + " certify-ec --curve " + data + "/11a2.json --p 7") == 0);
    report("certify-ec negative control exits 1",
           run(bin + " certify-ec --curve " + data + "/11a2.json --p 5") == 1);
    report("certify-ec at a bad-reduction prime exits 2",
           run(bin + " certify-ec --curve " + data + "/11a2.json --p 11") == 2);
    {
        std::ofstream bad("cli_malformed.json");
        bad << "{ not json";
    }
    report("malformed JSON exits 2",
           run(bin + " certify-ec --curve cli_malformed.json --p 7") == 2);
    std::remove("cli_malformed.json");
    report("missing required flag exits 2", run(bin + " certify-ec") == 2);
    report("unknown subcommand exits 2", run(bin + " frobnicate") == 2);
    report("s3-scan overflow exits 3",
           run(bin + " s3-scan --kind even --a-min 2 --a-max 2000") == 3);
    report("supersingular budget exits 3",
           run(bin + " supersingular-scan --curve " + data + "/11a2.json --bound 3000000") == 3);

    // stdout contracts
    {
        std::string out;
        int rc = run(bin + " euler-char --preset odd-adjoint", &out);
        report("euler-char odd-adjoint prints 3 and exits 0", rc == 0 && out == "3\n", out);
        rc = run(bin + " euler-char --preset even-adjoint", &out);
        report("euler-char even-adjoint prints 1", rc == 0 && out == "1\n", out);
        rc = run(bin + " euler-char --preset sideways", &out);
        report("euler-char unknown preset exits 2", rc == 2);
    }
    {
        std::string out;
        int rc = run(bin + " lambda-invariants --matrix " + data + "/pres_2x2.json --p 3", &out);
        bool ok = rc == 0 && out.find("mu = 1") != std::string::npos &&
                  out.find("lambda = 2") != std::string::npos;
        report("lambda-invariants on the triangular example", ok, out);
        // a presentation with vanishing determinant is inconclusive, not an error
        std::ofstream z("cli_zero_matrix.json");
        z << R"([["T", "T"], ["T", "T"]])";
        z.close();
        rc = run(bin + " lambda-invariants --matrix cli_zero_matrix.json --p 3");
        report("vanishing determinant exits 1 (not provably torsion)", rc == 1);
        std::remove("cli_zero_matrix.json");
    }
    {
        std::string out;
        int rc = run(bin + " s3-scan --kind even --a-min 2 --a-max 1000", &out);
        report("s3-scan even family reports 108",
               rc == 0 && out.find("108 primes") != std::string::npos);
    }
    {
        std::string out;
        int rc = run(bin + " congruence-primes --form " + data + "/26a.json --siblings " + data +
                         "/26b.json --sturm 7",
                     &out);
        report("congruence-primes 26a/26b finds the frozen candidate set {2}",
               rc == 0 && out.find(": 2\n") != std::string::npos, out);
    }
    {
        std::string out;
        int rc = run(bin + " weston-bound --form " + data + "/delta.json", &out);
        report("weston-bound on the weight-12 form lists {2, 3, 5, 7, 11, 13}",
               rc == 0 && out.find("bound_set: {2, 3, 5, 7, 11, 13}") != std::string::npos, out);
        rc = run(bin + " weston-bound --form " + data + "/26a.json");
        report("weston-bound at weight 2 exits 2 (density statement instead)", rc == 2);
    }
    {
        int rc = run(bin + " dihedral-certify --scenario " + data + "/scenario_239.json");
        report("dihedral-certify with the oracle flag exits 0", rc == 0);
        rc = run(bin + " dihedral-certify --scenario " + data +
                 "/scenario_239.json --s-extra 23");
        report("dihedral-certify with an inert auxiliary prime exits 1", rc == 1);
    }

    // determinism: identical inputs, byte-identical reports (no timestamps)
    {
        int rc1 = run(bin + " certify-ec --curve " + data +
                      "/11a2.json --p 7 --no-timestamp --out cli_cert_a.json");
        int rc2 = run(bin + " certify-ec --curve " + data +
                      "/11a2.json --p 7 --no-timestamp --out cli_cert_b.json");
        std::string a = slurp("cli_cert_a.json"), b = slurp("cli_cert_b.json");
        report("certificates are byte-identical with --no-timestamp",
               rc1 == 0 && rc2 == 0 && !a.empty() && a == b);
        report("timestamp suppressed", a.find("generated_at") == std::string::npos);
        std::remove("cli_cert_a.json");
        std::remove("cli_cert_b.json");
    }
    {
        int rc1 = run(bin + " dihedral-scan --D 239 --p 3 --n 5 --bound 20000 --out cli_rows_a.csv");
        int rc2 = run(bin + " dihedral-scan --D 239 --p 3 --n 5 --bound 20000 --out cli_rows_b.csv");
        std::string a = slurp("cli_rows_a.csv"), b = slurp("cli_rows_b.csv");
        bool header = a.rfind("prime,mod3,splitting,in_S1,in_S2\n", 0) == 0;
        report("density CSV deterministic with the documented header",
               rc1 == 0 && rc2 == 0 && header && a == b);
        std::remove("cli_rows_a.csv");
        std::remove("cli_rows_b.csv");
    }
    {
        // errors serialize into the report when an output path is given
        int rc = run(bin + " certify-ec --curve " + data +
                     "/11a2.json --p 11 --out cli_err.json");
        std::string text = slurp("cli_err.json");
        report("input errors serialize into the requested report",
               rc == 2 && text.find("\"error\"") != std::string::npos &&
                   text.find("bad reduction") != std::string::npos);
        std::remove("cli_err.json");
    }

    std::remove("cli_stdout.txt");
    if (g_failures) {
        std::cout << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
