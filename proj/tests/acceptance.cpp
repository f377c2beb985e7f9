// Acceptance suite: every release-gating property in one binary, one
// PASS/FAIL line per criterion, exit code = number of failures.
//
// Criteria 1-9 drive the library directly through the shared campaign
// drivers; criterion 10 shells out to the command-line binary (path baked
// in at build time) and checks verdicts, exit codes, and byte-for-byte
// reproducibility of fuzz reports.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <tschur/tschur.hpp>

namespace {

using namespace tschur;
using json = io::json;

constexpr std::uint64_t kSeed = 42;

int g_failures = 0;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
  if (!pass) ++g_failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  " << name;
  for (std::size_t k = name.size(); k < 28; ++k) line << ' ';
  line << detail;
  std::ostringstream t;
  t.precision(1);
  t << std::fixed << seconds;
  std::cout << line.str() << "  [" << t.str() << "s]" << std::endl;
}

// All checks ran on every instance and none failed.
bool campaign_clean(const fuzz::Result& r, std::string& detail) {
  std::ostringstream os;
  if (!r.passed()) {
    os << r.failures() << " failures; first: " << r.first_failure;
    detail = os.str();
    return false;
  }
  for (const auto& [name, c] : r.checks) {
    if (c.run != r.instances) {
      detail = "check " + name + " ran " + std::to_string(c.run) + "/" +
               std::to_string(r.instances) + " times";
      return false;
    }
  }
  os << r.checks.size() << " checks x " << r.instances << " instances clean";
  detail = os.str();
  return true;
}

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  const std::string full = cmd + " 2>/dev/null";
  FILE* pipe = ::popen(full.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main() {
  std::cout << "acceptance suite (seed " << kSeed << ")\n";

  // --- 1 & 2: tensorial Schur positivity and the compression identity ----
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 500;  // n <= 4, p,q <= 3 (campaign defaults)
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::prop4(o);
    const double dt = now_seconds() - t0;

    const auto& psd = r.checks.at("tensor_schur_psd");
    bool pass = psd.run == 500 && psd.failed == 0;
    std::string detail = "500/500 products PSD at tol 1e-10*||.||_F + 1e-12";
    if (!pass) detail = "failures: " + r.first_failure;
    if (dt > 10.0) {
      pass = false;
      detail += " (over 10s budget)";
    }
    report("tensor-schur-positivity", pass, detail, dt);

    const double t1 = now_seconds();
    const auto& sel = r.checks.at("compression_identity_selection");
    const auto& coi = r.checks.at("compression_identity_coisometry");
    const bool pass2 = sel.run == 500 && sel.failed == 0 && coi.run == 500 && coi.failed == 0;
    report("compression-identity", pass2,
           pass2 ? "500/500 bit-exact via block selection and via V (.) V*"
                 : "failures: " + r.first_failure,
           now_seconds() - t1);
  }

  // --- 3: contraction of the tensorial Schur product --------------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 200;
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::eq3(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "200/200 within 1e-12 per entry, contractions PSD";
    report("contraction-identity", pass, detail, now_seconds() - t0);
  }

  // --- 4: CP maps extend to positive maps on block matrices -------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 300;  // n, d, m <= 3 (campaign defaults)
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::cor6(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "300/300 extensions PSD, bit-exact vs Choi contraction";
    report("cp-extension", pass, detail, now_seconds() - t0);
  }

  // --- 5: the transpose map separates positive from completely positive -
  {
    const double t0 = now_seconds();
    std::ostringstream why;
    bool pass = true;

    const PsdReport cp = is_cp(transpose_map(2));
    if (cp.is_psd || std::abs(cp.min_eigenvalue + 1.0) > 1e-10) {
      pass = false;
      why << "is_cp verdict wrong (min " << cp.min_eigenvalue << "); ";
    }

    // The canonical witness: blocks E_ij, i.e. the Choi blocks of the
    // identity map. The transpose extension sends it to the swap operator.
    const CMatrix image = extend_apply(transpose_map(2), choi(identity_map(2)));
    const PsdReport ext = psd_check(image);
    if (ext.is_psd || std::abs(ext.min_eigenvalue + 1.0) > 1e-10) {
      pass = false;
      why << "extension witness wrong (min " << ext.min_eigenvalue << "); ";
    }

    const auto probe = positive_map_falsify(transpose_map(2), 1000, kSeed);
    if (probe.has_value()) {
      pass = false;
      why << "falsifier flagged a positive map at trial " << probe->trial << "; ";
    }

    report("transpose-witness", pass,
           pass ? "not CP (min -1 +- 1e-10), witness eigenvalue -1, 1000 probes silent"
                : why.str(),
           now_seconds() - t0);
  }

  // --- 6: amplified multiplier identity ----------------------------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 200;  // k, n <= 3, p, q <= 2 (campaign defaults)
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::cor7(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "200/200 bit-exact, amplifications PSD, J_k/k idempotent to 1e-12";
    report("amplified-multiplier", pass, detail, now_seconds() - t0);
  }

  // --- 7: classical entrywise product positivity -------------------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 500;  // n <= 8
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::schur_product(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "500/500 entrywise products PSD";
    report("classical-schur", pass, detail, now_seconds() - t0);
  }

  // --- 8: Kraus decomposition round trip ---------------------------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 100;
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::kraus_roundtrip(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "100/100 reconstructions within 1e-8";
    report("kraus-roundtrip", pass, detail, now_seconds() - t0);
  }

  // --- 9: Kronecker spectrum is the product multiset ---------------------
  {
    fuzz::Options o;
    o.seed = kSeed;
    o.instances = 200;
    const double t0 = now_seconds();
    const fuzz::Result r = fuzz::remark8(o);
    std::string detail;
    bool pass = campaign_clean(r, detail);
    if (pass) detail = "200/200 spectra match pairwise products within 1e-8";
    report("kron-spectrum", pass, detail, now_seconds() - t0);
  }

  // --- 10: command-line end to end ---------------------------------------
  {
    const double t0 = now_seconds();
    std::ostringstream why;
    bool pass = true;
    const std::string cli = TSCHUR_CLI_PATH;
    const std::string fixture = std::string(TSCHUR_FIXTURE_DIR) + "/transpose_map_3.json";

    // The committed fixture is the transpose map, bit for bit.
    try {
      const MatLinearMap fx = io::read_map(fixture);
      if (!exact_equal(flatten(choi(fx)), flatten(choi(transpose_map(3))))) {
        pass = false;
        why << "fixture does not equal the transpose map; ";
      }
    } catch (const std::exception& e) {
      pass = false;
      why << "fixture unreadable: " << e.what() << "; ";
    }

    // Not CP: verdict not-cp, exit code 1.
    const CmdResult cpres = run_cmd(quoted(cli) + " cp-check " + quoted(fixture));
    if (cpres.exit_code != 1) {
      pass = false;
      why << "cp-check exit " << cpres.exit_code << " (want 1); ";
    } else {
      try {
        const json j = json::parse(cpres.out);
        if (j.at("verdict") != "not-cp" ||
            std::abs(j.at("min_eigenvalue").get<double>() + 1.0) > 1e-10) {
          pass = false;
          why << "cp-check report wrong: " << cpres.out << "; ";
        }
      } catch (const std::exception&) {
        pass = false;
        why << "cp-check emitted unparseable report; ";
      }
    }

    // Malformed input: exit code 2.
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() /
        ("tschur_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    const std::string junk = (tmp / "junk.json").string();
    {
      std::ofstream f(junk);
      f << "{\"kind\": \"matrix\"";
    }
    const CmdResult bad = run_cmd(quoted(cli) + " cp-check " + quoted(junk));
    if (bad.exit_code != 2) {
      pass = false;
      why << "malformed input exit " << bad.exit_code << " (want 2); ";
    }
    const CmdResult zero =
        run_cmd(quoted(cli) + " fuzz --suite all --seed 42 --instances 0");
    if (zero.exit_code != 2) {
      pass = false;
      why << "--instances 0 exit " << zero.exit_code << " (want 2); ";
    }

    // Full fuzz run: passes, and the report is byte-for-byte reproducible.
    const std::string fuzz_cmd =
        quoted(cli) + " fuzz --suite all --seed 42 --instances 100";
    const CmdResult f1 = run_cmd(fuzz_cmd);
    const CmdResult f2 = run_cmd(fuzz_cmd);
    if (f1.exit_code != 0) {
      pass = false;
      why << "fuzz exit " << f1.exit_code << " (want 0): " << f1.out << "; ";
    } else {
      try {
        const json j = json::parse(f1.out);
        if (j.at("verdict") != "pass") {
          pass = false;
          why << "fuzz verdict not pass; ";
        }
      } catch (const std::exception&) {
        pass = false;
        why << "fuzz emitted unparseable report; ";
      }
    }
    if (f1.out != f2.out || f1.out.empty()) {
      pass = false;
      why << "fuzz reports differ between identical runs; ";
    }

    // Hex and decimal spellings of the same seed produce the same bytes.
    const CmdResult dec =
        run_cmd(quoted(cli) + " fuzz --suite prop4 --seed 42 --instances 5");
    const CmdResult hex =
        run_cmd(quoted(cli) + " fuzz --suite prop4 --seed 0x2A --instances 5");
    if (dec.exit_code != 0 || dec.out != hex.out || dec.out.empty()) {
      pass = false;
      why << "hex seed 0x2A differs from decimal 42; ";
    }

    std::error_code ec;
    std::filesystem::remove_all(tmp, ec);

    const double dt = now_seconds() - t0;
    if (dt > 60.0) {
      pass = false;
      why << "over 60s budget; ";
    }
    report("cli-end-to-end", pass,
           pass ? "verdicts, exit codes 1/2/0, and identical fuzz bytes across runs"
                : why.str(),
           dt);
  }

  std::cout << "acceptance: " << (10 - g_failures) << "/10 criteria passed" << std::endl;
  return g_failures;
}
