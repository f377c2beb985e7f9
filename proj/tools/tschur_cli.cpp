// Command-line front end: tensorial Schur products, Choi matrices, complete
// positivity checks, Kraus extraction, and randomized property campaigns
// over JSON matrix files.
//
// Every run prints a single-line JSON report on standard output; logs go to
// standard error. Exit codes: 0 for an affirmative verdict, 1 for a negative
// one (not PSD, not CP, campaign failures), 2 for usage or input errors.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tschur/tschur.hpp>

namespace {

using tschur::BlockMatrix;
using tschur::CMatrix;
using tschur::KrausSet;
using tschur::MatLinearMap;
using tschur::PsdReport;
using json = tschur::io::json;

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

void emit(const json& report) { std::cout << report.dump() << "\n"; }

// Accepts decimal or 0x-prefixed hexadecimal, full 64-bit range.
std::uint64_t parse_seed(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  if (s.empty() || s[0] == '-')
    throw std::runtime_error("invalid seed \"" + s + "\": must be a non-negative integer");
  try {
    v = std::stoull(s, &pos, 0);
  } catch (const std::exception&) {
    throw std::runtime_error("invalid seed \"" + s + "\"");
  }
  if (pos != s.size())
    throw std::runtime_error("invalid seed \"" + s + "\": trailing characters");
  return static_cast<std::uint64_t>(v);
}

void fill_psd_fields(json& r, const PsdReport& rep) {
  r["min_eigenvalue"] = rep.min_eigenvalue;
  r["max_eigenvalue"] = rep.max_eigenvalue;
  r["tolerance_used"] = rep.tolerance_used;
  r["hermiticity_defect"] = rep.hermiticity_defect;
}

int run_psd(const std::string& file, double rtol, double atol) {
  const tschur::io::Payload p = tschur::io::read_file(file);
  CMatrix a(1, 1);
  if (const auto* m = std::get_if<CMatrix>(&p))
    a = *m;
  else if (const auto* b = std::get_if<BlockMatrix>(&p))
    a = flatten(*b);
  else
    throw std::runtime_error(file + ": psd expects a matrix or block file (use cp-check for maps)");
  Timer timer;
  const PsdReport rep = tschur::psd_check(a, rtol, atol);
  json r;
  r["command"] = "psd";
  r["verdict"] = rep.is_psd ? "psd" : "not-psd";
  fill_psd_fields(r, rep);
  r["elapsed_seconds"] = timer.seconds();
  emit(r);
  return rep.is_psd ? 0 : 1;
}

int run_tschur(const std::string& rfile, const std::string& sfile, const std::string& out) {
  const BlockMatrix r = tschur::io::read_block(rfile);
  const BlockMatrix s = tschur::io::read_block(sfile);
  const BlockMatrix t = tschur::tensor_schur(r, s);
  tschur::io::write_file(out, t);
  std::cerr << "wrote " << out << "\n";
  json rep;
  rep["command"] = "tschur";
  rep["verdict"] = "ok";
  rep["n"] = t.outer_size();
  rep["m"] = t.block_dim();
  rep["out"] = out;
  emit(rep);
  return 0;
}

int run_choi(const std::string& mapfile, const std::string& out) {
  const MatLinearMap phi = tschur::io::read_map(mapfile);
  tschur::io::write_file(out, tschur::choi(phi));
  std::cerr << "wrote " << out << "\n";
  json rep;
  rep["command"] = "choi";
  rep["verdict"] = "ok";
  rep["n"] = phi.n();
  rep["d"] = phi.d();
  rep["out"] = out;
  emit(rep);
  return 0;
}

int run_cp_check(const std::string& mapfile, double rtol, double atol) {
  const MatLinearMap phi = tschur::io::read_map(mapfile);
  Timer timer;
  const PsdReport rep = tschur::is_cp(phi, rtol, atol);
  json r;
  r["command"] = "cp-check";
  r["verdict"] = rep.is_psd ? "cp" : "not-cp";
  fill_psd_fields(r, rep);
  r["elapsed_seconds"] = timer.seconds();
  emit(r);
  return rep.is_psd ? 0 : 1;
}

int run_kraus(const std::string& mapfile, const std::string& stem, double rank_tol) {
  const MatLinearMap phi = tschur::io::read_map(mapfile);
  const PsdReport rep = tschur::is_cp(phi);
  if (!rep.is_psd) {
    json r;
    r["command"] = "kraus";
    r["verdict"] = "not-cp";
    fill_psd_fields(r, rep);
    emit(r);
    return 1;
  }
  const KrausSet ks = tschur::kraus(phi, rank_tol);
  json files = json::array();
  for (std::size_t t = 0; t < ks.ops.size(); ++t) {
    const std::string path = stem + "." + std::to_string(t) + ".json";
    tschur::io::write_file(path, ks.ops[t]);
    std::cerr << "wrote " << path << "\n";
    files.push_back(path);
  }
  json r;
  r["command"] = "kraus";
  r["verdict"] = "cp";
  r["count"] = ks.ops.size();
  r["files"] = files;
  emit(r);
  return 0;
}

int run_extend(const std::string& mapfile, const std::string& blockfile, const std::string& out) {
  const MatLinearMap phi = tschur::io::read_map(mapfile);
  const BlockMatrix r = tschur::io::read_block(blockfile);
  const CMatrix y = tschur::extend_apply(phi, r);
  tschur::io::write_file(out, y);
  std::cerr << "wrote " << out << "\n";
  json rep;
  rep["command"] = "extend";
  rep["verdict"] = "ok";
  rep["rows"] = y.rows();
  rep["cols"] = y.cols();
  rep["out"] = out;
  emit(rep);
  return 0;
}

// The fuzz report carries no timing fields: a fuzz run's bytes are a pure
// function of (suite, seed, instances, caps, tolerances).
int run_fuzz(const std::string& suite, const std::string& seed_str, std::size_t instances,
             std::size_t max_n, std::size_t max_m, double rtol, double atol) {
  tschur::fuzz::Options opts;
  opts.seed = parse_seed(seed_str);
  opts.instances = instances;
  opts.max_outer = max_n;
  opts.max_block = max_m;
  opts.rtol = rtol;
  opts.atol = atol;
  const std::vector<tschur::fuzz::Result> results = tschur::fuzz::run_suite(suite, opts);

  std::size_t failures = 0;
  std::string first_failure;
  json campaigns;
  for (const auto& res : results) {
    json checks;
    for (const auto& [name, c] : res.checks) {
      json entry;
      entry["run"] = c.run;
      entry["failed"] = c.failed;
      checks[name] = entry;
    }
    json cj;
    cj["instances"] = res.instances;
    cj["checks"] = checks;
    campaigns[res.campaign] = cj;
    failures += res.failures();
    if (first_failure.empty()) first_failure = res.first_failure;
  }

  json r;
  r["command"] = "fuzz";
  r["verdict"] = failures == 0 ? "pass" : "fail";
  r["suite"] = suite;
  r["seed"] = opts.seed;
  r["instances"] = instances;
  r["failures"] = failures;
  if (!first_failure.empty()) r["first_failure"] = first_failure;
  r["campaigns"] = campaigns;
  emit(r);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensorial Schur products, Choi matrices, and CP-map tools over JSON matrix files"};
  app.require_subcommand(1);

  std::string file_a, file_b, out;
  double rtol = 1e-10, atol = 1e-12, rank_tol = 1e-10;
  std::string suite = "all", seed = "42";
  std::size_t instances = 100, max_n = 0, max_m = 0;
  int code = 0;

  CLI::App* psd = app.add_subcommand("psd", "check a matrix or block file for positive semidefiniteness");
  psd->add_option("file", file_a, "matrix or block JSON file")->required();
  psd->add_option("--rtol", rtol, "relative tolerance (x Frobenius norm)")->capture_default_str();
  psd->add_option("--atol", atol, "absolute tolerance")->capture_default_str();
  psd->callback([&] { code = run_psd(file_a, rtol, atol); });

  CLI::App* ts = app.add_subcommand("tschur", "entrywise tensor product of two block files");
  ts->add_option("r", file_a, "left block JSON file")->required();
  ts->add_option("s", file_b, "right block JSON file")->required();
  ts->add_option("--out", out, "output block JSON file")->required();
  ts->callback([&] { code = run_tschur(file_a, file_b, out); });

  CLI::App* ch = app.add_subcommand("choi", "write the Choi matrix of a map file");
  ch->add_option("map", file_a, "map JSON file")->required();
  ch->add_option("--out", out, "output block JSON file")->required();
  ch->callback([&] { code = run_choi(file_a, out); });

  CLI::App* cp = app.add_subcommand("cp-check", "decide complete positivity of a map file");
  cp->add_option("map", file_a, "map JSON file")->required();
  cp->add_option("--rtol", rtol, "relative tolerance (x Frobenius norm)")->capture_default_str();
  cp->add_option("--atol", atol, "absolute tolerance")->capture_default_str();
  cp->callback([&] { code = run_cp_check(file_a, rtol, atol); });

  CLI::App* kr = app.add_subcommand("kraus", "extract Kraus operators of a CP map file");
  kr->add_option("map", file_a, "map JSON file")->required();
  kr->add_option("--out", out, "output stem; operators go to <stem>.<t>.json")->required();
  kr->add_option("--rank-tol", rank_tol, "relative eigenvalue cutoff")->capture_default_str();
  kr->callback([&] { code = run_kraus(file_a, out, rank_tol); });

  CLI::App* ex = app.add_subcommand("extend", "apply the block extension of a map to a block file");
  ex->add_option("map", file_a, "map JSON file")->required();
  ex->add_option("block", file_b, "block or matrix JSON file")->required();
  ex->add_option("--out", out, "output matrix JSON file")->required();
  ex->callback([&] { code = run_extend(file_a, file_b, out); });

  CLI::App* fz = app.add_subcommand("fuzz", "run randomized property campaigns");
  fz->add_option("--suite", suite, "prop4, cor6, cor7, schur, or all")->capture_default_str();
  fz->add_option("--seed", seed, "campaign seed (decimal or 0x hex)")->capture_default_str();
  fz->add_option("--instances", instances, "instances per campaign")->capture_default_str();
  fz->add_option("--max-n", max_n, "cap outer sizes (0 = campaign default)")->capture_default_str();
  fz->add_option("--max-m", max_m, "cap block dimensions (0 = campaign default)")->capture_default_str();
  fz->add_option("--rtol", rtol, "relative tolerance (x Frobenius norm)")->capture_default_str();
  fz->add_option("--atol", atol, "absolute tolerance")->capture_default_str();
  fz->callback([&] { code = run_fuzz(suite, seed, instances, max_n, max_m, rtol, atol); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    json r;
    r["verdict"] = "error";
    r["message"] = e.what();
    emit(r);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    json r;
    r["verdict"] = "error";
    r["message"] = e.what();
    emit(r);
    return 2;
  }
  return code;
}
