#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ccproof/error.hpp"
#include "ccproof/instance.hpp"
#include "ccproof/optdag.hpp"
#include "ccproof/runner.hpp"

using namespace ccproof;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitFailed = 2;
constexpr int kExitLimits = 3;
constexpr int kExitUsage = 64;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotEquivalent:
    case ErrorKind::NoFinitePath:
    case ErrorKind::UnknownAxiom:
      return kExitFailed;
    case ErrorKind::TooLarge:
    case ErrorKind::BoundOverflow:
      return kExitLimits;
    default:
      return kExitParse;
  }
}

int cmd_prove(const std::string& file, const std::string& algo_name, std::size_t fuel, std::string out_path) {
  Instance inst = parse_instance(slurp(file));
  ClosedInstance closed = close_instance(inst);
  RunOutput run = run_algorithm(inst, closed, *parse_algo(algo_name), fuel);
  if (run.cert) {
    if (out_path.empty()) out_path = file + ".cert";
    spill(out_path, render_cert(*run.cert, *run.bank));
  }
  std::cout << report_json(run.report, false) << '\n';
  return kExitOk;
}

int cmd_check(const std::string& file, const std::string& cert_file) {
  Instance inst = parse_instance(slurp(file));
  std::string text = slurp(cert_file);
  TermBank bank = inst.bank;
  Certificate cert;
  try {
    cert = parse_cert(text, bank);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownAxiom) throw;
    std::cout << "UnknownAxiom\n";
    return kExitFailed;
  }
  CheckResult r = check_certificate(cert, bank, inst.axioms, inst.goal);
  if (r.ok()) {
    std::cout << "Ok\n";
    return kExitOk;
  }
  std::cout << to_string(r.error) << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
  return kExitFailed;
}

int cmd_ilp(const std::string& file, const std::string& out_path) {
  Instance inst = parse_instance(slurp(file));
  ClosedInstance closed = close_instance(inst);
  std::ostringstream model;
  IlpSummary sum = emit_ilp(closed.snap, closed.s, closed.t, model);
  spill(out_path, model.str());
  std::cout << "variables=" << sum.variables << " constraints=" << sum.constraints << " ell=" << sum.ell
            << " m_variables=" << sum.m_variables << '\n';
  return kExitOk;
}

bool parse_range(const std::string& text, std::size_t& lo, std::size_t& hi) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, dots));
      hi = std::stoul(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo >= 1 && lo <= hi;
}

int cmd_bench(BenchOptions opts, const std::string& range, const std::string& json_out) {
  if (!parse_range(range, opts.n_lo, opts.n_hi)) {
    std::cerr << "bad --n range '" << range << "' (expected LO..HI with 1 <= LO <= HI)\n";
    return kExitUsage;
  }
  BenchResult res = run_bench(opts);
  write_bench_table(std::cout, res, opts.timing);
  if (!json_out.empty()) {
    std::ostringstream js;
    write_bench_jsonl(js, res, opts.timing);
    spill(json_out, js.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccproof: congruence closure with small proof certificates"};
  app.require_subcommand(1);

  std::string file, cert_file, out_path, algo, range = "8..12", json_out;
  std::size_t fuel = kDefaultFuel;
  BenchOptions bench;

  auto* prove = app.add_subcommand("prove", "Extract a certificate and print a JSON report");
  prove->add_option("FILE", file, "Instance file")->required();
  prove->add_option("--algo", algo, "Extractor or oracle")->required()->check(CLI::IsMember(algo_names()));
  prove->add_option("--fuel", fuel, "Greedy congruence expansions");
  prove->add_option("--out", out_path, "Certificate path (default FILE.cert)");

  auto* check = app.add_subcommand("check", "Check a certificate against an instance");
  check->add_option("FILE", file, "Instance file")->required();
  check->add_option("CERT", cert_file, "Certificate file")->required();

  auto* ilp = app.add_subcommand("ilp", "Write the minimum DAG size model in LP format");
  ilp->add_option("FILE", file, "Instance file")->required();
  ilp->add_option("--out", out_path, "Model path")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Compare extractors on random instances");
  bench_cmd->add_option("--n", range, "Axiom counts LO..HI");
  bench_cmd->add_option("--trials", bench.trials, "Instances per axiom count");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");
  bench_cmd->add_option("--fuel", bench.fuel, "Greedy fuel");
  bench_cmd->add_option("--depth", bench.depth, "Maximum term depth");
  bench_cmd->add_flag("!--no-oracles", bench.oracles, "Skip the brute-force oracles");
  bench_cmd->add_flag("--timing", bench.timing, "Add wall-clock columns (output no longer reproducible)");
  bench_cmd->add_option("--json-out", json_out, "Also write JSON lines here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*prove) return cmd_prove(file, algo, fuel, out_path);
    if (*check) return cmd_check(file, cert_file);
    if (*ilp) return cmd_ilp(file, out_path);
    if (*bench_cmd) return cmd_bench(bench, range, json_out);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    std::cout << to_string(e.kind()) << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitParse;
  }
  return kExitUsage;
}
