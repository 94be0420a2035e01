#include "ccproof/runner.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>

#include "json.hpp"

#include "ccproof/error.hpp"
#include "ccproof/extract_basic.hpp"
#include "ccproof/optdag.hpp"
#include "ccproof/parallel.hpp"
#include "ccproof/treeopt.hpp"

namespace ccproof {

namespace {

constexpr std::pair<Algo, const char*> kAlgos[] = {
    {Algo::Unopt, "unopt"},        {Algo::Reduce, "reduce"},       {Algo::Greedy, "greedy"},
    {Algo::TreeOpt, "treeopt"},    {Algo::BruteDag, "brute-dag"},  {Algo::BruteTree, "brute-tree"},
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Algo a) {
  for (auto [algo, name] : kAlgos) {
    if (algo == a) return name;
  }
  return "?";
}

std::optional<Algo> parse_algo(std::string_view name) {
  for (auto [algo, n] : kAlgos) {
    if (name == n) return algo;
  }
  return std::nullopt;
}

const std::vector<std::string>& algo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto [algo, name] : kAlgos) v.emplace_back(name);
    return v;
  }();
  return names;
}

std::string report_json(const RunReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["tree_size"] = r.tree_size ? nlohmann::ordered_json(*r.tree_size) : nlohmann::ordered_json(nullptr);
  j["dag_size"] = r.dag_size ? nlohmann::ordered_json(*r.dag_size) : nlohmann::ordered_json(nullptr);
  if (timing) j["wall_ms"] = r.wall_ms;
  if (r.passes) j["passes"] = *r.passes;
  if (r.fuel_spent) j["fuel_spent"] = *r.fuel_spent;
  j["vertices"] = r.vertices;
  j["axiom_edges"] = r.axiom_edges;
  j["congruence_edges"] = r.congruence_edges;
  if (!r.witness.empty()) {
    auto& w = j["witness"] = nlohmann::ordered_json::array();
    for (AxiomId a : r.witness) w.push_back(a.value);
  }
  return j.dump();
}

RunOutput run_algorithm(const Instance& inst, const ClosedInstance& closed, Algo algo, std::size_t fuel) {
  const CGraphSnapshot& snap = closed.snap;
  if (!closed.provable()) throw Error(ErrorKind::NotEquivalent, "goal terms are not equal");
  RunOutput out;
  RunReport& rep = out.report;
  rep.algorithm = std::string(to_string(algo));
  rep.vertices = snap.num_vertices();
  rep.axiom_edges = snap.axiom_edges().size();
  rep.congruence_edges = snap.congruence_edges().size();
  out.bank = snap.shared_bank();

  std::optional<ProofCert> proof;
  auto start = Clock::now();
  switch (algo) {
    case Algo::Unopt:
      proof = unoptimized_proof(snap, closed.s, closed.t);
      break;
    case Algo::Reduce: {
      ReducedProof red = reduce_proof(snap, inst.goal, unoptimized_proof(snap, closed.s, closed.t));
      proof = std::move(red.cert);
      out.bank = red.bank;
      break;
    }
    case Algo::Greedy: {
      EstimateTable est = estimate_sizes(snap);
      GreedyResult g = greedy_extract(snap, closed.s, closed.t, est, fuel);
      proof = std::move(g.cert);
      rep.fuel_spent = g.fuel_spent;
      break;
    }
    case Algo::TreeOpt: {
      TreeOptTable table = optimal_tree_size_table(snap);
      proof = treeopt_extract(snap, table, closed.s, closed.t);
      rep.passes = table.passes;
      break;
    }
    case Algo::BruteDag: {
      MinDag md = brute_min_dag_parallel(snap, closed.s, closed.t);
      rep.dag_size = md.size;
      for (EdgeId e : md.witness) rep.witness.push_back(snap.edge(e).axiom().axiom);
      break;
    }
    case Algo::BruteTree:
      rep.tree_size = brute_min_tree(snap, closed.s, closed.t);
      break;
  }
  rep.wall_ms = ms_since(start);
  if (proof) {
    rep.tree_size = cert_tree_size(*proof);
    rep.dag_size = cert_dag_size(*proof);
    out.cert = make_certificate(std::move(*proof), snap.axioms(), inst.goal);
  }
  return out;
}

BenchRow bench_instance(const Instance& inst, std::size_t fuel, bool oracles) {
  ClosedInstance closed = close_instance(inst);
  BenchRow row;
  row.vertices = closed.snap.num_vertices();
  row.axiom_edges = closed.snap.axiom_edges().size();
  row.congruence_edges = closed.snap.congruence_edges().size();

  auto run = [&](Algo a, Size& tree, std::size_t& dag) {
    RunOutput o = run_algorithm(inst, closed, a, fuel);
    tree = *o.report.tree_size;
    dag = *o.report.dag_size;
    if (dag > tree) row.violations.push_back(std::string("dag>tree:") + std::string(to_string(a)));
    if (!check_certificate(*o.cert, *o.bank, closed.snap.axioms(), inst.goal).ok()) {
      row.violations.push_back("check:" + std::string(to_string(a)));
    }
    return o;
  };
  run(Algo::Unopt, row.unopt_tree, row.unopt_dag);
  run(Algo::Reduce, row.reduce_tree, row.reduce_dag);
  RunOutput g = run(Algo::Greedy, row.greedy_tree, row.greedy_dag);
  row.greedy_ms = g.report.wall_ms;
  row.fuel_spent = *g.report.fuel_spent;
  RunOutput t = run(Algo::TreeOpt, row.treeopt_tree, row.treeopt_dag);
  row.treeopt_ms = t.report.wall_ms;
  row.passes = *t.report.passes;

  if (row.treeopt_tree > row.greedy_tree) row.violations.push_back("treeopt>greedy");
  if (row.greedy_tree > row.unopt_tree) row.violations.push_back("greedy>unopt");
  if (row.reduce_dag > row.unopt_dag) row.violations.push_back("reduce_dag>unopt_dag");

  if (oracles) {
    try {
      row.brute_tree = brute_min_tree(closed.snap, closed.s, closed.t);
      if (*row.brute_tree != row.treeopt_tree) row.violations.push_back("treeopt!=brute_tree");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLarge) throw;
    }
    if (row.axiom_edges <= 14) {
      row.brute_dag = brute_min_dag(closed.snap, closed.s, closed.t).size;
      for (std::size_t d : {row.unopt_dag, row.reduce_dag, row.greedy_dag, row.treeopt_dag}) {
        if (*row.brute_dag > d) {
          row.violations.push_back("brute_dag>dag");
          break;
        }
      }
    }
  }
  return row;
}

BenchResult run_bench(const BenchOptions& opts) {
  struct Job {
    std::size_t n, trial;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  std::mt19937_64 seeds(opts.seed);
  for (std::size_t n = opts.n_lo; n <= opts.n_hi; ++n) {
    for (std::size_t k = 0; k < opts.trials; ++k) jobs.push_back(Job{n, k, seeds()});
  }

  BenchResult res;
  res.rows.resize(jobs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel::thread_count())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(jobs.size()); ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    try {
      Instance inst = gen_random_instance(job.n, opts.depth, job.seed);
      BenchRow row = bench_instance(inst, opts.fuel, opts.oracles);
      row.n = job.n;
      row.trial = job.trial;
      row.seed = job.seed;
      res.rows[static_cast<std::size_t>(i)] = std::move(row);
    } catch (...) {
#pragma omp critical(bench_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (!res.rows.empty()) {
    std::size_t optimal = 0;
    for (const BenchRow& r : res.rows) {
      res.mean_unopt_ratio += static_cast<double>(r.unopt_tree) / static_cast<double>(r.treeopt_tree);
      res.mean_greedy_ratio += static_cast<double>(r.greedy_tree) / static_cast<double>(r.treeopt_tree);
      if (r.greedy_tree == r.treeopt_tree) ++optimal;
      res.violations += r.violations.size();
    }
    const auto count = static_cast<double>(res.rows.size());
    res.mean_unopt_ratio /= count;
    res.mean_greedy_ratio /= count;
    res.greedy_optimal_fraction = static_cast<double>(optimal) / count;
  }
  return res;
}

namespace {

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

}  // namespace

void write_bench_table(std::ostream& out, const BenchResult& res, bool timing) {
  char line[256];
  std::snprintf(line, sizeof line, "%4s %5s %6s %5s %5s | %6s %6s %6s %6s | %5s %5s %5s %5s | %6s %5s | %s", "n",
                "trial", "V", "E\\C", "C", "unopt", "greedy", "treopt", "brute", "unopt", "reduce", "greedy",
                "treopt", "brute", "pass", "ok");
  out << "#" << line + 1 << (timing ? "  greedy_ms treeopt_ms" : "") << '\n';
  for (const BenchRow& r : res.rows) {
    std::snprintf(line, sizeof line, "%4zu %5zu %6zu %5zu %5zu | %6llu %6llu %6llu %6s | %5zu %5zu %5zu %5zu | %6s %5zu | %s",
                  r.n, r.trial, r.vertices, r.axiom_edges, r.congruence_edges,
                  static_cast<unsigned long long>(r.unopt_tree), static_cast<unsigned long long>(r.greedy_tree),
                  static_cast<unsigned long long>(r.treeopt_tree), opt_str(r.brute_tree).c_str(), r.unopt_dag,
                  r.reduce_dag, r.greedy_dag, r.treeopt_dag, opt_str(r.brute_dag).c_str(), r.passes,
                  r.violations.empty() ? "yes" : r.violations.front().c_str());
    out << line;
    if (timing) {
      std::snprintf(line, sizeof line, "  %9.3f %10.3f", r.greedy_ms, r.treeopt_ms);
      out << line;
    }
    out << '\n';
  }
  std::snprintf(line, sizeof line,
                "rows=%zu mean_tree_ratio_unopt=%.4f mean_tree_ratio_greedy=%.4f greedy_optimal=%.4f violations=%zu",
                res.rows.size(), res.mean_unopt_ratio, res.mean_greedy_ratio, res.greedy_optimal_fraction,
                res.violations);
  out << line << '\n';
}

void write_bench_jsonl(std::ostream& out, const BenchResult& res, bool timing) {
  for (const BenchRow& r : res.rows) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["vertices"] = r.vertices;
    j["axiom_edges"] = r.axiom_edges;
    j["congruence_edges"] = r.congruence_edges;
    j["tree"] = {{"unopt", r.unopt_tree}, {"reduce", r.reduce_tree}, {"greedy", r.greedy_tree},
                 {"treeopt", r.treeopt_tree}};
    j["dag"] = {{"unopt", r.unopt_dag}, {"reduce", r.reduce_dag}, {"greedy", r.greedy_dag},
                {"treeopt", r.treeopt_dag}};
    if (r.brute_tree) j["brute_tree"] = *r.brute_tree;
    if (r.brute_dag) j["brute_dag"] = *r.brute_dag;
    j["passes"] = r.passes;
    j["fuel_spent"] = r.fuel_spent;
    if (timing) {
      j["greedy_ms"] = r.greedy_ms;
      j["treeopt_ms"] = r.treeopt_ms;
    }
    j["violations"] = r.violations;
    out << j.dump() << '\n';
  }
  nlohmann::ordered_json s;
  s["rows"] = res.rows.size();
  s["mean_tree_ratio_unopt"] = res.mean_unopt_ratio;
  s["mean_tree_ratio_greedy"] = res.mean_greedy_ratio;
  s["greedy_optimal_fraction"] = res.greedy_optimal_fraction;
  s["violations"] = res.violations;
  out << nlohmann::ordered_json{{"summary", s}}.dump() << '\n';
}

}  // namespace ccproof
