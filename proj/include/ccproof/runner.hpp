#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ccproof/certificate.hpp"
#include "ccproof/greedy.hpp"
#include "ccproof/instance.hpp"

namespace ccproof {

enum class Algo { Unopt, Reduce, Greedy, TreeOpt, BruteDag, BruteTree };

std::string_view to_string(Algo a);
std::optional<Algo> parse_algo(std::string_view name);
const std::vector<std::string>& algo_names();

struct RunReport {
  std::string algorithm;
  std::optional<Size> tree_size;
  std::optional<std::size_t> dag_size;
  double wall_ms = 0;
  std::optional<std::size_t> passes;
  std::optional<std::size_t> fuel_spent;
  std::size_t vertices = 0;
  std::size_t axiom_edges = 0;
  std::size_t congruence_edges = 0;
  // Axiom ids of the brute-force DAG witness.
  std::vector<AxiomId> witness;
};

// One-line JSON object; wall time only when `timing` is set.
std::string report_json(const RunReport& r, bool timing);

struct RunOutput {
  RunReport report;
  std::optional<Certificate> cert;
  // Table the certificate's terms live in.
  std::shared_ptr<const TermBank> bank;
};

// Runs one extractor or oracle on a closed instance. Throws NotEquivalent
// when the goal does not hold and TooLarge past the oracle limits.
RunOutput run_algorithm(const Instance& inst, const ClosedInstance& closed, Algo algo,
                        std::size_t fuel = kDefaultFuel);

struct BenchOptions {
  std::size_t n_lo = 8;
  std::size_t n_hi = 12;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t fuel = kDefaultFuel;
  std::size_t depth = kDefaultDepth;
  bool oracles = true;
  bool timing = false;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t vertices = 0;
  std::size_t axiom_edges = 0;
  std::size_t congruence_edges = 0;
  Size unopt_tree = 0, greedy_tree = 0, treeopt_tree = 0, reduce_tree = 0;
  std::size_t unopt_dag = 0, greedy_dag = 0, treeopt_dag = 0, reduce_dag = 0;
  std::optional<Size> brute_tree;
  std::optional<std::size_t> brute_dag;
  std::size_t passes = 0;
  std::size_t fuel_spent = 0;
  double greedy_ms = 0;
  double treeopt_ms = 0;
  // Names of violated row invariants; empty when the row is consistent.
  std::vector<std::string> violations;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double mean_unopt_ratio = 0;
  double mean_greedy_ratio = 0;
  double greedy_optimal_fraction = 0;
  std::size_t violations = 0;
};

BenchRow bench_instance(const Instance& inst, std::size_t fuel, bool oracles);
BenchResult run_bench(const BenchOptions& opts);
void write_bench_table(std::ostream& out, const BenchResult& res, bool timing);
void write_bench_jsonl(std::ostream& out, const BenchResult& res, bool timing);

}  // namespace ccproof
