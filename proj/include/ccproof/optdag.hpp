#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ccproof/engine.hpp"

namespace ccproof {

// Edges of `edges` that become valid, in activation order: every
// non-congruence edge first, then congruence edges once their justification
// children are connected by edges already active.
std::vector<EdgeId> fixpoint_activation(const CGraphSnapshot& snap, std::span<const EdgeId> edges);

bool fixpoint_e_connected(const CGraphSnapshot& snap, std::span<const EdgeId> edges, VertexId s, VertexId t);

struct MinDag {
  Size size = 0;
  // Lexicographically least minimal set of non-congruence edges.
  std::vector<EdgeId> witness;
};

inline constexpr std::size_t kDagEdgeLimit = 20;

// Exact minimal DAG size by enumerating non-congruence edge subsets in
// increasing size, all congruence edges available. Throws TooLarge when
// |E \ C| exceeds `limit`.
MinDag brute_min_dag(const CGraphSnapshot& snap, VertexId s, VertexId t, std::size_t limit = kDagEdgeLimit);
// Same search with each cardinality's subsets split across OpenMP threads.
MinDag brute_min_dag_parallel(const CGraphSnapshot& snap, VertexId s, VertexId t,
                              std::size_t limit = kDagEdgeLimit);

struct TreeLimits {
  std::size_t max_vertices = 14;
  std::size_t max_congruences = 4;
};

// Exact minimal tree size over simple paths, each congruence edge excluded
// from its own subproof. Throws TooLarge beyond `limits`, NotEquivalent when
// no proof exists.
Size brute_min_tree(const CGraphSnapshot& snap, VertexId s, VertexId t, TreeLimits limits = {});

struct IlpSummary {
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::uint64_t ell = 0;
  std::size_t m_variables = 0;
};

inline constexpr std::uint64_t kMaxEll = 1'000'000;

// Writes the minimum-DAG-size integer program in LP format. Throws
// BoundOverflow when the distance bound exceeds kMaxEll.
IlpSummary emit_ilp(const CGraphSnapshot& snap, VertexId s, VertexId t, std::ostream& sink);

// max(|E|, |C|^(|C|+1) * |E|), saturated at UINT64_MAX.
std::uint64_t ilp_distance_bound(std::size_t num_edges, std::size_t num_congruences);

}  // namespace ccproof
