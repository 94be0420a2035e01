#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "ccproof/certificate.hpp"
#include "ccproof/engine.hpp"

namespace ccproof {

// Best known tree size between the child pairs that justify congruence
// edges. Pairs are unordered; missing pairs are at infinity and dist(i, i) = 0.
class DistTable {
 public:
  struct Pair {
    VertexId lo;
    VertexId hi;
  };

  explicit DistTable(const CGraphSnapshot& snap);

  std::size_t num_pairs() const { return pairs_.size(); }
  const Pair& pair(std::size_t i) const { return pairs_[i]; }
  Size value(std::size_t i) const { return dist_[i]; }
  // Index of the justification pair of congruence edge e.
  std::size_t pair_of(EdgeId e) const { return edge_pair_.at(e); }
  Size get(VertexId a, VertexId b) const;
  // Pair index of {a, b}, or num_pairs() when no congruence edge uses it.
  std::size_t index(VertexId a, VertexId b) const;

  // Edge weights for the current table: 1 per axiom edge, the pair value per
  // congruence edge.
  const std::vector<Size>& weights() const { return weights_; }

  // Lowers pair i to `value` with witnessing path (oriented lo -> hi).
  void improve(std::size_t i, Size value, EdgePath path);
  const EdgePath& path(std::size_t i) const { return paths_[i]; }

 private:
  std::vector<Pair> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::unordered_map<EdgeId, std::size_t> edge_pair_;
  std::vector<std::vector<EdgeId>> pair_edges_;
  std::vector<Size> dist_;
  std::vector<EdgePath> paths_;
  std::vector<Size> weights_;
};

enum class PassSchedule {
  // In-pass updates are visible to later pairs of the same pass.
  Sequential,
  // Every pair of a pass reads the previous pass's table; pairs run under OpenMP.
  Parallel,
};

struct TreeOptTable {
  DistTable dist;
  std::size_t passes = 0;
};

// Called after every pass with the pass number (1-based) and current table.
using PassObserver = std::function<void(std::size_t, const DistTable&)>;

// Multi-pass bottom-up computation of congruence-edge tree sizes, stopping
// after a pass that changes nothing and never running more than |C| passes.
TreeOptTable optimal_tree_size_table(const CGraphSnapshot& snap, PassSchedule schedule = PassSchedule::Sequential,
                                     const PassObserver& observer = {});

// Certificate of minimal tree size between s and t.
ProofCert treeopt_extract(const CGraphSnapshot& snap, const TreeOptTable& table, VertexId s, VertexId t);
ProofCert treeopt_extract(const CGraphSnapshot& snap, VertexId s, VertexId t);

}  // namespace ccproof
