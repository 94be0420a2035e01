#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "ccproof/certificate.hpp"
#include "ccproof/engine.hpp"
#include "ccproof/lca.hpp"

namespace ccproof {

struct EstimateTable {
  // Estimated tree size per congruence edge.
  std::unordered_map<EdgeId, Size> estimate;
  // State of the size-accumulating union-find after estimation.
  std::vector<VertexId> uf_parent;
  std::vector<Size> size_to_parent;
  std::size_t union_find_ops = 0;

  // 1 per axiom edge, the estimate per congruence edge.
  std::vector<Size> weights;
};

// Tree sizes of reduced-forest proofs, computed by joining forest vertices
// bottom-up into a union-find that accumulates the proof size to each
// vertex's current representative. A pair's size is then
// size[a] + size[b] - 2 * size[lca(a, b)] once both are lifted to the
// representative of their LCA.
class SizeEstimator {
 public:
  // `extra` lists pairs beyond the congruence justifications that will be
  // asked of pair_size(); their LCAs join the single off-line pass.
  explicit SizeEstimator(const CGraphSnapshot& snap, std::span<const VertexPair> extra = {});

  // Tree size of the forest proof between a and b (same class).
  Size pair_size(VertexId a, VertexId b);

  EstimateTable finish() &&;

 private:
  VertexId find(VertexId v);
  void lift(VertexId v, VertexId target);
  Size dist(VertexId v);
  VertexId lca(VertexId a, VertexId b) const;

  const CGraphSnapshot& snap_;
  std::unordered_map<std::uint64_t, VertexId> lca_;
  std::unordered_map<std::uint64_t, Size> memo_;
  std::vector<VertexId> parent_;
  std::vector<Size> size_;
  std::vector<VertexId> scratch_;
  std::size_t ops_ = 0;
};

EstimateTable estimate_sizes(const CGraphSnapshot& snap);

struct GreedyResult {
  ProofCert cert;
  std::size_t fuel_spent = 0;
};

inline constexpr std::size_t kDefaultFuel = 10;

// Top-down extraction: each (start, end) obligation is solved by a shortest
// path under the estimates. Congruence edges on a chosen path open new
// obligations while fuel lasts; afterwards their subproofs come from the
// reduced forest.
GreedyResult greedy_extract(const CGraphSnapshot& snap, VertexId s, VertexId t, const EstimateTable& est,
                            std::size_t fuel = kDefaultFuel);

}  // namespace ccproof
