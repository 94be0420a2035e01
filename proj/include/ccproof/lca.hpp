#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ccproof/engine.hpp"

namespace ccproof {

using VertexPair = std::pair<VertexId, VertexId>;

// Tarjan's off-line lowest common ancestors over the snapshot's reduced
// forest: one depth-first pass answers every query. Pairs in different trees
// get an invalid id.
std::vector<VertexId> offline_lca(const CGraphSnapshot& snap, std::span<const VertexPair> queries);

}  // namespace ccproof
