#include "ccproof/lca.hpp"

#include <numeric>

namespace ccproof {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n), rank(n, 0) { std::iota(parent.begin(), parent.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (rank[a] < rank[b]) std::swap(a, b);
    parent[b] = a;
    if (rank[a] == rank[b]) ++rank[a];
    return a;
  }

  std::vector<std::uint32_t> parent;
  std::vector<std::uint8_t> rank;
};

}  // namespace

std::vector<VertexId> offline_lca(const CGraphSnapshot& snap, std::span<const VertexPair> queries) {
  const std::size_t n = snap.num_vertices();
  std::vector<VertexId> answer(queries.size());

  std::vector<std::vector<std::uint32_t>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    VertexId p = snap.forest_parent(VertexId(v));
    if (p.valid()) kids[p.index()].push_back(static_cast<std::uint32_t>(v));
  }
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> asked(n);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    auto [a, b] = queries[q];
    if (!snap.same_class(a, b)) continue;
    asked[a.index()].emplace_back(b.value, q);
    if (a != b) asked[b.index()].emplace_back(a.value, q);
  }

  DisjointSets sets(n);
  std::vector<std::uint32_t> ancestor(n);
  std::vector<bool> done(n, false);
  struct Frame {
    std::uint32_t v;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  for (std::size_t r = 0; r < n; ++r) {
    if (snap.forest_parent(VertexId(r)).valid()) continue;
    stack.push_back(Frame{static_cast<std::uint32_t>(r), 0});
    ancestor[r] = static_cast<std::uint32_t>(r);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_child < kids[f.v].size()) {
        std::uint32_t c = kids[f.v][f.next_child++];
        ancestor[c] = c;
        stack.push_back(Frame{c, 0});
        continue;
      }
      const std::uint32_t v = f.v;
      done[v] = true;
      for (auto [other, q] : asked[v]) {
        if (done[other]) answer[q] = VertexId(ancestor[sets.find(other)]);
      }
      stack.pop_back();
      if (!stack.empty()) {
        const std::uint32_t p = stack.back().v;
        ancestor[sets.unite(p, v)] = p;
      }
    }
  }
  return answer;
}

}  // namespace ccproof
