#include "ccproof/optdag.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <unordered_map>

#include "ccproof/error.hpp"
#include "ccproof/parallel.hpp"

namespace ccproof {

namespace {

class VertexSets {
 public:
  explicit VertexSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) { parent_[find(a.value)] = find(b.value); }
  bool same(VertexId a, VertexId b) { return find(a.value) == find(b.value); }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

std::vector<EdgeId> fixpoint_activation(const CGraphSnapshot& snap, std::span<const EdgeId> edges) {
  VertexSets sets(snap.num_vertices());
  std::vector<EdgeId> order;
  std::vector<EdgeId> waiting;
  for (EdgeId e : edges) {
    const Edge& edge = snap.edge(e);
    if (edge.is_congruence()) {
      waiting.push_back(e);
    } else {
      sets.unite(edge.u, edge.v);
      order.push_back(e);
    }
  }
  bool changed = true;
  while (changed && !waiting.empty()) {
    changed = false;
    std::vector<EdgeId> still;
    for (EdgeId e : waiting) {
      const Edge& edge = snap.edge(e);
      const CongruenceJustification& j = edge.congruence();
      if (sets.same(j.child_left, j.child_right)) {
        sets.unite(edge.u, edge.v);
        order.push_back(e);
        changed = true;
      } else {
        still.push_back(e);
      }
    }
    waiting = std::move(still);
  }
  return order;
}

bool fixpoint_e_connected(const CGraphSnapshot& snap, std::span<const EdgeId> edges, VertexId s, VertexId t) {
  if (s == t) return true;
  VertexSets sets(snap.num_vertices());
  for (EdgeId e : fixpoint_activation(snap, edges)) sets.unite(snap.edge(e).u, snap.edge(e).v);
  return sets.same(s, t);
}

namespace {

std::uint64_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The rank-th k-subset of {0..m-1} in lexicographic order.
void unrank_combination(std::uint64_t rank, std::size_t m, std::size_t k, std::vector<std::size_t>& out) {
  out.resize(k);
  std::size_t x = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (;;) {
      std::uint64_t below = choose(m - x - 1, k - i - 1);
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    out[i] = x++;
  }
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

class SubsetProbe {
 public:
  SubsetProbe(const CGraphSnapshot& snap, VertexId s, VertexId t, std::size_t limit)
      : snap_(snap), s_(s), t_(t), axioms_(snap.axiom_edges().begin(), snap.axiom_edges().end()) {
    if (axioms_.size() > limit) {
      throw Error(ErrorKind::TooLarge, std::to_string(axioms_.size()) + " non-congruence edges exceed the limit of " +
                                           std::to_string(limit));
    }
    if (!snap.same_class(s, t)) throw Error(ErrorKind::NotEquivalent, "goal terms are not equal");
  }

  std::size_t size() const { return axioms_.size(); }

  bool feasible(const std::vector<std::size_t>& idx, std::vector<EdgeId>& buf) const {
    buf.clear();
    for (std::size_t i : idx) buf.push_back(axioms_[i]);
    buf.insert(buf.end(), snap_.congruence_edges().begin(), snap_.congruence_edges().end());
    return fixpoint_e_connected(snap_, buf, s_, t_);
  }

  MinDag result(const std::vector<std::size_t>& idx) const {
    MinDag out;
    out.size = idx.size();
    for (std::size_t i : idx) out.witness.push_back(axioms_[i]);
    return out;
  }

 private:
  const CGraphSnapshot& snap_;
  VertexId s_, t_;
  std::vector<EdgeId> axioms_;
};

}  // namespace

MinDag brute_min_dag(const CGraphSnapshot& snap, VertexId s, VertexId t, std::size_t limit) {
  if (s == t) return {};
  SubsetProbe probe(snap, s, t, limit);
  const std::size_t m = probe.size();
  std::vector<EdgeId> buf;
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    do {
      if (probe.feasible(idx, buf)) return probe.result(idx);
    } while (next_combination(idx, m));
  }
  throw Error(ErrorKind::NotEquivalent, "goal not e-connected");
}

MinDag brute_min_dag_parallel(const CGraphSnapshot& snap, VertexId s, VertexId t, std::size_t limit) {
  if (s == t) return {};
  SubsetProbe probe(snap, s, t, limit);
  const std::size_t m = probe.size();
  for (std::size_t k = 0; k <= m; ++k) {
    const std::uint64_t total = choose(m, k);
    std::atomic<std::uint64_t> best{total};
#pragma omp parallel num_threads(parallel::thread_count())
    {
      std::vector<std::size_t> idx;
      std::vector<EdgeId> buf;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t r = 0; r < static_cast<std::int64_t>(total); ++r) {
        const auto rank = static_cast<std::uint64_t>(r);
        if (rank >= best.load(std::memory_order_relaxed)) continue;
        unrank_combination(rank, m, k, idx);
        if (!probe.feasible(idx, buf)) continue;
        std::uint64_t cur = best.load();
        while (rank < cur && !best.compare_exchange_weak(cur, rank)) {
        }
      }
    }
    if (best.load() < total) {
      std::vector<std::size_t> idx;
      unrank_combination(best.load(), m, k, idx);
      return probe.result(idx);
    }
  }
  throw Error(ErrorKind::NotEquivalent, "goal not e-connected");
}

namespace {

class TreeSearch {
 public:
  explicit TreeSearch(const CGraphSnapshot& snap) : snap_(snap), cong_bit_(snap.num_edges(), -1) {
    int b = 0;
    for (EdgeId e : snap.congruence_edges()) cong_bit_[e.index()] = b++;
  }

  Size value(VertexId a, VertexId b, std::uint32_t mask) {
    if (a == b) return 0;
    const std::uint64_t key = (std::uint64_t{mask} << 32) | (std::uint64_t{a.value} << 16) | b.value;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Size best = kInfinite;
    std::vector<bool> visited(snap_.num_vertices(), false);
    visited[a.index()] = true;
    dfs(a, b, mask, 0, visited, best);
    memo_.emplace(key, best);
    return best;
  }

 private:
  Size edge_cost(EdgeId e, std::uint32_t mask) {
    const Edge& edge = snap_.edge(e);
    if (!edge.is_congruence()) return 1;
    const std::uint32_t bit = 1u << cong_bit_[e.index()];
    if (mask & bit) return kInfinite;
    return value(edge.congruence().child_left, edge.congruence().child_right, mask | bit);
  }

  void dfs(VertexId v, VertexId target, std::uint32_t mask, Size acc, std::vector<bool>& visited, Size& best) {
    for (EdgeId e : snap_.incident(v)) {
      VertexId w = snap_.edge(e).other(v);
      if (w == v || visited[w.index()]) continue;
      Size c = edge_cost(e, mask);
      if (c == kInfinite) continue;
      Size total = saturating_add(acc, c);
      if (total >= best) continue;
      if (w == target) {
        best = total;
        continue;
      }
      visited[w.index()] = true;
      dfs(w, target, mask, total, visited, best);
      visited[w.index()] = false;
    }
  }

  const CGraphSnapshot& snap_;
  std::vector<int> cong_bit_;
  std::unordered_map<std::uint64_t, Size> memo_;
};

}  // namespace

Size brute_min_tree(const CGraphSnapshot& snap, VertexId s, VertexId t, TreeLimits limits) {
  const std::size_t nc = snap.congruence_edges().size();
  if (snap.num_vertices() > limits.max_vertices || nc > limits.max_congruences || nc > 31 ||
      snap.num_vertices() > 0xffff) {
    throw Error(ErrorKind::TooLarge, std::to_string(snap.num_vertices()) + " vertices and " + std::to_string(nc) +
                                         " congruence edges exceed the tree oracle limits");
  }
  Size v = TreeSearch(snap).value(s, t, 0);
  if (v == kInfinite) throw Error(ErrorKind::NotEquivalent, "goal terms are not equal");
  return v;
}

}  // namespace ccproof
