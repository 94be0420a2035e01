#include "ccproof/treeopt.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "cert_builder.hpp"
#include "ccproof/error.hpp"
#include "ccproof/parallel.hpp"

namespace ccproof {

namespace {

std::uint64_t unordered_key(VertexId a, VertexId b) {
  return a < b ? detail::ordered_key(a, b) : detail::ordered_key(b, a);
}

}  // namespace

DistTable::DistTable(const CGraphSnapshot& snap) : weights_(axiom_unit_weights(snap)) {
  for (EdgeId e : snap.congruence_edges()) {
    const CongruenceJustification& j = snap.edge(e).congruence();
    VertexId lo = std::min(j.child_left, j.child_right);
    VertexId hi = std::max(j.child_left, j.child_right);
    auto [it, inserted] = index_.emplace(unordered_key(lo, hi), pairs_.size());
    if (inserted) {
      pairs_.push_back(Pair{lo, hi});
      pair_edges_.emplace_back();
    }
    edge_pair_.emplace(e, it->second);
    pair_edges_[it->second].push_back(e);
  }
  dist_.assign(pairs_.size(), kInfinite);
  paths_.resize(pairs_.size());
}

std::size_t DistTable::index(VertexId a, VertexId b) const {
  auto it = index_.find(unordered_key(a, b));
  return it == index_.end() ? pairs_.size() : it->second;
}

Size DistTable::get(VertexId a, VertexId b) const {
  if (a == b) return 0;
  auto it = index_.find(unordered_key(a, b));
  return it == index_.end() ? kInfinite : dist_[it->second];
}

void DistTable::improve(std::size_t i, Size value, EdgePath path) {
  dist_[i] = value;
  paths_[i] = std::move(path);
  for (EdgeId e : pair_edges_[i]) weights_[e.index()] = value;
}

namespace {

bool sequential_pass(DistTable& table, PathSearch& search) {
  bool changed = false;
  for (std::size_t i = 0; i < table.num_pairs(); ++i) {
    const auto& p = table.pair(i);
    auto found = search.find(p.lo, p.hi, table.weights());
    if (found && found->total < table.value(i)) {
      table.improve(i, found->total, std::move(found->path));
      changed = true;
    }
  }
  return changed;
}

bool parallel_pass(const CGraphSnapshot& snap, DistTable& table) {
  const std::size_t n = table.num_pairs();
  std::vector<std::optional<WeightedPath>> found(n);
  const std::vector<Size>& weights = table.weights();
#pragma omp parallel num_threads(parallel::thread_count())
  {
    PathSearch search(snap);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      const auto& p = table.pair(static_cast<std::size_t>(i));
      found[static_cast<std::size_t>(i)] = search.find(p.lo, p.hi, weights);
    }
  }
  bool changed = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (found[i] && found[i]->total < table.value(i)) {
      table.improve(i, found[i]->total, std::move(found[i]->path));
      changed = true;
    }
  }
  return changed;
}

}  // namespace

TreeOptTable optimal_tree_size_table(const CGraphSnapshot& snap, PassSchedule schedule, const PassObserver& observer) {
  TreeOptTable out{DistTable(snap), 0};
  const std::size_t max_passes = snap.congruence_edges().size();
  PathSearch search(snap);
  while (out.passes < max_passes) {
    bool changed = schedule == PassSchedule::Sequential ? sequential_pass(out.dist, search)
                                                        : parallel_pass(snap, out.dist);
    ++out.passes;
    if (observer) observer(out.passes, out.dist);
    if (!changed) break;
  }
  return out;
}

namespace {

class TreeOptBuilder {
 public:
  TreeOptBuilder(const CGraphSnapshot& snap, const DistTable& table) : snap_(snap), table_(table) {}

  ProofCert build(VertexId from, const EdgePath& path) {
    return detail::cert_from_path(snap_, from, path, [this](VertexId l, VertexId r) { return sub(l, r); });
  }

 private:
  SubCert sub(VertexId l, VertexId r) {
    const std::uint64_t key = detail::ordered_key(l, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) throw std::logic_error("cyclic congruence subproof reconstruction");
    const VertexId lo = std::min(l, r);
    const VertexId hi = std::max(l, r);
    // Every pair used by a finite-weight path has a recorded witness path.
    const std::size_t i = table_.index(lo, hi);
    if (i == table_.num_pairs()) throw std::logic_error("congruence pair missing from the distance table");
    EdgePath path = l == lo ? table_.path(i) : reversed(table_.path(i));
    auto cert = std::make_shared<const ProofCert>(build(l, path));
    active_.erase(key);
    memo_.emplace(key, cert);
    return cert;
  }

  const CGraphSnapshot& snap_;
  const DistTable& table_;
  std::unordered_map<std::uint64_t, SubCert> memo_;
  std::unordered_set<std::uint64_t> active_;
};

}  // namespace

ProofCert treeopt_extract(const CGraphSnapshot& snap, const TreeOptTable& table, VertexId s, VertexId t) {
  WeightedPath top = weighted_shortest_path(snap, s, t, table.dist.weights());
  return TreeOptBuilder(snap, table.dist).build(s, top.path);
}

ProofCert treeopt_extract(const CGraphSnapshot& snap, VertexId s, VertexId t) {
  return treeopt_extract(snap, optimal_tree_size_table(snap), s, t);
}

}  // namespace ccproof
