#include <algorithm>
#include <queue>

#include "ccproof/engine.hpp"
#include "ccproof/error.hpp"

namespace ccproof {

CGraphSnapshot::CGraphSnapshot() : bank_(std::make_shared<const TermBank>()) {
  child_offset_.push_back(0);
  incident_offset_.push_back(0);
}

VertexId CGraphSnapshot::vertex(TermId t) const {
  auto it = term_vertex_.find(t);
  if (it == term_vertex_.end()) {
    throw Error(ErrorKind::UnknownTerm, "term " + std::to_string(t.value) + " has no vertex");
  }
  return it->second;
}

std::span<const VertexId> CGraphSnapshot::children(VertexId v) const {
  std::size_t i = v.index();
  return std::span<const VertexId>(child_pool_).subspan(child_offset_.at(i), child_offset_.at(i + 1) - child_offset_[i]);
}

std::span<const EdgeId> CGraphSnapshot::incident(VertexId v) const {
  std::size_t i = v.index();
  return std::span<const EdgeId>(incident_pool_)
      .subspan(incident_offset_.at(i), incident_offset_.at(i + 1) - incident_offset_[i]);
}

EdgePath forest_path(const CGraphSnapshot& snap, VertexId a, VertexId b) {
  if (!snap.same_class(a, b)) {
    throw Error(ErrorKind::NotEquivalent, "vertices " + std::to_string(a.value) + " and " +
                                              std::to_string(b.value) + " are in different e-classes");
  }
  auto up = [&](VertexId x) {
    EdgeId e = snap.parent_edge(x);
    return PathStep{e, snap.edge(e).u == x};
  };
  EdgePath from_a;
  EdgePath from_b;
  while (snap.depth(a) > snap.depth(b)) {
    from_a.push_back(up(a));
    a = snap.forest_parent(a);
  }
  while (snap.depth(b) > snap.depth(a)) {
    from_b.push_back(up(b));
    b = snap.forest_parent(b);
  }
  while (a != b) {
    from_a.push_back(up(a));
    a = snap.forest_parent(a);
    from_b.push_back(up(b));
    b = snap.forest_parent(b);
  }
  EdgePath tail = reversed(from_b);
  from_a.insert(from_a.end(), tail.begin(), tail.end());
  return from_a;
}

PathSearch::PathSearch(const CGraphSnapshot& snap)
    : snap_(&snap),
      label_(snap.num_vertices()),
      via_(snap.num_vertices()),
      stamp_(snap.num_vertices(), 0),
      settled_(snap.num_vertices(), false) {}

EdgePath reversed(const EdgePath& path) {
  EdgePath out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(PathStep{it->edge, !it->forward});
  return out;
}

WeightedPath PathSearch::run(VertexId s, VertexId t, std::span<const Size> weights) {
  if (!snap_->same_class(s, t)) {
    throw Error(ErrorKind::NotEquivalent, "vertices " + std::to_string(s.value) + " and " +
                                              std::to_string(t.value) + " are in different e-classes");
  }
  auto found = find(s, t, weights);
  if (!found) {
    throw Error(ErrorKind::NoFinitePath, "no finite-weight path from " + std::to_string(s.value) +
                                             " to " + std::to_string(t.value));
  }
  return std::move(*found);
}

std::optional<WeightedPath> PathSearch::find(VertexId s, VertexId t, std::span<const Size> weights) {
  const CGraphSnapshot& snap = *snap_;
  if (!snap.same_class(s, t)) return std::nullopt;
  if (s == t) return WeightedPath{};
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  using Entry = std::pair<Label, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto touch = [&](std::uint32_t v) {
    if (stamp_[v] != epoch_) {
      stamp_[v] = epoch_;
      settled_[v] = false;
      label_[v] = Label{kInfinite, 0, 0};
    }
  };
  touch(s.value);
  label_[s.value] = Label{0, 0, 0};
  heap.emplace(label_[s.value], s.value);
  while (!heap.empty()) {
    auto [lab, x] = heap.top();
    heap.pop();
    if (settled_[x] || lab != label_[x]) continue;
    settled_[x] = true;
    if (x == t.value) break;
    for (EdgeId e : snap.incident(VertexId(x))) {
      Size w = weights[e.index()];
      if (w == kInfinite) continue;
      const Edge& ed = snap.edge(e);
      std::uint32_t y = ed.other(VertexId(x)).value;
      if (y == x) continue;
      touch(y);
      if (settled_[y]) continue;
      Label cand{saturating_add(lab.weight, w), lab.edges + 1, std::max(lab.max_edge, e.value)};
      if (cand.weight == kInfinite) continue;
      if (cand < label_[y]) {
        label_[y] = cand;
        via_[y] = PathStep{e, ed.u.value == x};
        heap.emplace(cand, y);
      }
    }
  }
  if (stamp_[t.value] != epoch_ || !settled_[t.value]) return std::nullopt;
  WeightedPath out;
  out.total = label_[t.value].weight;
  for (std::uint32_t x = t.value; x != s.value;) {
    PathStep step = via_[x];
    out.path.push_back(step);
    const Edge& ed = snap.edge(step.edge);
    x = (step.forward ? ed.u : ed.v).value;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

WeightedPath weighted_shortest_path(const CGraphSnapshot& snap, VertexId s, VertexId t,
                                    std::span<const Size> weights) {
  return PathSearch(snap).run(s, t, weights);
}

std::vector<Size> axiom_unit_weights(const CGraphSnapshot& snap, Size congruence_weight) {
  std::vector<Size> w(snap.num_edges(), 1);
  for (EdgeId e : snap.congruence_edges()) w[e.index()] = congruence_weight;
  return w;
}

}  // namespace ccproof
