#include "ccproof/greedy.hpp"

#include <deque>
#include <functional>
#include <stdexcept>

#include "cert_builder.hpp"
#include "ccproof/error.hpp"
#include "ccproof/extract_basic.hpp"

namespace ccproof {

namespace {

std::uint64_t unordered_key(VertexId a, VertexId b) {
  return a < b ? detail::ordered_key(a, b) : detail::ordered_key(b, a);
}

}  // namespace

SizeEstimator::SizeEstimator(const CGraphSnapshot& snap, std::span<const VertexPair> extra)
    : snap_(snap), parent_(snap.num_vertices()), size_(snap.num_vertices(), 0) {
  for (std::size_t v = 0; v < parent_.size(); ++v) parent_[v] = VertexId(v);
  std::vector<VertexPair> queries;
  queries.reserve(snap.congruence_edges().size() + extra.size());
  for (EdgeId e : snap.congruence_edges()) {
    const CongruenceJustification& j = snap.edge(e).congruence();
    queries.emplace_back(j.child_left, j.child_right);
  }
  queries.insert(queries.end(), extra.begin(), extra.end());
  std::vector<VertexId> answers = offline_lca(snap, queries);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (answers[q].valid()) lca_.emplace(unordered_key(queries[q].first, queries[q].second), answers[q]);
  }
}

VertexId SizeEstimator::lca(VertexId a, VertexId b) const {
  if (auto it = lca_.find(unordered_key(a, b)); it != lca_.end()) return it->second;
  if (!snap_.same_class(a, b)) throw Error(ErrorKind::NotEquivalent, "no common ancestor");
  while (snap_.depth(a) > snap_.depth(b)) a = snap_.forest_parent(a);
  while (snap_.depth(b) > snap_.depth(a)) b = snap_.forest_parent(b);
  while (a != b) {
    a = snap_.forest_parent(a);
    b = snap_.forest_parent(b);
  }
  return a;
}

VertexId SizeEstimator::find(VertexId v) {
  scratch_.clear();
  VertexId x = v;
  while (parent_[x.index()] != x) {
    scratch_.push_back(x);
    x = parent_[x.index()];
  }
  // Nearest-to-root first, so each parent already holds its full distance.
  for (std::size_t i = scratch_.size(); i-- > 0;) {
    VertexId y = scratch_[i];
    VertexId p = parent_[y.index()];
    if (p == x) continue;
    size_[y.index()] = saturating_add(size_[y.index()], size_[p.index()]);
    parent_[y.index()] = x;
    ++ops_;
  }
  return x;
}

Size SizeEstimator::dist(VertexId v) {
  VertexId r = find(v);
  return r == v ? 0 : size_[v.index()];
}

// Joins v's set upward until it reaches the set holding `anchor`. The nested
// pair_size calls may themselves pull anchor's set higher, so the target is
// re-read every round.
void SizeEstimator::lift(VertexId v, VertexId anchor) {
  for (;;) {
    VertexId x = find(v);
    if (x == find(anchor)) return;
    EdgeId e = snap_.parent_edge(x);
    VertexId p = snap_.forest_parent(x);
    if (!p.valid()) throw std::logic_error("estimation climbed past a forest root");
    const Edge& edge = snap_.edge(e);
    Size cost = 1;
    if (edge.is_congruence()) cost = pair_size(edge.congruence().child_left, edge.congruence().child_right);
    parent_[x.index()] = p;
    size_[x.index()] = cost;
    ++ops_;
  }
}

Size SizeEstimator::pair_size(VertexId a, VertexId b) {
  if (a == b) return 0;
  const std::uint64_t key = unordered_key(a, b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  VertexId l = lca(a, b);
  lift(a, l);
  lift(b, l);
  Size da = dist(a);
  Size db = dist(b);
  Size dl = dist(l);
  Size out = da - dl + (db - dl);
  memo_.emplace(key, out);
  return out;
}

EstimateTable SizeEstimator::finish() && {
  EstimateTable t;
  t.uf_parent = std::move(parent_);
  t.size_to_parent = std::move(size_);
  t.union_find_ops = ops_;
  return t;
}

EstimateTable estimate_sizes(const CGraphSnapshot& snap) {
  SizeEstimator est(snap);
  std::unordered_map<EdgeId, Size> sizes;
  std::vector<Size> weights = axiom_unit_weights(snap);
  for (EdgeId e : snap.congruence_edges()) {
    const CongruenceJustification& j = snap.edge(e).congruence();
    Size s = est.pair_size(j.child_left, j.child_right);
    sizes.emplace(e, s);
    weights[e.index()] = s;
  }
  EstimateTable t = std::move(est).finish();
  t.estimate = std::move(sizes);
  t.weights = std::move(weights);
  return t;
}

namespace {

constexpr std::size_t kFallback = static_cast<std::size_t>(-1);

struct Obligation {
  VertexId from;
  VertexId to;
  EdgePath path;
  // One entry per congruence step of `path`: the obligation proving it, or kFallback.
  std::vector<std::size_t> subs;
  bool solved = false;
};

class GreedyRun {
 public:
  GreedyRun(const CGraphSnapshot& snap, const EstimateTable& est, std::size_t fuel)
      : snap_(snap), est_(est), fuel_(fuel), search_(snap), forest_(snap) {}

  GreedyResult run(VertexId s, VertexId t) {
    open(s, t);
    while (!queue_.empty()) {
      std::size_t i = queue_.front();
      queue_.pop_front();
      solve(i);
    }
    certs_.assign(obs_.size(), nullptr);
    GreedyResult out;
    out.cert = *build(0);
    out.fuel_spent = spent_;
    return out;
  }

 private:
  std::size_t open(VertexId from, VertexId to) {
    std::size_t i = obs_.size();
    obs_.push_back(Obligation{from, to, {}, {}, false});
    by_pair_.emplace(detail::ordered_key(from, to), i);
    queue_.push_back(i);
    return i;
  }

  // True when obligation `from` already depends, directly or not, on `target`.
  bool reaches(std::size_t from, std::size_t target) const {
    std::vector<std::size_t> stack{from};
    std::vector<bool> seen(obs_.size(), false);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      if (x == target) return true;
      if (seen[x]) continue;
      seen[x] = true;
      for (std::size_t c : obs_[x].subs) {
        if (c != kFallback) stack.push_back(c);
      }
    }
    return false;
  }

  void solve(std::size_t i) {
    EdgePath path = search_.run(obs_[i].from, obs_[i].to, est_.weights).path;
    std::vector<std::size_t> subs;
    for (const PathStep& ps : path) {
      const Edge& e = snap_.edge(ps.edge);
      if (!e.is_congruence()) continue;
      const CongruenceJustification& j = e.congruence();
      VertexId l = ps.forward ? j.child_left : j.child_right;
      VertexId r = ps.forward ? j.child_right : j.child_left;
      auto it = by_pair_.find(detail::ordered_key(l, r));
      if (it != by_pair_.end() && !reaches(it->second, i)) {
        subs.push_back(it->second);
      } else if (fuel_ > 0) {
        --fuel_;
        ++spent_;
        std::size_t k = obs_.size();
        obs_.push_back(Obligation{l, r, {}, {}, false});
        by_pair_.emplace(detail::ordered_key(l, r), k);
        queue_.push_back(k);
        subs.push_back(k);
      } else {
        subs.push_back(kFallback);
      }
    }
    obs_[i].path = std::move(path);
    obs_[i].subs = std::move(subs);
    obs_[i].solved = true;
  }

  SubCert build(std::size_t i) {
    if (certs_[i]) return certs_[i];
    const Obligation& ob = obs_[i];
    std::size_t k = 0;
    ProofCert cert = detail::cert_from_path(snap_, ob.from, ob.path, [&](VertexId l, VertexId r) {
      std::size_t sub = ob.subs[k++];
      return sub == kFallback ? forest_.prove(l, r) : build(sub);
    });
    certs_[i] = std::make_shared<const ProofCert>(std::move(cert));
    return certs_[i];
  }

  const CGraphSnapshot& snap_;
  const EstimateTable& est_;
  std::size_t fuel_;
  std::size_t spent_ = 0;
  PathSearch search_;
  ForestProver forest_;
  std::vector<Obligation> obs_;
  std::unordered_map<std::uint64_t, std::size_t> by_pair_;
  std::deque<std::size_t> queue_;
  std::vector<SubCert> certs_;
};

}  // namespace

GreedyResult greedy_extract(const CGraphSnapshot& snap, VertexId s, VertexId t, const EstimateTable& est,
                            std::size_t fuel) {
  return GreedyRun(snap, est, fuel).run(s, t);
}

}  // namespace ccproof
