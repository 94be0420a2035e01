#include "ccproof/engine.hpp"

#include <algorithm>

#include <boost/container_hash/hash.hpp>

#include "ccproof/error.hpp"

namespace ccproof {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint64_t unordered_key(VertexId a, VertexId b) {
  return a < b ? pair_key(a.value, b.value) : pair_key(b.value, a.value);
}

}  // namespace

std::size_t Engine::SigHash::operator()(const std::vector<std::uint32_t>& key) const noexcept {
  return boost::hash_range(key.begin(), key.end());
}

Engine::Engine(TermBank bank) : bank_(std::move(bank)) {}

VertexId Engine::find(VertexId v) const {
  VertexId r = v;
  while (uf_parent_[r.index()] != r) r = uf_parent_[r.index()];
  while (uf_parent_[v.index()] != r) {
    VertexId next = uf_parent_[v.index()];
    uf_parent_[v.index()] = r;
    v = next;
  }
  return r;
}

std::vector<std::uint32_t> Engine::signature(VertexId v) const {
  const Vertex& vx = vertices_[v.index()];
  std::vector<std::uint32_t> sig;
  sig.reserve(vx.children.size() + 1);
  sig.push_back(vx.symbol);
  for (VertexId c : vx.children) sig.push_back(find(c).value);
  return sig;
}

VertexId Engine::existing_vertex(TermId t) const {
  auto it = term_vertex_.find(t);
  if (it == term_vertex_.end()) {
    throw Error(ErrorKind::UnknownTerm, "term " + std::to_string(t.value) + " was never added");
  }
  return it->second;
}

VertexId Engine::new_vertex(TermId t, bool lookup_congruent) {
  Vertex vx;
  vx.term = t;
  vx.symbol = bank_.symbol(t);
  for (TermId c : bank_.args(t)) vx.children.push_back(add_term(c));

  VertexId v(vertices_.size());
  vertices_.push_back(std::move(vx));
  term_vertex_.emplace(t, v);
  uf_parent_.push_back(v);
  uf_size_.push_back(1);
  class_parents_.emplace_back();

  std::vector<VertexId> roots;
  for (VertexId c : vertices_[v.index()].children) {
    VertexId r = find(c);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) {
      roots.push_back(r);
      class_parents_[r.index()].push_back(v);
    }
  }

  auto sig = signature(v);
  auto it = sig_table_.find(sig);
  if (it == sig_table_.end()) {
    sig_table_.emplace(std::move(sig), v);
  } else if (lookup_congruent) {
    enqueue_congruence(it->second, v);
  }
  return v;
}

VertexId Engine::add_term(TermId t) {
  if (auto it = term_vertex_.find(t); it != term_vertex_.end()) return it->second;
  return new_vertex(t, true);
}

AxiomId Engine::declare_axiom(TermId lhs, TermId rhs) {
  bank_.args(lhs);
  bank_.args(rhs);
  AxiomId id(axioms_.size());
  axioms_.push_back(Equation{lhs, rhs});
  return id;
}

void Engine::activate(AxiomId axiom) {
  if (axiom.index() >= axioms_.size()) {
    throw Error(ErrorKind::UnknownAxiom, "axiom " + std::to_string(axiom.value));
  }
  const Equation eq = axioms_[axiom.index()];
  VertexId u = add_term(eq.lhs);
  VertexId v = add_term(eq.rhs);
  if (!active_pairs_.insert(pair_key(eq.lhs.value, eq.rhs.value)).second) {
    ++stats_.duplicate_axioms_dropped;
    return;
  }
  EdgeId e = record_edge(u, v, AxiomJustification{axiom, true});
  ++num_axiom_edges_;
  pending_.push_back(Pending{u, v, e, 0});
}

AxiomId Engine::assert_equal(TermId lhs, TermId rhs) {
  AxiomId id = declare_axiom(lhs, rhs);
  activate(id);
  return id;
}

EdgeId Engine::record_edge(VertexId u, VertexId v, Justification j) {
  EdgeId id(edges_.size());
  edges_.push_back(Edge{u, v, j});
  forest_edge_.push_back(false);
  return id;
}

// Queues the single-argument links that prove p = q by congruence. When more
// than one argument differs, intermediate terms are materialized so that each
// link changes one argument, left to right.
void Engine::enqueue_congruence(VertexId p, VertexId q) {
  if (q < p) std::swap(p, q);
  if (!detected_pairs_.insert(pair_key(p.value, q.value)).second) return;

  const std::vector<VertexId> target = vertices_[q.index()].children;
  std::vector<std::uint32_t> differing;
  for (std::uint32_t i = 0; i < target.size(); ++i) {
    if (vertices_[p.index()].children[i] != target[i]) differing.push_back(i);
  }
  VertexId cur = p;
  for (std::size_t k = 0; k < differing.size(); ++k) {
    std::uint32_t i = differing[k];
    VertexId next;
    if (k + 1 == differing.size()) {
      next = q;
    } else {
      TermId t = bank_.with_arg(vertices_[cur.index()].term, i, vertices_[target[i].index()].term);
      if (auto it = term_vertex_.find(t); it != term_vertex_.end()) {
        next = it->second;
      } else {
        next = new_vertex(t, false);
        ++stats_.materialized_vertices;
      }
    }
    pending_.push_back(Pending{cur, next, EdgeId{}, i});
    cur = next;
  }
}

void Engine::merge(VertexId a, VertexId b) {
  VertexId ra = find(a);
  VertexId rb = find(b);
  if (ra == rb) return;
  // Larger class survives; ties keep the smaller id as representative.
  if (uf_size_[ra.index()] < uf_size_[rb.index()] ||
      (uf_size_[ra.index()] == uf_size_[rb.index()] && rb < ra)) {
    std::swap(ra, rb);
  }
  uf_parent_[rb.index()] = ra;
  uf_size_[ra.index()] += uf_size_[rb.index()];

  std::vector<VertexId> moved = std::move(class_parents_[rb.index()]);
  class_parents_[rb.index()].clear();
  for (VertexId p : moved) {
    auto sig = signature(p);
    auto it = sig_table_.find(sig);
    if (it == sig_table_.end()) {
      sig_table_.emplace(std::move(sig), p);
    } else if (it->second != p) {
      enqueue_congruence(it->second, p);
    }
  }
  auto& keep = class_parents_[ra.index()];
  keep.insert(keep.end(), moved.begin(), moved.end());
}

std::size_t Engine::rebuild() {
  std::size_t added = 0;
  while (!pending_.empty()) {
    Pending job = pending_.front();
    pending_.pop_front();
    if (job.axiom_edge.valid()) {
      if (find(job.a) != find(job.b)) {
        forest_edge_[job.axiom_edge.index()] = true;
        merge(job.a, job.b);
      }
      continue;
    }
    if (!congruence_pairs_.insert(unordered_key(job.a, job.b)).second) continue;
    const VertexId left = vertices_[job.a.index()].children[job.arg_index];
    const VertexId right = vertices_[job.b.index()].children[job.arg_index];
    CongruenceJustification just{left, right, job.arg_index};
    if (find(job.a) != find(job.b)) {
      EdgeId e = record_edge(job.a, job.b, just);
      forest_edge_[e.index()] = true;
      ++added;
      merge(job.a, job.b);
    } else if (num_congruence_edges() < kCongruenceCapFactor * num_axiom_edges_) {
      record_edge(job.a, job.b, just);
      ++added;
    } else {
      ++stats_.redundant_congruences_dropped;
    }
  }
  return added;
}

bool Engine::are_equal(TermId a, TermId b) const {
  VertexId va = existing_vertex(a);
  VertexId vb = existing_vertex(b);
  if (!pending_.empty()) throw Error(ErrorKind::PendingMerges, "rebuild before querying");
  return find(va) == find(vb);
}

CGraphSnapshot Engine::snapshot() const {
  if (!pending_.empty()) throw Error(ErrorKind::PendingMerges, "rebuild before taking a snapshot");
  CGraphSnapshot s;
  s.bank_ = std::make_shared<const TermBank>(bank_);
  const std::size_t nv = vertices_.size();
  s.vertex_terms_.reserve(nv);
  s.child_offset_.clear();
  s.child_offset_.reserve(nv + 1);
  for (std::size_t i = 0; i < nv; ++i) {
    s.vertex_terms_.push_back(vertices_[i].term);
    s.child_offset_.push_back(static_cast<std::uint32_t>(s.child_pool_.size()));
    s.child_pool_.insert(s.child_pool_.end(), vertices_[i].children.begin(), vertices_[i].children.end());
  }
  s.child_offset_.push_back(static_cast<std::uint32_t>(s.child_pool_.size()));
  s.term_vertex_ = term_vertex_;
  s.edges_ = edges_;
  s.axioms_ = axioms_;
  s.forest_edge_ = forest_edge_;
  s.stats_ = stats_;

  std::vector<std::vector<EdgeId>> incident(nv);
  std::vector<std::vector<EdgeId>> forest_adj(nv);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    EdgeId e(i);
    const Edge& ed = edges_[i];
    (ed.is_congruence() ? s.congruence_edges_ : s.axiom_edges_).push_back(e);
    incident[ed.u.index()].push_back(e);
    if (ed.v != ed.u) incident[ed.v.index()].push_back(e);
    if (forest_edge_[i]) {
      s.forest_edges_.push_back(e);
      forest_adj[ed.u.index()].push_back(e);
      forest_adj[ed.v.index()].push_back(e);
    }
  }
  s.incident_offset_.clear();
  s.incident_offset_.reserve(nv + 1);
  for (auto& list : incident) {
    s.incident_offset_.push_back(static_cast<std::uint32_t>(s.incident_pool_.size()));
    s.incident_pool_.insert(s.incident_pool_.end(), list.begin(), list.end());
  }
  s.incident_offset_.push_back(static_cast<std::uint32_t>(s.incident_pool_.size()));

  // Each forest tree is rooted at the union-find representative of its class.
  s.forest_parent_.assign(nv, VertexId{});
  s.parent_edge_.assign(nv, EdgeId{});
  s.root_.assign(nv, VertexId{});
  s.depth_.assign(nv, 0);
  std::vector<VertexId> queue;
  for (std::size_t i = 0; i < nv; ++i) {
    VertexId r(i);
    if (find(r) != r) continue;
    s.root_[i] = r;
    queue.assign(1, r);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId x = queue[head];
      for (EdgeId e : forest_adj[x.index()]) {
        VertexId y = edges_[e.index()].other(x);
        if (y == r || s.forest_parent_[y.index()].valid()) continue;
        s.forest_parent_[y.index()] = x;
        s.parent_edge_[y.index()] = e;
        s.root_[y.index()] = r;
        s.depth_[y.index()] = s.depth_[x.index()] + 1;
        queue.push_back(y);
      }
    }
  }
  return s;
}

}  // namespace ccproof
