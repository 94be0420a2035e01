#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ccproof/ids.hpp"
#include "ccproof/term.hpp"

namespace ccproof {

struct Equation {
  TermId lhs;
  TermId rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

// Edge justified by an input equality. Axiom edges are stored with u = lhs
// and v = rhs, so `forward` records that orientation.
struct AxiomJustification {
  AxiomId axiom;
  bool forward = true;
};

// Edge justified by congruence over a single argument: the endpoints share a
// head and differ only at `arg_index`, where u has child_left and v has
// child_right.
struct CongruenceJustification {
  VertexId child_left;
  VertexId child_right;
  std::uint32_t arg_index = 0;
};

using Justification = std::variant<AxiomJustification, CongruenceJustification>;

struct Edge {
  VertexId u;
  VertexId v;
  Justification just;

  bool is_congruence() const { return std::holds_alternative<CongruenceJustification>(just); }
  const CongruenceJustification& congruence() const { return std::get<CongruenceJustification>(just); }
  const AxiomJustification& axiom() const { return std::get<AxiomJustification>(just); }
  VertexId other(VertexId x) const { return x == u ? v : u; }
};

// One traversed edge; forward means the edge was walked from u to v.
struct PathStep {
  EdgeId edge;
  bool forward = true;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};
using EdgePath = std::vector<PathStep>;

// The same path walked from its far end.
EdgePath reversed(const EdgePath& path);

struct EngineStats {
  std::size_t duplicate_axioms_dropped = 0;
  std::size_t redundant_congruences_dropped = 0;
  std::size_t materialized_vertices = 0;
};

// Frozen c-graph: every recorded equality edge plus the reduced forest built
// from the merge-carrying unions. Immutable and safe to share across threads.
class CGraphSnapshot {
 public:
  CGraphSnapshot();

  const TermBank& bank() const { return *bank_; }
  std::shared_ptr<const TermBank> shared_bank() const { return bank_; }

  std::size_t num_vertices() const { return vertex_terms_.size(); }
  TermId term(VertexId v) const { return vertex_terms_.at(v.index()); }
  // Throws UnknownTerm when the term has no vertex.
  VertexId vertex(TermId t) const;
  bool has_vertex(TermId t) const { return term_vertex_.contains(t); }
  // Vertices of the i-th argument of v's term.
  std::span<const VertexId> children(VertexId v) const;

  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e.index()); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> congruence_edges() const { return congruence_edges_; }
  std::span<const EdgeId> axiom_edges() const { return axiom_edges_; }
  std::span<const EdgeId> incident(VertexId v) const;

  // Every declared input equality, indexed by AxiomId.
  std::span<const Equation> axioms() const { return axioms_; }

  bool is_forest_edge(EdgeId e) const { return forest_edge_.at(e.index()); }
  std::span<const EdgeId> forest_edges() const { return forest_edges_; }
  // Invalid for roots.
  VertexId forest_parent(VertexId v) const { return forest_parent_.at(v.index()); }
  EdgeId parent_edge(VertexId v) const { return parent_edge_.at(v.index()); }
  VertexId root(VertexId v) const { return root_.at(v.index()); }
  std::uint32_t depth(VertexId v) const { return depth_.at(v.index()); }
  bool same_class(VertexId a, VertexId b) const { return root(a) == root(b); }

  const EngineStats& stats() const { return stats_; }

 private:
  friend class Engine;

  std::shared_ptr<const TermBank> bank_;
  std::vector<TermId> vertex_terms_;
  std::unordered_map<TermId, VertexId> term_vertex_;
  std::vector<std::uint32_t> child_offset_;
  std::vector<VertexId> child_pool_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> congruence_edges_;
  std::vector<EdgeId> axiom_edges_;
  std::vector<std::uint32_t> incident_offset_;
  std::vector<EdgeId> incident_pool_;
  std::vector<Equation> axioms_;
  std::vector<bool> forest_edge_;
  std::vector<EdgeId> forest_edges_;
  std::vector<VertexId> forest_parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<VertexId> root_;
  std::vector<std::uint32_t> depth_;
  EngineStats stats_;
};

// Congruence closure that records every discovered equality as a c-graph edge,
// including equalities between vertices that are already equal.
class Engine {
 public:
  // Redundant congruence edges are recorded while |C| < kCongruenceCapFactor * |E \ C|.
  static constexpr std::size_t kCongruenceCapFactor = 10;

  Engine() : Engine(TermBank{}) {}
  explicit Engine(TermBank bank);

  TermBank& bank() { return bank_; }
  const TermBank& bank() const { return bank_; }

  VertexId add_term(TermId t);

  // Registers and activates an input equality; returns its id (assertion order).
  AxiomId assert_equal(TermId lhs, TermId rhs);
  // Registers an equality without adding its edge.
  AxiomId declare_axiom(TermId lhs, TermId rhs);
  void activate(AxiomId axiom);

  // Runs congruence propagation to a fixpoint; returns the number of
  // congruence edges recorded by this call.
  std::size_t rebuild();
  bool has_pending() const { return !pending_.empty(); }

  bool are_equal(TermId a, TermId b) const;

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_axiom_edges() const { return num_axiom_edges_; }
  std::size_t num_congruence_edges() const { return edges_.size() - num_axiom_edges_; }
  const EngineStats& stats() const { return stats_; }

  CGraphSnapshot snapshot() const;

 private:
  struct Vertex {
    TermId term;
    TermBank::SymbolId symbol;
    std::vector<VertexId> children;
  };
  struct Pending {
    VertexId a;
    VertexId b;
    EdgeId axiom_edge;  // invalid for a congruence candidate
    std::uint32_t arg_index = 0;
  };
  struct SigHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept;
  };

  VertexId find(VertexId v) const;
  VertexId new_vertex(TermId t, bool lookup_congruent);
  std::vector<std::uint32_t> signature(VertexId v) const;
  void enqueue_congruence(VertexId p, VertexId q);
  void merge(VertexId a, VertexId b);
  VertexId existing_vertex(TermId t) const;
  EdgeId record_edge(VertexId u, VertexId v, Justification j);

  TermBank bank_;
  std::vector<Vertex> vertices_;
  std::unordered_map<TermId, VertexId> term_vertex_;
  mutable std::vector<VertexId> uf_parent_;
  std::vector<std::uint32_t> uf_size_;
  std::vector<std::vector<VertexId>> class_parents_;
  std::unordered_map<std::vector<std::uint32_t>, VertexId, SigHash> sig_table_;

  std::vector<Equation> axioms_;
  std::unordered_set<std::uint64_t> active_pairs_;
  std::vector<Edge> edges_;
  std::vector<bool> forest_edge_;
  std::size_t num_axiom_edges_ = 0;
  std::unordered_set<std::uint64_t> congruence_pairs_;
  std::unordered_set<std::uint64_t> detected_pairs_;
  std::deque<Pending> pending_;
  EngineStats stats_;
};

// Unique reduced-forest path from a to b, climbing through their lowest
// common ancestor. Throws NotEquivalent across e-classes.
EdgePath forest_path(const CGraphSnapshot& snap, VertexId a, VertexId b);

struct WeightedPath {
  Size total = 0;
  EdgePath path;
};

// Reusable buffers for repeated shortest-path queries on one snapshot.
class PathSearch {
 public:
  explicit PathSearch(const CGraphSnapshot& snap);

  // Minimal-weight edge path from s to t over the whole c-graph. kInfinite
  // weights are unusable. Ties prefer fewer edges, then a smaller largest
  // edge id. Throws NotEquivalent or NoFinitePath.
  WeightedPath run(VertexId s, VertexId t, std::span<const Size> weights);
  // As run(), but reports an unreachable target as nullopt.
  std::optional<WeightedPath> find(VertexId s, VertexId t, std::span<const Size> weights);

 private:
  struct Label {
    Size weight;
    std::uint32_t edges;
    std::uint32_t max_edge;
    friend auto operator<=>(const Label&, const Label&) = default;
  };

  const CGraphSnapshot* snap_;
  std::vector<Label> label_;
  std::vector<PathStep> via_;
  std::vector<std::uint32_t> stamp_;
  std::vector<bool> settled_;
  std::uint32_t epoch_ = 0;
};

WeightedPath weighted_shortest_path(const CGraphSnapshot& snap, VertexId s, VertexId t,
                                    std::span<const Size> weights);

// Weight vector with every non-congruence edge at 1 and congruence edges at
// `congruence_weight`.
std::vector<Size> axiom_unit_weights(const CGraphSnapshot& snap, Size congruence_weight = kInfinite);

}  // namespace ccproof
