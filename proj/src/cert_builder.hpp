#pragma once

#include <utility>

#include "ccproof/certificate.hpp"
#include "ccproof/engine.hpp"

namespace ccproof::detail {

// Turns an edge path starting at `from` into a rewrite chain. Axiom edges
// become root rewrites; a congruence edge becomes a rewrite of the differing
// argument, proven by `subproof(left_child, right_child)` in walk order.
template <class SubproofFn>
ProofCert cert_from_path(const CGraphSnapshot& snap, VertexId from, const EdgePath& path, SubproofFn&& subproof) {
  ProofCert cert;
  cert.start = snap.term(from);
  cert.steps.reserve(path.size());
  for (const PathStep& ps : path) {
    const Edge& e = snap.edge(ps.edge);
    VertexId to = ps.forward ? e.v : e.u;
    Step step;
    step.result = snap.term(to);
    if (e.is_congruence()) {
      const CongruenceJustification& j = e.congruence();
      VertexId l = ps.forward ? j.child_left : j.child_right;
      VertexId r = ps.forward ? j.child_right : j.child_left;
      step.position = {j.arg_index};
      step.just = CongruenceStep{subproof(l, r)};
    } else {
      const AxiomJustification& j = e.axiom();
      step.just = AxiomStep{j.axiom, ps.forward == j.forward};
    }
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

inline std::uint64_t ordered_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a.value) << 32) | b.value;
}

}  // namespace ccproof::detail
