#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "ccproof/certificate.hpp"
#include "ccproof/engine.hpp"

namespace ccproof {

// Traditional proof production: walk the reduced-forest path and expand each
// congruence edge recursively over the forest. Subproofs are memoized per
// ordered vertex pair and shared.
class ForestProver {
 public:
  explicit ForestProver(const CGraphSnapshot& snap) : snap_(&snap) {}

  SubCert prove(VertexId a, VertexId b);

 private:
  const CGraphSnapshot* snap_;
  std::unordered_map<std::uint64_t, SubCert> memo_;
};

ProofCert unoptimized_proof(const CGraphSnapshot& snap, VertexId s, VertexId t);

struct ReducedProof {
  ProofCert cert;
  // Term table the certificate refers to: the snapshot's table, possibly
  // extended by terms the re-derivation materialized.
  std::shared_ptr<const TermBank> bank;
  std::vector<AxiomId> kept;
};

// Deletion-based reduction over the axioms the input certificate cites,
// tried in ascending id order. Each trial re-runs congruence closure on the
// surviving axioms alone.
ReducedProof reduce_proof(const CGraphSnapshot& snap, Equation goal, const ProofCert& cert);

// True when congruence closure over `axioms` (ids into snap.axioms()) proves goal.
bool provable_with(const CGraphSnapshot& snap, Equation goal, const std::vector<AxiomId>& axioms);

}  // namespace ccproof
