#include "ccproof/extract_basic.hpp"

#include <algorithm>

#include "cert_builder.hpp"
#include "ccproof/error.hpp"

namespace ccproof {

SubCert ForestProver::prove(VertexId a, VertexId b) {
  const std::uint64_t key = detail::ordered_key(a, b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  // Forest subproofs only use edges recorded before the congruence edge that
  // needs them, so this recursion is well founded.
  EdgePath path = forest_path(*snap_, a, b);
  auto cert = std::make_shared<const ProofCert>(
      detail::cert_from_path(*snap_, a, path, [this](VertexId l, VertexId r) { return prove(l, r); }));
  memo_.emplace(key, cert);
  return cert;
}

ProofCert unoptimized_proof(const CGraphSnapshot& snap, VertexId s, VertexId t) {
  ForestProver prover(snap);
  return *prover.prove(s, t);
}

namespace {

Engine engine_for(const CGraphSnapshot& snap, Equation goal, const std::vector<AxiomId>& axioms) {
  Engine eng(snap.bank());
  for (const Equation& eq : snap.axioms()) eng.declare_axiom(eq.lhs, eq.rhs);
  eng.add_term(goal.lhs);
  eng.add_term(goal.rhs);
  for (AxiomId id : axioms) eng.activate(id);
  eng.rebuild();
  return eng;
}

}  // namespace

bool provable_with(const CGraphSnapshot& snap, Equation goal, const std::vector<AxiomId>& axioms) {
  return engine_for(snap, goal, axioms).are_equal(goal.lhs, goal.rhs);
}

ReducedProof reduce_proof(const CGraphSnapshot& snap, Equation goal, const ProofCert& cert) {
  const std::vector<AxiomId> cited = cited_axioms(cert);
  std::vector<AxiomId> alive = cited;
  for (AxiomId candidate : cited) {
    std::vector<AxiomId> trial;
    std::copy_if(alive.begin(), alive.end(), std::back_inserter(trial),
                 [&](AxiomId a) { return a != candidate; });
    if (provable_with(snap, goal, trial)) alive = std::move(trial);
  }
  if (alive.size() == cited.size()) return ReducedProof{cert, snap.shared_bank(), alive};

  Engine eng = engine_for(snap, goal, alive);
  CGraphSnapshot reduced = eng.snapshot();
  ProofCert out = unoptimized_proof(reduced, reduced.vertex(goal.lhs), reduced.vertex(goal.rhs));
  return ReducedProof{std::move(out), reduced.shared_bank(), std::move(alive)};
}

}  // namespace ccproof
