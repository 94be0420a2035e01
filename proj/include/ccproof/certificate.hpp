#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccproof/engine.hpp"
#include "ccproof/ids.hpp"
#include "ccproof/term.hpp"

namespace ccproof {

struct ProofCert;

// Subcertificates are immutable and may be shared between several congruence
// steps; the certificate is still a tree semantically.
using SubCert = std::shared_ptr<const ProofCert>;

struct AxiomStep {
  AxiomId axiom;
  bool forward = true;
};

struct CongruenceStep {
  SubCert sub;
};

// Rewrites the subterm at `position` (child indices from the root, empty =
// root) and yields `result`.
struct Step {
  std::vector<std::uint32_t> position;
  std::variant<AxiomStep, CongruenceStep> just;
  TermId result;

  bool is_axiom() const { return std::holds_alternative<AxiomStep>(just); }
};

// Rewrite chain from `start`; the proven right-hand side is the last result.
struct ProofCert {
  TermId start;
  std::vector<Step> steps;

  TermId end() const { return steps.empty() ? start : steps.back().result; }
};

// Tree size: axiom steps counted with multiplicity, through every subproof.
Size cert_tree_size(const ProofCert& cert);
// DAG size: number of distinct axioms cited anywhere in the certificate.
std::size_t cert_dag_size(const ProofCert& cert);
// Distinct cited axioms, ascending.
std::vector<AxiomId> cited_axioms(const ProofCert& cert);

enum class CheckError {
  Ok,
  StartMismatch,
  EndMismatch,
  PositionMismatch,
  UnknownAxiom,
  BadSubproofEndpoints,
};

std::string_view to_string(CheckError e);

struct CheckResult {
  CheckError error = CheckError::Ok;
  std::string detail;

  bool ok() const { return error == CheckError::Ok; }
};

// Replays the certificate as ground rewrites against `instance` (indexed by
// axiom id). Needs nothing but the term table.
CheckResult check_cert(const ProofCert& cert, const TermBank& bank, std::span<const Equation> instance,
                       Equation goal);

// Self-contained certificate file: cited axioms, goal and proof.
struct Certificate {
  std::vector<std::pair<AxiomId, Equation>> axioms;
  Equation goal;
  ProofCert proof;
};

Certificate make_certificate(ProofCert proof, std::span<const Equation> instance, Equation goal);

// Also rejects certificates whose axiom table disagrees with the instance or
// whose goal is not `goal`.
CheckResult check_certificate(const Certificate& cert, const TermBank& bank,
                              std::span<const Equation> instance, Equation goal);

std::string render_cert(const Certificate& cert, const TermBank& bank);
// Interns every term into `bank`. Throws SyntaxError, UnknownAxiom or ArityMismatch.
Certificate parse_cert(std::string_view text, TermBank& bank);

}  // namespace ccproof
