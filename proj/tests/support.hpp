#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccproof/certificate.hpp"
#include "ccproof/instance.hpp"

namespace testing_support {

using namespace ccproof;

struct Loaded {
  Instance inst;
  ClosedInstance closed;
};

Loaded load(std::string_view text);
Loaded load_generated(std::size_t n, std::size_t depth, std::uint64_t seed);

// Worked examples used throughout the suite.
extern const char* const kE1;
extern const char* const kE2;
extern const char* const kFig3;

// Independent replay on plain Term trees: no TermBank lookups beyond turning
// ids into trees, no shared code with the library checker. True when every
// step rewrites exactly the named subterm and the chain ends at goal.rhs.
bool replay_proves(const ProofCert& cert, const TermBank& bank, const std::vector<Equation>& instance,
                   Equation goal);

// Deep copy whose nested subcertificates are uniquely owned and mutable.
ProofCert deep_copy(const ProofCert& cert);
// Every step of the certificate tree, outer steps first.
std::vector<Step*> all_steps(ProofCert& cert);

// Minimal reader for the LP text the emitter writes.
struct LpRow {
  std::string name;
  std::map<std::string, long long> coef;
  std::string sense;
  long long rhs = 0;
};

struct LpModel {
  std::map<std::string, long long> objective;
  std::vector<LpRow> rows;
  std::map<std::string, std::pair<long long, long long>> bounds;
  std::vector<std::string> binaries;
  std::vector<std::string> generals;
};

// Throws std::runtime_error on malformed text.
LpModel read_lp(std::string_view text);

// True when the assignment (missing variables read as 0) meets every row,
// bound and integrality section.
bool lp_satisfied(const LpModel& m, const std::map<std::string, long long>& x, std::string* failed = nullptr);

// Assignment for the emitted model built from a selection of non-congruence
// edges that proves s = t: a spanning forest over the activated edges (in
// activation order) supplies V, M, P, C; D is the forest-path cost where an
// axiom hop costs 1 and a congruence hop costs D of its children.
std::map<std::string, long long> ilp_witness_assignment(const CGraphSnapshot& snap, std::span<const EdgeId> selected);

// Optimum of the model's objective found by enumerating the S variables it
// names in increasing count, each checked with fixpoint_e_connected.
std::size_t ilp_enumerated_optimum(const LpModel& m, const CGraphSnapshot& snap, VertexId s, VertexId t);

}  // namespace testing_support
