#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccproof/engine.hpp"
#include "ccproof/term.hpp"

namespace ccproof {

struct GeneratorInfo {
  std::size_t n = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
};

// Ground equalities in assertion order (axiom id = position) and a goal.
struct Instance {
  TermBank bank;
  std::vector<Equation> axioms;
  Equation goal;
  std::optional<GeneratorInfo> generator;
};

// Lines of `(assert (= L R))` followed by one `(prove (= S T))`.
Instance parse_instance(std::string_view text);
std::string render_instance(const Instance& inst);

// Closed c-graph of an instance with the goal terms present.
struct ClosedInstance {
  CGraphSnapshot snap;
  VertexId s;
  VertexId t;

  bool provable() const { return snap.same_class(s, t); }
};

ClosedInstance close_instance(const Instance& inst);

inline constexpr std::size_t kDefaultDepth = 2;

// n random equalities over {+, *, s, a, b, c, d, 0, 1} with terms of depth at
// most `depth`; the goal is two distinct terms of the instance shown equal by
// closure. Throws GenerationFailed when 1000 draws give no usable goal.
Instance gen_random_instance(std::size_t n, std::size_t depth, std::uint64_t seed);

}  // namespace ccproof
