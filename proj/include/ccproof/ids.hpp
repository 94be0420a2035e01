#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace ccproof {

// Dense index wrapped in a tag so vertex, edge, term and axiom ids do not mix.
template <class Tag>
struct StrongId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}
  constexpr explicit StrongId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct TermTag;
struct VertexTag;
struct EdgeTag;
struct AxiomTag;

using TermId = StrongId<TermTag>;
using VertexId = StrongId<VertexTag>;
using EdgeId = StrongId<EdgeTag>;
using AxiomId = StrongId<AxiomTag>;

// Tree sizes and path weights. kInfinite marks an unusable edge or an
// unreachable pair; arithmetic on sizes saturates at it.
using Size = std::uint64_t;
inline constexpr Size kInfinite = std::numeric_limits<Size>::max();

constexpr Size saturating_add(Size a, Size b) {
  return (a >= kInfinite - b) ? kInfinite : a + b;
}

}  // namespace ccproof

template <class Tag>
struct std::hash<ccproof::StrongId<Tag>> {
  std::size_t operator()(ccproof::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
