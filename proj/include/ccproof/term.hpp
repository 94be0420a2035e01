#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccproof/ids.hpp"

namespace ccproof {

// Parsed s-expression, before any interpretation.
struct Sexpr {
  std::string atom;          // set iff is_atom
  std::vector<Sexpr> items;  // set iff !is_atom
  bool is_atom = false;

  static Sexpr make_atom(std::string text) { return Sexpr{std::move(text), {}, true}; }
};

// Reads every top-level form in `text`. `;` starts a comment running to end of line.
std::vector<Sexpr> read_sexprs(std::string_view text);

bool is_token_char(char c);

// Ground first-order term as written by the user, not yet interned.
struct Term {
  std::string head;
  std::vector<Term> args;

  friend bool operator==(const Term&, const Term&) = default;
};

// Converts s-expressions to terms, fixing each symbol's arity on first sight.
class TermParser {
 public:
  Term parse(std::string_view text);
  Term from_sexpr(const Sexpr& e);

 private:
  std::unordered_map<std::string, std::size_t> arity_;
};

// One-shot parse with a fresh arity session.
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

// Hash-consed term table. Ids are dense, issued in insertion order and never
// invalidated; children of an interned term are interned first.
class TermBank {
 public:
  using SymbolId = std::uint32_t;

  TermId intern(const Term& t);
  TermId make(std::string_view head, std::span<const TermId> args);
  // Returns an invalid id when the node has not been interned yet.
  TermId find(std::string_view head, std::span<const TermId> args) const;

  bool contains(TermId id) const { return id.index() < nodes_.size(); }
  std::size_t size() const { return nodes_.size(); }

  SymbolId symbol(TermId id) const;
  const std::string& head(TermId id) const;
  std::span<const TermId> args(TermId id) const;
  std::size_t arity(TermId id) const { return args(id).size(); }

  std::string print(TermId id) const;
  Term to_term(TermId id) const;

  // Term obtained by replacing the child at `arg` of `id` with `child`.
  TermId with_arg(TermId id, std::size_t arg, TermId child);

 private:
  struct Node {
    SymbolId symbol;
    std::uint32_t first_arg;
    std::uint32_t num_args;
  };
  struct Key {
    SymbolId symbol;
    std::vector<TermId> args;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  SymbolId symbol_for(std::string_view head, std::size_t arity);
  const Node& node(TermId id) const;

  std::vector<std::string> symbol_names_;
  std::vector<std::size_t> symbol_arity_;
  std::unordered_map<std::string, SymbolId> symbols_;
  std::vector<Node> nodes_;
  std::vector<TermId> arg_pool_;
  std::unordered_map<Key, TermId, KeyHash> table_;
};

// Subterm reached by following child indices from the root; invalid id when
// the position leaves the term.
TermId subterm_at(const TermBank& bank, TermId root, std::span<const std::uint32_t> position);

}  // namespace ccproof
