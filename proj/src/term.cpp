#include "ccproof/term.hpp"

#include <boost/container_hash/hash.hpp>

#include "ccproof/error.hpp"

namespace ccproof {

bool is_token_char(char c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  switch (c) {
    case '_': case '+': case '*': case '/': case '.': case '<':
    case '>': case '=': case '!': case '?': case '-':
      return true;
    default:
      return false;
  }
}

namespace {

class SexprReader {
 public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read_one());
      skip_space();
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Sexpr read_one() {
    // Iterative so deeply nested inputs cannot exhaust the stack.
    std::vector<Sexpr> stack;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        throw Error(ErrorKind::UnbalancedParens, "unexpected end of input");
      }
      char c = text_[pos_];
      Sexpr done;
      if (c == '(') {
        ++pos_;
        stack.emplace_back();
        continue;
      }
      if (c == ')') {
        if (stack.empty()) throw Error(ErrorKind::UnbalancedParens, "unexpected ')' at offset " + std::to_string(pos_));
        ++pos_;
        done = std::move(stack.back());
        stack.pop_back();
      } else if (is_token_char(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
        done = Sexpr::make_atom(std::string(text_.substr(start, pos_ - start)));
      } else {
        throw Error(ErrorKind::SyntaxError,
                    std::string("unexpected character '") + c + "' at offset " + std::to_string(pos_));
      }
      if (stack.empty()) return done;
      stack.back().items.push_back(std::move(done));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  if (t.args.empty()) {
    out += t.head;
    return;
  }
  out += '(';
  out += t.head;
  for (const Term& a : t.args) {
    out += ' ';
    print_into(a, out);
  }
  out += ')';
}

}  // namespace

std::vector<Sexpr> read_sexprs(std::string_view text) { return SexprReader(text).read_all(); }

Term TermParser::parse(std::string_view text) {
  auto forms = read_sexprs(text);
  if (forms.empty()) throw Error(ErrorKind::EmptyExpression, "no expression");
  if (forms.size() > 1) throw Error(ErrorKind::SyntaxError, "more than one expression");
  return from_sexpr(forms.front());
}

Term TermParser::from_sexpr(const Sexpr& e) {
  Term t;
  if (e.is_atom) {
    t.head = e.atom;
  } else {
    if (e.items.empty()) throw Error(ErrorKind::EmptyExpression, "()");
    if (!e.items.front().is_atom) throw Error(ErrorKind::SyntaxError, "application head must be a symbol");
    t.head = e.items.front().atom;
    t.args.reserve(e.items.size() - 1);
    for (std::size_t i = 1; i < e.items.size(); ++i) t.args.push_back(from_sexpr(e.items[i]));
  }
  auto [it, inserted] = arity_.emplace(t.head, t.args.size());
  if (!inserted && it->second != t.args.size()) {
    throw Error(ErrorKind::ArityMismatch, "symbol '" + t.head + "' used with arity " +
                                              std::to_string(t.args.size()) + " and " +
                                              std::to_string(it->second));
  }
  return t;
}

Term parse_term(std::string_view text) { return TermParser{}.parse(text); }

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::size_t TermBank::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t seed = k.symbol;
  for (TermId a : k.args) boost::hash_combine(seed, a.value);
  return seed;
}

TermBank::SymbolId TermBank::symbol_for(std::string_view head, std::size_t arity) {
  std::string name(head);
  auto it = symbols_.find(name);
  if (it != symbols_.end()) {
    if (symbol_arity_[it->second] != arity) {
      throw Error(ErrorKind::ArityMismatch, "symbol '" + name + "' has arity " +
                                                std::to_string(symbol_arity_[it->second]) +
                                                ", got " + std::to_string(arity));
    }
    return it->second;
  }
  auto id = static_cast<SymbolId>(symbol_names_.size());
  symbol_names_.push_back(name);
  symbol_arity_.push_back(arity);
  symbols_.emplace(std::move(name), id);
  return id;
}

const TermBank::Node& TermBank::node(TermId id) const {
  if (!contains(id)) throw Error(ErrorKind::UnknownId, "term id " + std::to_string(id.value));
  return nodes_[id.index()];
}

TermId TermBank::make(std::string_view head, std::span<const TermId> args) {
  for (TermId a : args) node(a);
  SymbolId sym = symbol_for(head, args.size());
  Key key{sym, std::vector<TermId>(args.begin(), args.end())};
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  TermId id(nodes_.size());
  nodes_.push_back(Node{sym, static_cast<std::uint32_t>(arg_pool_.size()),
                        static_cast<std::uint32_t>(args.size())});
  arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
  table_.emplace(std::move(key), id);
  return id;
}

TermId TermBank::find(std::string_view head, std::span<const TermId> args) const {
  auto sit = symbols_.find(std::string(head));
  if (sit == symbols_.end()) return TermId{};
  auto it = table_.find(Key{sit->second, std::vector<TermId>(args.begin(), args.end())});
  return it == table_.end() ? TermId{} : it->second;
}

TermId TermBank::intern(const Term& t) {
  std::vector<TermId> kids;
  kids.reserve(t.args.size());
  for (const Term& a : t.args) kids.push_back(intern(a));
  return make(t.head, kids);
}

TermBank::SymbolId TermBank::symbol(TermId id) const { return node(id).symbol; }

const std::string& TermBank::head(TermId id) const { return symbol_names_[node(id).symbol]; }

std::span<const TermId> TermBank::args(TermId id) const {
  const Node& n = node(id);
  return std::span<const TermId>(arg_pool_).subspan(n.first_arg, n.num_args);
}

std::string TermBank::print(TermId id) const {
  std::string out;
  auto rec = [&](auto&& self, TermId t) -> void {
    auto kids = args(t);
    if (kids.empty()) {
      out += head(t);
      return;
    }
    out += '(';
    out += head(t);
    for (TermId k : kids) {
      out += ' ';
      self(self, k);
    }
    out += ')';
  };
  rec(rec, id);
  return out;
}

Term TermBank::to_term(TermId id) const {
  Term t;
  t.head = head(id);
  for (TermId k : args(id)) t.args.push_back(to_term(k));
  return t;
}

TermId TermBank::with_arg(TermId id, std::size_t arg, TermId child) {
  std::vector<TermId> kids(args(id).begin(), args(id).end());
  kids.at(arg) = child;
  std::string h = head(id);
  return make(h, kids);
}

TermId subterm_at(const TermBank& bank, TermId root, std::span<const std::uint32_t> position) {
  TermId cur = root;
  for (std::uint32_t i : position) {
    if (!bank.contains(cur)) return TermId{};
    auto kids = bank.args(cur);
    if (i >= kids.size()) return TermId{};
    cur = kids[i];
  }
  return bank.contains(cur) ? cur : TermId{};
}

}  // namespace ccproof
