#include "ccproof/instance.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "ccproof/error.hpp"

namespace ccproof {

namespace {

Equation read_equation(const Sexpr& e, TermParser& parser, TermBank& bank, const char* what) {
  if (e.is_atom || e.items.size() != 3 || !e.items[0].is_atom || e.items[0].atom != "=") {
    throw Error(ErrorKind::SyntaxError, std::string(what) + " expects (= LHS RHS)");
  }
  return Equation{bank.intern(parser.from_sexpr(e.items[1])), bank.intern(parser.from_sexpr(e.items[2]))};
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  TermParser parser;
  bool have_goal = false;
  for (const Sexpr& form : read_sexprs(text)) {
    if (form.is_atom || form.items.size() != 2 || !form.items[0].is_atom) {
      throw Error(ErrorKind::SyntaxError, "expected (assert ...) or (prove ...)");
    }
    const std::string& cmd = form.items[0].atom;
    if (cmd == "assert") {
      if (have_goal) throw Error(ErrorKind::SyntaxError, "assert after prove");
      inst.axioms.push_back(read_equation(form.items[1], parser, inst.bank, "assert"));
    } else if (cmd == "prove") {
      if (have_goal) throw Error(ErrorKind::SyntaxError, "more than one prove");
      inst.goal = read_equation(form.items[1], parser, inst.bank, "prove");
      have_goal = true;
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown command '" + cmd + "'");
    }
  }
  if (!have_goal) throw Error(ErrorKind::SyntaxError, "missing (prove (= S T))");
  return inst;
}

std::string render_instance(const Instance& inst) {
  std::ostringstream out;
  if (inst.generator) {
    out << "; generated n=" << inst.generator->n << " depth=" << inst.generator->depth
        << " seed=" << inst.generator->seed << '\n';
  }
  for (const Equation& eq : inst.axioms) {
    out << "(assert (= " << inst.bank.print(eq.lhs) << ' ' << inst.bank.print(eq.rhs) << "))\n";
  }
  out << "(prove (= " << inst.bank.print(inst.goal.lhs) << ' ' << inst.bank.print(inst.goal.rhs) << "))\n";
  return out.str();
}

ClosedInstance close_instance(const Instance& inst) {
  Engine engine(inst.bank);
  for (const Equation& eq : inst.axioms) engine.assert_equal(eq.lhs, eq.rhs);
  engine.add_term(inst.goal.lhs);
  engine.add_term(inst.goal.rhs);
  engine.rebuild();
  CGraphSnapshot snap = engine.snapshot();
  VertexId s = snap.vertex(inst.goal.lhs);
  VertexId t = snap.vertex(inst.goal.rhs);
  return ClosedInstance{std::move(snap), s, t};
}

namespace {

class TermDraw {
 public:
  TermDraw(TermBank& bank, std::mt19937_64& rng) : bank_(bank), rng_(rng) {}

  TermId draw(std::size_t depth) {
    static constexpr const char* kConstants[] = {"a", "b", "c", "d", "0", "1"};
    std::uint64_t kind = depth == 0 ? 0 : rng_() % 4;
    if (kind == 0) return bank_.make(kConstants[rng_() % 6], {});
    if (kind == 1) {
      TermId x = draw(depth - 1);
      return bank_.make("s", std::span<const TermId>(&x, 1));
    }
    TermId xs[2];
    xs[0] = draw(depth - 1);
    xs[1] = draw(depth - 1);
    return bank_.make(kind == 2 ? "+" : "*", xs);
  }

 private:
  TermBank& bank_;
  std::mt19937_64& rng_;
};

void collect_subterms(const TermBank& bank, TermId t, std::vector<TermId>& out) {
  out.push_back(t);
  for (TermId c : bank.args(t)) collect_subterms(bank, c, out);
}

}  // namespace

Instance gen_random_instance(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::GenerationFailed, "need at least one equality");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Instance inst;
    inst.generator = GeneratorInfo{n, depth, seed};
    TermDraw draw(inst.bank, rng);
    std::vector<TermId> mentioned;
    while (inst.axioms.size() < n) {
      TermId l = draw.draw(depth);
      TermId r = draw.draw(depth);
      if (l == r) continue;
      inst.axioms.push_back(Equation{l, r});
      collect_subterms(inst.bank, l, mentioned);
      collect_subterms(inst.bank, r, mentioned);
    }
    std::sort(mentioned.begin(), mentioned.end());
    mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());

    Engine engine(inst.bank);
    for (const Equation& eq : inst.axioms) engine.assert_equal(eq.lhs, eq.rhs);
    engine.rebuild();
    CGraphSnapshot snap = engine.snapshot();
    std::map<std::uint32_t, std::vector<TermId>> classes;
    for (TermId t : mentioned) classes[snap.root(snap.vertex(t)).value].push_back(t);
    // Pick the first goal term uniformly over terms with a partner, so
    // larger classes (longer proofs) come up in proportion to their size.
    std::vector<std::pair<const std::vector<TermId>*, std::size_t>> usable;
    for (const auto& [root, members] : classes) {
      if (members.size() < 2) continue;
      for (std::size_t k = 0; k < members.size(); ++k) usable.emplace_back(&members, k);
    }
    if (usable.empty()) continue;
    auto [cls_ptr, i] = usable[rng() % usable.size()];
    const std::vector<TermId>& cls = *cls_ptr;
    std::size_t j = rng() % (cls.size() - 1);
    if (j >= i) ++j;
    inst.goal = Equation{cls[i], cls[j]};
    return inst;
  }
  throw Error(ErrorKind::GenerationFailed, "no provable goal after 1000 attempts");
}

}  // namespace ccproof
