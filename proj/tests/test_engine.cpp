#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ccproof/error.hpp"
#include "ccproof/optdag.hpp"
#include "support.hpp"

using namespace ccproof;
using namespace testing_support;

namespace {

TermId T(TermBank& bank, std::string_view text) { return bank.intern(parse_term(text)); }

// Naive closure over every subterm: union until no congruence is missing.
class NaiveClosure {
 public:
  NaiveClosure(const TermBank& bank, const std::vector<Equation>& axioms) : bank_(bank) {
    for (const Equation& eq : axioms) {
      add(eq.lhs);
      add(eq.rhs);
    }
    for (const Equation& eq : axioms) unite(eq.lhs, eq.rhs);
    bool changed = true;
    while (changed) {
      changed = false;
      for (TermId x : terms_) {
        for (TermId y : terms_) {
          if (same(x, y) || bank.symbol(x) != bank.symbol(y)) continue;
          auto xa = bank.args(x);
          auto ya = bank.args(y);
          bool all = true;
          for (std::size_t i = 0; i < xa.size() && all; ++i) all = same(xa[i], ya[i]);
          if (all) {
            unite(x, y);
            changed = true;
          }
        }
      }
    }
  }

  const std::vector<TermId>& terms() const { return terms_; }
  bool same(TermId a, TermId b) { return find(a) == find(b); }

 private:
  void add(TermId t) {
    if (parent_.contains(t)) return;
    parent_[t] = t;
    terms_.push_back(t);
    for (TermId c : bank_.args(t)) add(c);
  }
  TermId find(TermId t) {
    while (parent_[t] != t) t = parent_[t];
    return t;
  }
  void unite(TermId a, TermId b) { parent_[find(a)] = find(b); }

  const TermBank& bank_;
  std::map<TermId, TermId> parent_;
  std::vector<TermId> terms_;
};

}  // namespace

TEST(Engine, AddTermIsRecursiveAndIdempotent) {
  Engine eng;
  TermId f = T(eng.bank(), "(f (+ a 0))");
  VertexId v = eng.add_term(f);
  EXPECT_EQ(eng.num_vertices(), 4u);
  EXPECT_EQ(eng.add_term(f), v);
  TermId a = T(eng.bank(), "a");
  VertexId va = eng.add_term(a);
  EXPECT_EQ(eng.num_vertices(), 4u);
  eng.rebuild();
  CGraphSnapshot snap = eng.snapshot();
  EXPECT_EQ(snap.children(snap.vertex(T(eng.bank(), "(+ a 0)")))[0], va);
}

TEST(Engine, RedundantAxiomsRetained) {
  Engine eng;
  TermId a = T(eng.bank(), "a"), b = T(eng.bank(), "b"), c = T(eng.bank(), "c");
  EXPECT_EQ(eng.assert_equal(a, b), AxiomId(0u));
  EXPECT_EQ(eng.assert_equal(b, c), AxiomId(1u));
  EXPECT_EQ(eng.assert_equal(a, c), AxiomId(2u));
  eng.rebuild();
  EXPECT_EQ(eng.num_axiom_edges(), 3u);
  EXPECT_TRUE(eng.are_equal(a, c));
  CGraphSnapshot snap = eng.snapshot();
  EXPECT_EQ(snap.axiom_edges().size(), 3u);
  EXPECT_EQ(snap.forest_edges().size(), 2u);
  EXPECT_FALSE(snap.is_forest_edge(EdgeId(2u)));
}

TEST(Engine, ReflexiveAssertion) {
  Engine eng;
  TermId a = T(eng.bank(), "a"), b = T(eng.bank(), "b");
  eng.add_term(b);
  eng.assert_equal(a, a);
  eng.rebuild();
  EXPECT_EQ(eng.num_axiom_edges(), 1u);
  EXPECT_FALSE(eng.are_equal(a, b));
  CGraphSnapshot snap = eng.snapshot();
  const Edge& e = snap.edge(EdgeId(0u));
  EXPECT_EQ(e.u, e.v);
  EXPECT_TRUE(snap.forest_edges().empty());
}

TEST(Engine, DuplicateOrderedPairDropped) {
  Engine eng;
  TermId x = T(eng.bank(), "(+ a 0)"), a = T(eng.bank(), "a");
  eng.assert_equal(x, a);
  AxiomId again = eng.assert_equal(x, a);
  eng.assert_equal(a, x);
  eng.rebuild();
  EXPECT_EQ(again, AxiomId(1u));
  EXPECT_EQ(eng.num_axiom_edges(), 2u);
  EXPECT_EQ(eng.stats().duplicate_axioms_dropped, 1u);
  EXPECT_EQ(eng.snapshot().axioms().size(), 3u);
}

TEST(Engine, PaperIntroExample) {
  Loaded l = load(kE1);
  EXPECT_TRUE(l.closed.provable());
}

TEST(Engine, Fig3SingleCongruenceEdge) {
  Loaded l = load(kFig3);
  const CGraphSnapshot& snap = l.closed.snap;
  ASSERT_EQ(snap.congruence_edges().size(), 1u);
  const Edge& e = snap.edge(snap.congruence_edges()[0]);
  const TermBank& bank = snap.bank();
  std::set<std::string> kids{bank.print(snap.term(e.congruence().child_left)),
                             bank.print(snap.term(e.congruence().child_right))};
  EXPECT_EQ(kids, (std::set<std::string>{"(+ a 0)", "a"}));
  std::set<std::string> ends{bank.print(snap.term(e.u)), bank.print(snap.term(e.v))};
  EXPECT_EQ(ends, (std::set<std::string>{"(+ (+ a 0) 0)", "(+ a 0)"}));
  EXPECT_EQ(snap.forest_edges().size(), 2u);
  EXPECT_TRUE(snap.is_forest_edge(EdgeId(0u)));
  EXPECT_TRUE(snap.is_forest_edge(EdgeId(1u)));
}

TEST(Engine, NoAssertionsNoEdges) {
  Engine eng;
  eng.add_term(T(eng.bank(), "(f a b)"));
  EXPECT_EQ(eng.rebuild(), 0u);
  EXPECT_EQ(eng.snapshot().num_edges(), 0u);
}

TEST(Engine, AreEqualErrors) {
  Engine eng;
  TermId a = T(eng.bank(), "a"), b = T(eng.bank(), "b"), z = T(eng.bank(), "z");
  eng.assert_equal(a, b);
  try {
    eng.are_equal(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PendingMerges);
  }
  try {
    eng.snapshot();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PendingMerges);
  }
  eng.rebuild();
  try {
    eng.are_equal(a, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownTerm);
  }
}

TEST(Engine, UnrelatedConstants) {
  Engine eng;
  TermId x = T(eng.bank(), "x"), y = T(eng.bank(), "y");
  eng.add_term(x);
  eng.add_term(y);
  eng.rebuild();
  EXPECT_FALSE(eng.are_equal(x, y));
}

TEST(Engine, MultiArgumentDecomposition) {
  Engine eng;
  TermBank& bank = eng.bank();
  TermId a = T(bank, "a"), b = T(bank, "b"), c = T(bank, "c"), d = T(bank, "d");
  TermId fab = T(bank, "(f a b)"), fcd = T(bank, "(f c d)");
  eng.add_term(fab);
  eng.add_term(fcd);
  eng.assert_equal(a, c);
  eng.assert_equal(b, d);
  eng.rebuild();
  EXPECT_TRUE(eng.are_equal(fab, fcd));
  CGraphSnapshot snap = eng.snapshot();
  EXPECT_EQ(snap.stats().materialized_vertices, 1u);
  ASSERT_TRUE(snap.bank().find("f", std::vector<TermId>{c, b}).valid());
  TermId fcb = snap.bank().find("f", std::vector<TermId>{c, b});
  std::map<std::uint32_t, std::pair<TermId, TermId>> by_arg;
  for (EdgeId e : snap.congruence_edges()) {
    const Edge& ed = snap.edge(e);
    by_arg[ed.congruence().arg_index] = {snap.term(ed.u), snap.term(ed.v)};
  }
  ASSERT_EQ(by_arg.size(), 2u);
  EXPECT_EQ(by_arg[0], std::make_pair(fab, fcb));
  EXPECT_EQ(by_arg[1], std::make_pair(fcb, fcd));
  (void)d;
}

TEST(Engine, SnapshotIsFrozen) {
  Engine eng;
  TermId a = T(eng.bank(), "a"), b = T(eng.bank(), "b");
  eng.assert_equal(a, b);
  eng.rebuild();
  CGraphSnapshot snap = eng.snapshot();
  eng.assert_equal(b, T(eng.bank(), "c"));
  eng.rebuild();
  EXPECT_EQ(snap.num_edges(), 1u);
  EXPECT_EQ(snap.num_vertices(), 2u);
}

TEST(Engine, EmptySnapshot) {
  Engine eng;
  CGraphSnapshot snap = eng.snapshot();
  EXPECT_EQ(snap.num_vertices(), 0u);
  EXPECT_EQ(snap.num_edges(), 0u);
}

TEST(ForestPath, E2) {
  Loaded l = load(kE2);
  EdgePath p = forest_path(l.closed.snap, l.closed.s, l.closed.t);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (PathStep{EdgeId(0u), true}));
  EXPECT_EQ(p[1], (PathStep{EdgeId(1u), true}));
  EXPECT_TRUE(forest_path(l.closed.snap, l.closed.s, l.closed.s).empty());
}

TEST(ForestPath, Fig3) {
  Loaded l = load(kFig3);
  const CGraphSnapshot& snap = l.closed.snap;
  EdgePath p = forest_path(snap, l.closed.s, l.closed.t);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_TRUE(snap.edge(p[0].edge).is_congruence());
  EXPECT_FALSE(snap.edge(p[1].edge).is_congruence());
}

TEST(ForestPath, AcrossClasses) {
  Engine eng;
  VertexId x = eng.add_term(T(eng.bank(), "x"));
  VertexId y = eng.add_term(T(eng.bank(), "y"));
  eng.rebuild();
  CGraphSnapshot snap = eng.snapshot();
  try {
    forest_path(snap, x, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEquivalent);
  }
}

TEST(ShortestPath, DirectEdgeWins) {
  Loaded l = load(kE2);
  WeightedPath w = weighted_shortest_path(l.closed.snap, l.closed.s, l.closed.t, axiom_unit_weights(l.closed.snap));
  EXPECT_EQ(w.total, 1u);
  ASSERT_EQ(w.path.size(), 1u);
  EXPECT_EQ(w.path[0].edge, EdgeId(2u));
}

TEST(ShortestPath, InfiniteWeightBlocks) {
  Loaded l = load(kFig3);
  const CGraphSnapshot& snap = l.closed.snap;
  try {
    weighted_shortest_path(snap, l.closed.s, l.closed.t, axiom_unit_weights(snap));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoFinitePath);
  }
  WeightedPath w = weighted_shortest_path(snap, l.closed.s, l.closed.t, axiom_unit_weights(snap, 1));
  EXPECT_EQ(w.total, 2u);
  EXPECT_EQ(w.path.size(), 2u);
}

TEST(ShortestPath, TieBreakPrefersFewerEdges) {
  // a-b-c costs 0 + 2 while a=c costs 2: equal weight, one edge wins.
  Loaded l = load("(assert (= a b))\n(assert (= b c))\n(assert (= a c))\n(prove (= a c))\n");
  std::vector<Size> w{0, 2, 2};
  WeightedPath p = weighted_shortest_path(l.closed.snap, l.closed.s, l.closed.t, w);
  EXPECT_EQ(p.total, 2u);
  EXPECT_EQ(p.path.size(), 1u);
}

class EngineProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(EngineProperty, MatchesNaiveClosure) {
  Loaded l = load_generated(2 + GetParam() % 9, 2, GetParam());
  NaiveClosure naive(l.inst.bank, l.inst.axioms);
  const CGraphSnapshot& snap = l.closed.snap;
  for (TermId x : naive.terms()) {
    for (TermId y : naive.terms()) {
      ASSERT_EQ(naive.same(x, y), snap.same_class(snap.vertex(x), snap.vertex(y)))
          << snap.bank().print(x) << " vs " << snap.bank().print(y);
    }
  }
}

TEST_P(EngineProperty, SnapshotInvariants) {
  Loaded l = load_generated(2 + GetParam() % 12, 1 + GetParam() % 3, GetParam() * 7 + 3);
  const CGraphSnapshot& snap = l.closed.snap;
  std::vector<EdgeId> all;
  for (std::size_t i = 0; i < snap.num_edges(); ++i) all.emplace_back(i);

  // Congruence edges are structural single-argument links and valid on their own.
  for (EdgeId e : snap.congruence_edges()) {
    const Edge& ed = snap.edge(e);
    const CongruenceJustification& j = ed.congruence();
    auto cu = snap.children(ed.u);
    auto cv = snap.children(ed.v);
    ASSERT_EQ(snap.bank().symbol(snap.term(ed.u)), snap.bank().symbol(snap.term(ed.v)));
    ASSERT_EQ(cu.size(), cv.size());
    for (std::size_t i = 0; i < cu.size(); ++i) {
      if (i == j.arg_index) {
        EXPECT_EQ(cu[i], j.child_left);
        EXPECT_EQ(cv[i], j.child_right);
        EXPECT_NE(cu[i], cv[i]);
      } else {
        EXPECT_EQ(cu[i], cv[i]);
      }
    }
    std::vector<EdgeId> without;
    for (EdgeId x : all) {
      if (x != e) without.push_back(x);
    }
    EXPECT_TRUE(fixpoint_e_connected(snap, without, j.child_left, j.child_right));
  }

  // Forest: class size - 1 edges per class, and a tree per class.
  std::map<VertexId, std::size_t> class_size;
  for (std::size_t v = 0; v < snap.num_vertices(); ++v) ++class_size[snap.root(VertexId(v))];
  std::size_t expected_forest = 0;
  for (auto [r, n] : class_size) expected_forest += n - 1;
  EXPECT_EQ(snap.forest_edges().size(), expected_forest);
  for (std::size_t v = 0; v < snap.num_vertices(); ++v) {
    VertexId x(v);
    if (!snap.forest_parent(x).valid()) {
      EXPECT_EQ(snap.root(x), x);
      continue;
    }
    EXPECT_TRUE(snap.is_forest_edge(snap.parent_edge(x)));
    EXPECT_EQ(snap.depth(x), snap.depth(snap.forest_parent(x)) + 1);
  }

  EXPECT_LE(snap.congruence_edges().size(), Engine::kCongruenceCapFactor * snap.axiom_edges().size() +
                                                snap.forest_edges().size());
  EXPECT_EQ(snap.axiom_edges().size() + snap.stats().duplicate_axioms_dropped, l.inst.axioms.size());
  EXPECT_TRUE(fixpoint_e_connected(snap, all, l.closed.s, l.closed.t));
}

INSTANTIATE_TEST_SUITE_P(Seeds, EngineProperty, ::testing::Range<std::uint64_t>(1, 61));
