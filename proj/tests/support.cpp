#include "support.hpp"

#include <sstream>
#include <algorithm>
#include <bit>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "ccproof/optdag.hpp"

namespace testing_support {

const char* const kE1 =
    "(assert (= (+ a 0) a))\n"
    "(assert (= (+ 2 2) 4))\n"
    "(prove (= (f (+ a 0) (g (+ a 0) (+ 2 2))) (f a (g a 4))))\n";
const char* const kE2 =
    "(assert (= a b))\n"
    "(assert (= b c))\n"
    "(assert (= a c))\n"
    "(prove (= a c))\n";
const char* const kFig3 =
    "(assert (= (+ a 0) a))\n"
    "(prove (= (+ (+ a 0) 0) a))\n";

Loaded load(std::string_view text) {
  Instance inst = parse_instance(text);
  ClosedInstance closed = close_instance(inst);
  return Loaded{std::move(inst), std::move(closed)};
}

Loaded load_generated(std::size_t n, std::size_t depth, std::uint64_t seed) {
  Instance inst = gen_random_instance(n, depth, seed);
  ClosedInstance closed = close_instance(inst);
  return Loaded{std::move(inst), std::move(closed)};
}

namespace {

const Term* at(const Term& t, const std::vector<std::uint32_t>& pos, std::size_t depth = 0) {
  if (depth == pos.size()) return &t;
  if (pos[depth] >= t.args.size()) return nullptr;
  return at(t.args[pos[depth]], pos, depth + 1);
}

Term replaced(const Term& t, const std::vector<std::uint32_t>& pos, const Term& with, std::size_t depth = 0) {
  if (depth == pos.size()) return with;
  Term out = t;
  out.args[pos[depth]] = replaced(t.args[pos[depth]], pos, with, depth + 1);
  return out;
}

// Replays `cert` from `from`; returns false on any mismatch, else writes the end term.
bool replay(const ProofCert& cert, const Term& from, const TermBank& bank, const std::vector<Equation>& instance,
            Term& end) {
  if (bank.to_term(cert.start) != from) return false;
  Term cur = from;
  for (const Step& st : cert.steps) {
    const Term* focus = at(cur, st.position);
    if (!focus) return false;
    Term next_sub;
    if (const auto* ax = std::get_if<AxiomStep>(&st.just)) {
      if (ax->axiom.index() >= instance.size()) return false;
      const Equation& eq = instance[ax->axiom.index()];
      Term src = bank.to_term(ax->forward ? eq.lhs : eq.rhs);
      Term dst = bank.to_term(ax->forward ? eq.rhs : eq.lhs);
      if (*focus != src) return false;
      next_sub = dst;
    } else {
      const auto& cg = std::get<CongruenceStep>(st.just);
      // A congruence rewrite must change a proper argument of some term.
      if (st.position.empty() || !cg.sub) return false;
      if (!replay(*cg.sub, *focus, bank, instance, next_sub)) return false;
    }
    cur = replaced(cur, st.position, next_sub);
    if (bank.to_term(st.result) != cur) return false;
  }
  end = cur;
  return true;
}

}  // namespace

bool replay_proves(const ProofCert& cert, const TermBank& bank, const std::vector<Equation>& instance,
                   Equation goal) {
  Term end;
  Term start = bank.to_term(goal.lhs);
  if (!replay(cert, start, bank, instance, end)) return false;
  return end == bank.to_term(goal.rhs);
}

ProofCert deep_copy(const ProofCert& cert) {
  ProofCert out = cert;
  for (Step& st : out.steps) {
    if (auto* cg = std::get_if<CongruenceStep>(&st.just)) {
      cg->sub = std::make_shared<ProofCert>(deep_copy(*cg->sub));
    }
  }
  return out;
}

std::vector<Step*> all_steps(ProofCert& cert) {
  std::vector<Step*> out;
  for (Step& st : cert.steps) out.push_back(&st);
  for (Step& st : cert.steps) {
    if (auto* cg = std::get_if<CongruenceStep>(&st.just)) {
      // deep_copy built the subcertificate as a non-const object.
      auto* sub = const_cast<ProofCert*>(cg->sub.get());
      for (Step* s : all_steps(*sub)) out.push_back(s);
    }
  }
  return out;
}

namespace {

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(tok);
    out.push_back("\n");
  }
  return out;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

bool is_section(const std::string& t) {
  return t == "Minimize" || t == "Subject" || t == "Bounds" || t == "Binary" || t == "General" || t == "End";
}

}  // namespace

LpModel read_lp(std::string_view text) {
  std::vector<std::string> tk = tokens(text);
  LpModel m;
  std::size_t i = 0;
  auto skip_nl = [&] {
    while (i < tk.size() && tk[i] == "\n") ++i;
  };
  auto expect = [&](const std::string& s) {
    skip_nl();
    if (i >= tk.size() || tk[i] != s) throw std::runtime_error("expected '" + s + "'");
    ++i;
  };
  // Reads `[+|-] [coef] name` terms until a sense token or section keyword.
  auto linear = [&](std::map<std::string, long long>& into) {
    for (;;) {
      skip_nl();
      if (i >= tk.size()) throw std::runtime_error("unexpected end");
      const std::string& t = tk[i];
      if (t == "<=" || t == ">=" || t == "=" || is_section(t)) return;
      if (t.back() == ':') return;
      long long sign = 1;
      if (t == "+" || t == "-") {
        sign = t == "-" ? -1 : 1;
        ++i;
        skip_nl();
      }
      long long c = 1;
      if (i < tk.size() && is_number(tk[i])) {
        c = std::stoll(tk[i]);
        ++i;
        if (c == 0 && (i >= tk.size() || tk[i] == "\n" || is_section(tk[i]))) continue;
      }
      if (i >= tk.size() || tk[i] == "\n") throw std::runtime_error("dangling coefficient");
      into[tk[i]] += sign * c;
      ++i;
    }
  };

  expect("Minimize");
  skip_nl();
  if (i < tk.size() && tk[i].back() == ':') ++i;
  linear(m.objective);
  expect("Subject");
  expect("To");
  for (;;) {
    skip_nl();
    if (i >= tk.size()) throw std::runtime_error("unexpected end in constraints");
    if (is_section(tk[i])) break;
    LpRow row;
    if (tk[i].back() != ':') throw std::runtime_error("unnamed row near '" + tk[i] + "'");
    row.name = tk[i].substr(0, tk[i].size() - 1);
    ++i;
    linear(row.coef);
    skip_nl();
    row.sense = tk[i++];
    if (row.sense != "<=" && row.sense != ">=" && row.sense != "=") throw std::runtime_error("bad sense");
    if (i >= tk.size() || !is_number(tk[i])) throw std::runtime_error("bad rhs in " + row.name);
    row.rhs = std::stoll(tk[i++]);
    m.rows.push_back(std::move(row));
  }
  expect("Bounds");
  for (;;) {
    skip_nl();
    if (is_section(tk[i])) break;
    // lo <= name <= hi
    if (i + 4 >= tk.size() || tk[i + 1] != "<=" || tk[i + 3] != "<=") throw std::runtime_error("bad bound");
    m.bounds[tk[i + 2]] = {std::stoll(tk[i]), std::stoll(tk[i + 4])};
    i += 5;
  }
  expect("Binary");
  for (skip_nl(); !is_section(tk[i]); skip_nl()) m.binaries.push_back(tk[i++]);
  expect("General");
  for (skip_nl(); !is_section(tk[i]); skip_nl()) m.generals.push_back(tk[i++]);
  expect("End");
  return m;
}

bool lp_satisfied(const LpModel& m, const std::map<std::string, long long>& x, std::string* failed) {
  auto value = [&](const std::string& v) {
    auto it = x.find(v);
    return it == x.end() ? 0LL : it->second;
  };
  auto fail = [&](const std::string& why) {
    if (failed) *failed = why;
    return false;
  };
  for (const LpRow& r : m.rows) {
    long long lhs = 0;
    for (const auto& [v, c] : r.coef) lhs += c * value(v);
    bool ok = r.sense == "<=" ? lhs <= r.rhs : r.sense == ">=" ? lhs >= r.rhs : lhs == r.rhs;
    if (!ok) return fail("row " + r.name);
  }
  for (const std::string& b : m.binaries) {
    long long v = value(b);
    if (v != 0 && v != 1) return fail("binary " + b);
  }
  for (const auto& [v, lh] : m.bounds) {
    long long val = value(v);
    if (val < lh.first || val > lh.second) return fail("bound " + v);
  }
  return true;
}

}  // namespace testing_support

namespace testing_support {

namespace {

std::string name(char f, std::initializer_list<std::uint32_t> idx) {
  std::string out(1, f);
  for (std::uint32_t i : idx) out += "_" + std::to_string(i);
  return out;
}

}  // namespace

std::map<std::string, long long> ilp_witness_assignment(const CGraphSnapshot& snap, std::span<const EdgeId> selected) {
  std::vector<EdgeId> pool(selected.begin(), selected.end());
  for (EdgeId e : snap.congruence_edges()) pool.push_back(e);
  std::vector<EdgeId> active = fixpoint_activation(snap, pool);

  const std::size_t nv = snap.num_vertices();
  std::vector<std::uint32_t> uf(nv);
  for (std::uint32_t i = 0; i < nv; ++i) uf[i] = i;
  auto find = [&](std::uint32_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::vector<std::pair<std::uint32_t, EdgeId>>> forest(nv);
  std::vector<EdgeId> forest_edges;
  for (EdgeId e : active) {
    const Edge& ed = snap.edge(e);
    std::uint32_t a = find(ed.u.value), b = find(ed.v.value);
    if (a == b) continue;
    uf[a] = b;
    forest[ed.u.value].emplace_back(ed.v.value, e);
    forest[ed.v.value].emplace_back(ed.u.value, e);
    forest_edges.push_back(e);
  }

  // Forest path from i to j as (next vertex, edge) hops; empty when unconnected.
  auto path = [&](std::uint32_t i, std::uint32_t j) {
    std::vector<std::pair<std::uint32_t, EdgeId>> via(nv, {UINT32_MAX, EdgeId{}});
    std::vector<std::uint32_t> stack{i};
    via[i].first = i;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (auto [y, e] : forest[x]) {
        if (via[y].first != UINT32_MAX) continue;
        via[y] = {x, e};
        stack.push_back(y);
      }
    }
    std::vector<std::pair<std::uint32_t, EdgeId>> hops;
    if (via[j].first == UINT32_MAX) return hops;
    for (std::uint32_t x = j; x != i; x = via[x].first) hops.emplace_back(x, via[x].second);
    std::reverse(hops.begin(), hops.end());
    return hops;
  };

  std::map<std::pair<std::uint32_t, std::uint32_t>, long long> dist;
  std::function<long long(std::uint32_t, std::uint32_t)> cost = [&](std::uint32_t i, std::uint32_t j) -> long long {
    if (i == j) return 0;
    if (auto it = dist.find({i, j}); it != dist.end()) return it->second;
    long long total = 0;
    for (auto [x, e] : path(i, j)) {
      const Edge& ed = snap.edge(e);
      total += ed.is_congruence() ? cost(ed.congruence().child_left.value, ed.congruence().child_right.value) : 1;
    }
    dist[{i, j}] = dist[{j, i}] = total;
    return total;
  };

  std::map<std::string, long long> x;
  for (EdgeId e : selected) {
    const Edge& ed = snap.edge(e);
    x[name('S', {ed.u.value, ed.v.value})] = 1;
    x[name('S', {ed.v.value, ed.u.value})] = 1;
  }
  for (EdgeId e : forest_edges) {
    const Edge& ed = snap.edge(e);
    x[name('V', {ed.u.value, ed.v.value})] = 1;
    x[name('V', {ed.v.value, ed.u.value})] = 1;
    if (ed.is_congruence()) {
      const auto& j = ed.congruence();
      x[name('M', {ed.u.value, ed.v.value, j.child_left.value, j.child_right.value})] = 1;
      x[name('M', {ed.v.value, ed.u.value, j.child_right.value, j.child_left.value})] = 1;
    }
  }
  for (std::uint32_t i = 0; i < nv; ++i) {
    for (std::uint32_t j = 0; j < nv; ++j) {
      if (i == j || !snap.same_class(VertexId(i), VertexId(j))) continue;
      auto hops = path(i, j);
      if (hops.empty()) {
        x[name('D', {i, j})] = 1;
        continue;
      }
      x[name('C', {i, j})] = 1;
      x[name('P', {i, hops.front().first, j})] = 1;
      x[name('D', {i, j})] = std::max(1LL, cost(i, j));
    }
  }
  return x;
}

std::size_t ilp_enumerated_optimum(const LpModel& m, const CGraphSnapshot& snap, VertexId s, VertexId t) {
  // Objective variables S_i_j name unordered axiom pairs; map each to its edges.
  std::vector<std::vector<EdgeId>> groups;
  for (const auto& [v, c] : m.objective) {
    if (v.empty() || v[0] != 'S' || c == 0) continue;
    std::uint32_t i = 0, j = 0;
    if (std::sscanf(v.c_str(), "S_%u_%u", &i, &j) != 2) throw std::runtime_error("bad objective variable " + v);
    std::vector<EdgeId> g;
    for (EdgeId e : snap.axiom_edges()) {
      const Edge& ed = snap.edge(e);
      if ((ed.u.value == i && ed.v.value == j) || (ed.u.value == j && ed.v.value == i)) g.push_back(e);
    }
    groups.push_back(std::move(g));
  }
  const std::size_t n = groups.size();
  if (n > 20) throw std::runtime_error("too many S variables to enumerate");
  std::vector<EdgeId> cong(snap.congruence_edges().begin(), snap.congruence_edges().end());
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      std::vector<EdgeId> edges = cong;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1) edges.insert(edges.end(), groups[b].begin(), groups[b].end());
      }
      if (fixpoint_e_connected(snap, edges, s, t)) return k;
    }
  }
  throw std::runtime_error("model has no feasible S assignment");
}

}  // namespace testing_support
