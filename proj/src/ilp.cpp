#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "ccproof/error.hpp"
#include "ccproof/optdag.hpp"

namespace ccproof {

std::uint64_t ilp_distance_bound(std::size_t num_edges, std::size_t num_congruences) {
  using boost::multiprecision::cpp_int;
  const cpp_int cap = std::numeric_limits<std::uint64_t>::max();
  cpp_int bound = num_edges;
  if (num_congruences >= 2 && num_congruences + 1 >= 64) return std::numeric_limits<std::uint64_t>::max();
  cpp_int power_bound = boost::multiprecision::pow(cpp_int(num_congruences), static_cast<unsigned>(num_congruences + 1)) *
                        cpp_int(num_edges);
  if (power_bound > bound) bound = power_bound;
  if (bound > cap) return std::numeric_limits<std::uint64_t>::max();
  return bound.convert_to<std::uint64_t>();
}

namespace {

std::string var(char family, std::initializer_list<std::uint32_t> idx) {
  std::string out(1, family);
  for (std::uint32_t i : idx) {
    out += '_';
    out += std::to_string(i);
  }
  return out;
}

// Accumulates `coef name` terms and wraps long rows onto continuation lines.
class Row {
 public:
  Row& add(std::int64_t coef, const std::string& name) {
    terms_.emplace_back(coef, name);
    return *this;
  }

  void write(std::ostream& out, const std::string& label, const char* sense, std::int64_t rhs) const {
    out << ' ' << label << ':';
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i > 0 && i % 8 == 0) out << "\n   ";
      auto [coef, name] = terms_[i];
      out << ' ' << (coef < 0 ? '-' : '+') << ' ';
      if (coef != 1 && coef != -1) out << (coef < 0 ? -coef : coef) << ' ';
      out << name;
    }
    out << ' ' << sense << ' ' << rhs << '\n';
  }

 private:
  std::vector<std::pair<std::int64_t, std::string>> terms_;
};

}  // namespace

IlpSummary emit_ilp(const CGraphSnapshot& snap, VertexId s, VertexId t, std::ostream& sink) {
  if (!snap.same_class(s, t)) throw Error(ErrorKind::NotEquivalent, "goal terms are not equal");
  IlpSummary sum;
  sum.ell = ilp_distance_bound(snap.num_edges(), snap.congruence_edges().size());
  if (sum.ell > kMaxEll) {
    throw Error(ErrorKind::BoundOverflow, "distance bound " + std::to_string(sum.ell) + " exceeds " +
                                              std::to_string(kMaxEll));
  }
  const auto ell = static_cast<std::int64_t>(sum.ell);

  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  using Quad = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>;
  std::set<Pair> s_pairs;
  std::set<Quad> m_quads;
  std::map<std::uint32_t, std::set<std::uint32_t>> adj;
  for (const Edge& e : snap.edges()) {
    if (e.u == e.v) continue;
    adj[e.u.value].insert(e.v.value);
    adj[e.v.value].insert(e.u.value);
    if (e.is_congruence()) {
      const CongruenceJustification& j = e.congruence();
      m_quads.emplace(e.u.value, e.v.value, j.child_left.value, j.child_right.value);
      m_quads.emplace(e.v.value, e.u.value, j.child_right.value, j.child_left.value);
    } else {
      s_pairs.emplace(e.u.value, e.v.value);
      s_pairs.emplace(e.v.value, e.u.value);
    }
  }
  std::map<std::uint32_t, std::vector<std::uint32_t>> classes;
  for (std::size_t v = 0; v < snap.num_vertices(); ++v) {
    classes[snap.root(VertexId(v)).value].push_back(static_cast<std::uint32_t>(v));
  }

  std::vector<std::string> binaries;
  std::vector<std::string> generals;
  std::size_t rows = 0;
  std::ostringstream body;
  auto emit = [&](const Row& row, const std::string& label, const char* sense, std::int64_t rhs) {
    row.write(body, label, sense, rhs);
    ++rows;
  };

  for (auto [i, j] : s_pairs) {
    binaries.push_back(var('S', {i, j}));
    if (i < j) emit(Row().add(1, var('S', {i, j})).add(-1, var('S', {j, i})), var('s', {i, j}), "=", 0);
  }
  for (auto [i, j, l, r] : m_quads) {
    const std::string m = var('M', {i, j, l, r});
    binaries.push_back(m);
    ++sum.m_variables;
    if (i < j) emit(Row().add(1, m).add(-1, var('M', {j, i, r, l})), var('m', {i, j, l, r}), "=", 0);
    emit(Row().add(1, m).add(-1, var('C', {l, r})), var('k', {i, j, l, r}), "<=", 0);
    emit(Row().add(1, var('D', {i, j})).add(-1, var('D', {l, r})).add(-ell, m), var('n', {i, j, l, r}), ">=", -ell);
  }
  for (const auto& [i, nbrs] : adj) {
    for (std::uint32_t j : nbrs) {
      binaries.push_back(var('V', {i, j}));
      Row row;
      row.add(1, var('V', {i, j}));
      if (s_pairs.contains({i, j})) row.add(-1, var('S', {i, j}));
      for (auto it = m_quads.lower_bound({i, j, 0, 0}); it != m_quads.end(); ++it) {
        if (std::get<0>(*it) != i || std::get<1>(*it) != j) break;
        row.add(-1, var('M', {i, j, std::get<2>(*it), std::get<3>(*it)}));
      }
      emit(row, var('v', {i, j}), "<=", 0);
    }
  }
  for (const auto& [root, members] : classes) {
    if (members.size() < 2) continue;
    for (std::uint32_t i : members) {
      for (std::uint32_t j : members) {
        if (i == j) continue;
        binaries.push_back(var('C', {i, j}));
        generals.push_back(var('D', {i, j}));
        Row conn;
        conn.add(1, var('C', {i, j}));
        for (std::uint32_t k : adj[i]) {
          const std::string p = var('P', {i, k, j});
          binaries.push_back(p);
          conn.add(-1, p);
          emit(Row().add(1, p).add(-1, var('V', {i, k})), var('p', {i, k, j}), "<=", 0);
          if (k == j) continue;
          emit(Row().add(1, p).add(-1, var('C', {k, j})), var('q', {i, k, j}), "<=", 0);
          emit(Row().add(1, var('D', {i, j})).add(-1, var('D', {k, j})).add(-1, var('D', {i, k})).add(-ell, p),
               var('d', {i, k, j}), ">=", -ell);
        }
        emit(conn, var('c', {i, j}), "=", 0);
      }
    }
  }
  if (s != t) emit(Row().add(1, var('C', {s.value, t.value})), "goal", "=", 1);

  sink << "\\ minimum DAG size model\n";
  sink << "Minimize\n obj:";
  bool any = false;
  std::size_t n = 0;
  for (auto [i, j] : s_pairs) {
    if (i > j) continue;
    if (n > 0 && n % 8 == 0) sink << "\n   ";
    sink << " + " << var('S', {i, j});
    any = true;
    ++n;
  }
  if (!any) sink << " 0";
  sink << "\nSubject To\n" << body.str();
  sink << "Bounds\n";
  for (const std::string& d : generals) sink << " 1 <= " << d << " <= " << ell << '\n';
  sink << "Binary\n";
  for (const std::string& b : binaries) sink << ' ' << b << '\n';
  sink << "General\n";
  for (const std::string& g : generals) sink << ' ' << g << '\n';
  sink << "End\n";

  sum.variables = binaries.size() + generals.size();
  sum.constraints = rows;
  return sum;
}

}  // namespace ccproof
