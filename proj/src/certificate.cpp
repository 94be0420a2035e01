#include "ccproof/certificate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ccproof/error.hpp"

namespace ccproof {

namespace {

Size tree_size_memo(const ProofCert& cert, std::unordered_map<const ProofCert*, Size>& memo) {
  Size total = 0;
  for (const Step& s : cert.steps) {
    if (s.is_axiom()) {
      total = saturating_add(total, 1);
      continue;
    }
    const ProofCert* sub = std::get<CongruenceStep>(s.just).sub.get();
    auto it = memo.find(sub);
    Size n = it != memo.end() ? it->second : memo.emplace(sub, tree_size_memo(*sub, memo)).first->second;
    total = saturating_add(total, n);
  }
  return total;
}

void collect_axioms(const ProofCert& cert, std::set<AxiomId>& out, std::unordered_set<const ProofCert*>& seen) {
  for (const Step& s : cert.steps) {
    if (s.is_axiom()) {
      out.insert(std::get<AxiomStep>(s.just).axiom);
    } else {
      const ProofCert* sub = std::get<CongruenceStep>(s.just).sub.get();
      if (seen.insert(sub).second) collect_axioms(*sub, out, seen);
    }
  }
}

}  // namespace

Size cert_tree_size(const ProofCert& cert) {
  std::unordered_map<const ProofCert*, Size> memo;
  return tree_size_memo(cert, memo);
}

std::vector<AxiomId> cited_axioms(const ProofCert& cert) {
  std::set<AxiomId> ids;
  std::unordered_set<const ProofCert*> seen;
  collect_axioms(cert, ids, seen);
  return {ids.begin(), ids.end()};
}

std::size_t cert_dag_size(const ProofCert& cert) { return cited_axioms(cert).size(); }

std::string_view to_string(CheckError e) {
  switch (e) {
    case CheckError::Ok: return "Ok";
    case CheckError::StartMismatch: return "StartMismatch";
    case CheckError::EndMismatch: return "EndMismatch";
    case CheckError::PositionMismatch: return "PositionMismatch";
    case CheckError::UnknownAxiom: return "UnknownAxiom";
    case CheckError::BadSubproofEndpoints: return "BadSubproofEndpoints";
  }
  return "Unknown";
}

namespace {

class Checker {
 public:
  Checker(const TermBank& bank, std::span<const Equation> instance) : bank_(bank), instance_(instance) {}

  CheckResult run(const ProofCert& cert) {
    TermId cur = cert.start;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      CheckResult r = check_step(cur, cert.steps[i], i);
      if (!r.ok()) return r;
      cur = cert.steps[i].result;
    }
    return {};
  }

 private:
  static CheckResult fail(CheckError e, std::string detail) { return CheckResult{e, std::move(detail)}; }

  // Both terms must agree everywhere except inside the subterm at `position`.
  bool same_outside(TermId a, TermId b, std::span<const std::uint32_t> position) const {
    for (std::uint32_t i : position) {
      if (bank_.symbol(a) != bank_.symbol(b)) return false;
      auto ka = bank_.args(a);
      auto kb = bank_.args(b);
      if (ka.size() != kb.size() || i >= ka.size()) return false;
      for (std::size_t k = 0; k < ka.size(); ++k) {
        if (k != i && ka[k] != kb[k]) return false;
      }
      a = ka[i];
      b = kb[i];
    }
    return true;
  }

  CheckResult check_step(TermId cur, const Step& step, std::size_t index) {
    const std::string where = "step " + std::to_string(index);
    if (!bank_.contains(step.result)) return fail(CheckError::PositionMismatch, where + ": unknown result term");
    TermId before = subterm_at(bank_, cur, step.position);
    TermId after = subterm_at(bank_, step.result, step.position);
    if (!before.valid() || !after.valid() || !same_outside(cur, step.result, step.position)) {
      return fail(CheckError::PositionMismatch, where + ": terms differ outside the rewritten position");
    }
    if (const auto* ax = std::get_if<AxiomStep>(&step.just)) {
      if (ax->axiom.index() >= instance_.size()) {
        return fail(CheckError::UnknownAxiom, where + ": axiom " + std::to_string(ax->axiom.value));
      }
      const Equation& eq = instance_[ax->axiom.index()];
      TermId from = ax->forward ? eq.lhs : eq.rhs;
      TermId to = ax->forward ? eq.rhs : eq.lhs;
      if (before != from || after != to) {
        return fail(CheckError::PositionMismatch,
                    where + ": axiom " + std::to_string(ax->axiom.value) + " does not match " + bank_.print(before));
      }
      return {};
    }
    const ProofCert* sub = std::get<CongruenceStep>(step.just).sub.get();
    if (sub == nullptr || sub->start != before || sub->end() != after) {
      return fail(CheckError::BadSubproofEndpoints, where + ": subproof does not connect the rewritten subterms");
    }
    if (verified_.contains(sub)) return {};
    CheckResult r = run(*sub);
    if (!r.ok()) {
      r.detail = where + " > " + r.detail;
      return r;
    }
    verified_.insert(sub);
    return {};
  }

  const TermBank& bank_;
  std::span<const Equation> instance_;
  std::unordered_set<const ProofCert*> verified_;
};

}  // namespace

CheckResult check_cert(const ProofCert& cert, const TermBank& bank, std::span<const Equation> instance,
                       Equation goal) {
  if (cert.start != goal.lhs) return CheckResult{CheckError::StartMismatch, "certificate starts elsewhere"};
  CheckResult r = Checker(bank, instance).run(cert);
  if (!r.ok()) return r;
  if (cert.end() != goal.rhs) return CheckResult{CheckError::EndMismatch, "certificate ends elsewhere"};
  return {};
}

Certificate make_certificate(ProofCert proof, std::span<const Equation> instance, Equation goal) {
  Certificate c;
  for (AxiomId id : cited_axioms(proof)) c.axioms.emplace_back(id, instance[id.index()]);
  c.goal = goal;
  c.proof = std::move(proof);
  return c;
}

CheckResult check_certificate(const Certificate& cert, const TermBank& bank,
                              std::span<const Equation> instance, Equation goal) {
  for (const auto& [id, eq] : cert.axioms) {
    if (id.index() >= instance.size() || !(instance[id.index()] == eq)) {
      return CheckResult{CheckError::UnknownAxiom,
                         "axiom " + std::to_string(id.value) + " is not an equality of the instance"};
    }
  }
  if (cert.goal.lhs != goal.lhs) return CheckResult{CheckError::StartMismatch, "certificate goal differs"};
  if (cert.goal.rhs != goal.rhs) return CheckResult{CheckError::EndMismatch, "certificate goal differs"};
  return check_cert(cert.proof, bank, instance, goal);
}

namespace {

void render_path(const ProofCert& cert, const TermBank& bank, std::size_t indent, std::string& out) {
  out += "(path ";
  out += bank.print(cert.start);
  for (const Step& s : cert.steps) {
    out += '\n';
    out.append(indent + 1, ' ');
    out += "(step (at";
    for (std::uint32_t i : s.position) {
      out += ' ';
      out += std::to_string(i);
    }
    out += ") ";
    if (const auto* ax = std::get_if<AxiomStep>(&s.just)) {
      out += "(axiom " + std::to_string(ax->axiom.value) + (ax->forward ? " fwd)" : " bwd)");
    } else {
      out += "(cong (sub ";
      render_path(*std::get<CongruenceStep>(s.just).sub, bank, indent + 2, out);
      out += "))";
    }
    out += ' ';
    out += bank.print(s.result);
    out += ')';
  }
  out += ')';
}

std::string render_equation(const Equation& eq, const TermBank& bank) {
  return "(= " + bank.print(eq.lhs) + " " + bank.print(eq.rhs) + ")";
}

[[noreturn]] void syntax(const std::string& what) { throw Error(ErrorKind::SyntaxError, what); }

const Sexpr& expect_list(const Sexpr& e, std::string_view head, std::size_t min_items) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom || e.items[0].atom != head) {
    syntax("expected (" + std::string(head) + " ...)");
  }
  if (e.items.size() < min_items) syntax("truncated (" + std::string(head) + " ...)");
  return e;
}

std::uint32_t parse_index(const Sexpr& e) {
  if (!e.is_atom || e.atom.empty() || e.atom.size() > 9 ||
      !std::all_of(e.atom.begin(), e.atom.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    syntax("expected a non-negative integer");
  }
  return static_cast<std::uint32_t>(std::stoul(e.atom));
}

class CertReader {
 public:
  explicit CertReader(TermBank& bank) : bank_(bank) {}

  Certificate read(const Sexpr& root) {
    const Sexpr& c = expect_list(root, "certificate", 4);
    if (c.items.size() != 4) syntax("certificate takes axioms, goal and path");
    Certificate out;
    expect_list(c.items[1], "axioms", 1);
    for (std::size_t i = 1; i < c.items[1].items.size(); ++i) {
      const Sexpr& entry = c.items[1].items[i];
      if (entry.is_atom || entry.items.size() != 2) syntax("axiom entry must be (I (= L R))");
      AxiomId id(parse_index(entry.items[0]));
      if (declared_.contains(id)) syntax("axiom " + std::to_string(id.value) + " declared twice");
      declared_.insert(id);
      out.axioms.emplace_back(id, equation(entry.items[1]));
    }
    const Sexpr& goal = expect_list(c.items[2], "goal", 2);
    if (goal.items.size() != 2) syntax("goal takes one equation");
    out.goal = equation(goal.items[1]);
    out.proof = path(c.items[3]);
    return out;
  }

 private:
  TermId term(const Sexpr& e) { return bank_.intern(parser_.from_sexpr(e)); }

  Equation equation(const Sexpr& e) {
    const Sexpr& eq = expect_list(e, "=", 3);
    if (eq.items.size() != 3) syntax("(= L R) takes two terms");
    return Equation{term(eq.items[1]), term(eq.items[2])};
  }

  ProofCert path(const Sexpr& e) {
    const Sexpr& p = expect_list(e, "path", 2);
    ProofCert cert;
    cert.start = term(p.items[1]);
    for (std::size_t i = 2; i < p.items.size(); ++i) cert.steps.push_back(step(p.items[i]));
    return cert;
  }

  Step step(const Sexpr& e) {
    const Sexpr& s = expect_list(e, "step", 4);
    if (s.items.size() != 4) syntax("step takes (at ...), a justification and a term");
    Step out;
    const Sexpr& at = expect_list(s.items[1], "at", 1);
    for (std::size_t i = 1; i < at.items.size(); ++i) out.position.push_back(parse_index(at.items[i]));
    const Sexpr& j = s.items[2];
    if (!j.is_atom && !j.items.empty() && j.items[0].is_atom && j.items[0].atom == "axiom") {
      if (j.items.size() != 3 || !j.items[2].is_atom || (j.items[2].atom != "fwd" && j.items[2].atom != "bwd")) {
        syntax("expected (axiom I fwd|bwd)");
      }
      AxiomId id(parse_index(j.items[1]));
      if (!declared_.contains(id)) {
        throw Error(ErrorKind::UnknownAxiom, "axiom " + std::to_string(id.value) + " is not in the axiom table");
      }
      out.just = AxiomStep{id, j.items[2].atom == "fwd"};
    } else {
      const Sexpr& cong = expect_list(j, "cong", 2);
      if (cong.items.size() != 2) syntax("expected (cong (sub PATH))");
      const Sexpr& sub = expect_list(cong.items[1], "sub", 2);
      if (sub.items.size() != 2) syntax("expected (sub PATH)");
      out.just = CongruenceStep{std::make_shared<const ProofCert>(path(sub.items[1]))};
    }
    out.result = term(s.items[3]);
    return out;
  }

  TermBank& bank_;
  TermParser parser_;
  std::set<AxiomId> declared_;
};

}  // namespace

std::string render_cert(const Certificate& cert, const TermBank& bank) {
  std::string out = "(certificate\n (axioms";
  for (const auto& [id, eq] : cert.axioms) {
    out += "\n  (" + std::to_string(id.value) + " " + render_equation(eq, bank) + ")";
  }
  out += ")\n (goal " + render_equation(cert.goal, bank) + ")\n ";
  render_path(cert.proof, bank, 1, out);
  out += ")\n";
  return out;
}

Certificate parse_cert(std::string_view text, TermBank& bank) {
  std::vector<Sexpr> forms;
  try {
    forms = read_sexprs(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnbalancedParens) syntax(std::string("truncated certificate: ") + e.what());
    throw;
  }
  if (forms.size() != 1) syntax("expected exactly one (certificate ...) form");
  return CertReader(bank).read(forms.front());
}

}  // namespace ccproof
