#include "linweb/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "linweb/modules.hpp"
#include "linweb/pretty.hpp"

namespace linweb {

namespace {

struct OracleLimit {};

// A D-formula denotes a set of flat Horn alternatives (head, body list).
// Choice contributes both branches; implication prepends its body so the
// outermost body runs first.
struct Alternative {
  TermPtr head;
  std::vector<GPtr> bodies;
};

void flatten(const DPtr& d, std::vector<Alternative>& out, VarGen& gen) {
  switch (d->kind) {
    case DFormula::Kind::Atom:
      out.push_back({d->atom, {}});
      return;
    case DFormula::Kind::Imp: {
      std::vector<Alternative> inner;
      flatten(d->inner, inner, gen);
      for (auto& alt : inner) {
        alt.bodies.insert(alt.bodies.begin(), d->body);
        out.push_back(std::move(alt));
      }
      return;
    }
    case DFormula::Kind::All: {
      std::map<std::uint64_t, TermPtr> m{{d->var->id, gen.fresh()}};
      flatten(substitute(d->inner, m), out, gen);
      return;
    }
    case DFormula::Kind::Choice:
      flatten(d->left, out, gen);
      flatten(d->right, out, gen);
      return;
  }
}

class Enumerator {
 public:
  Enumerator(VarGen& gen, OracleOptions opts) : gen_(gen), opts_(opts) {}

  using Emit = std::function<void(const Substitution&)>;

  void goal(const GPtr& g, const std::vector<DPtr>& prog, const Substitution& s,
            const Emit& emit) {
    switch (g->kind) {
      case GFormula::Kind::Atom:
        if (g->builtin)
          builtin(g->atom, s, emit);
        else
          atom(g->atom, prog, s, emit);
        return;
      case GFormula::Kind::And:
        goal(g->left, prog, s, [&](const Substitution& s2) {
          goal(g->body, prog, s2, emit);
        });
        return;
      case GFormula::Kind::Exists: {
        std::map<std::uint64_t, TermPtr> m{{g->var->id, gen_.fresh()}};
        goal(substitute(g->body, m), prog, s, emit);
        return;
      }
      case GFormula::Kind::Assume: {
        std::vector<DPtr> extended;
        extended.reserve(prog.size() + 1);
        extended.push_back(g->clause);
        extended.insert(extended.end(), prog.begin(), prog.end());
        goal(g->body, extended, s, emit);
        return;
      }
      case GFormula::Kind::Load: {
        if (!opts_.registry)
          throw LoadError("no module registry configured for \"" + g->url + "\"");
        std::vector<DPtr> clauses = opts_.registry->load_module(g->url);
        std::vector<DPtr> extended;
        extended.reserve(prog.size() + clauses.size());
        extended.insert(extended.end(), clauses.begin(), clauses.end());
        extended.insert(extended.end(), prog.begin(), prog.end());
        goal(g->body, extended, s, emit);
        return;
      }
    }
  }

 private:
  void atom(const TermPtr& a, const std::vector<DPtr>& prog, const Substitution& s,
            const Emit& emit) {
    for (const DPtr& d : prog) {
      if (++steps_ > opts_.max_steps) throw OracleLimit{};
      std::vector<Alternative> alts;
      flatten(rename_fresh(d, gen_), alts, gen_);
      for (const Alternative& alt : alts) {
        auto s2 = unify(alt.head, a, s, opts_.occurs_check);
        if (!s2) continue;
        conj(alt.bodies, 0, prog, *s2, emit);
      }
    }
  }

  void conj(const std::vector<GPtr>& bodies, std::size_t i,
            const std::vector<DPtr>& prog, const Substitution& s, const Emit& emit) {
    if (i == bodies.size()) {
      emit(s);
      return;
    }
    goal(bodies[i], prog, s, [&](const Substitution& s2) {
      conj(bodies, i + 1, prog, s2, emit);
    });
  }

  void builtin(const TermPtr& a, const Substitution& s, const Emit& emit) {
    const std::string& f = a->name;
    TermPtr lhs = s.apply(a->args[0]);
    TermPtr rhs = s.apply(a->args[1]);
    if (f == "=") {
      auto s2 = unify(lhs, rhs, s, opts_.occurs_check);
      if (s2) emit(*s2);
      return;
    }
    if (f == "neq") {
      if (!is_ground(lhs) || !is_ground(rhs))
        throw BuiltinError("instantiation error: neq/2 requires ground arguments in " +
                           pretty(s.apply(a)));
      if (!term_equal(lhs, rhs)) emit(s);
      return;
    }
    if (lhs->kind != Term::Kind::Int || rhs->kind != Term::Kind::Int)
      throw BuiltinError("instantiation error: " + f +
                         "/2 requires integer arguments in " + pretty(s.apply(a)));
    long long x = lhs->value, y = rhs->value;
    bool ok = f == "ge"   ? x >= y
              : f == "gt" ? x > y
              : f == "le" ? x <= y
              : f == "lt" ? x < y
                          : throw BuiltinError("unknown builtin: " + f);
    if (ok) emit(s);
  }

  VarGen& gen_;
  OracleOptions opts_;
  std::uint64_t steps_ = 0;
};

}  // namespace

OracleResult solve_nondet(const std::vector<DPtr>& program, const ParsedGoal& query,
                          VarGen& gen, OracleOptions opts) {
  GPtr body = query.goal;
  while (body->kind == GFormula::Kind::Exists) body = body->body;

  OracleResult result;
  Enumerator e(gen, opts);
  try {
    e.goal(body, program, Substitution{}, [&](const Substitution& s) {
      Answer a;
      for (const auto& [name, var] : query.template_vars)
        a.bindings.emplace_back(name, s.apply(var));
      result.answers.push_back(std::move(a));
    });
  } catch (const OracleLimit&) {
    result.limit_hit = true;
  }
  return result;
}

std::string answer_key(const Answer& a) {
  VarNamer namer;
  std::ostringstream os;
  for (std::size_t i = 0; i < a.bindings.size(); ++i) {
    if (i) os << ";";
    os << a.bindings[i].first << "=" << pretty_renamed(a.bindings[i].second, namer);
  }
  if (a.bindings.empty()) os << "true";
  return os.str();
}

DiffReport differential_check(const std::vector<DPtr>& program, const ParsedGoal& query,
                              VarGen& gen, std::uint64_t max_steps,
                              ModuleRegistry* registry) {
  DiffReport report;

  SolveOptions eopts;
  eopts.mode = SolveOptions::Mode::All;
  eopts.max_steps = max_steps;
  eopts.registry = registry;
  SolveResult er = solve(program, query, gen, eopts);
  report.engineAnswers = er.answers;

  OracleOptions oopts;
  oopts.max_steps = max_steps;
  oopts.registry = registry;
  OracleResult orr = solve_nondet(program, query, gen, oopts);
  report.oracleAnswers = orr.answers;

  report.conclusive = !er.limit_hit() && !orr.limit_hit;

  std::set<std::string> oracle_keys;
  for (const Answer& a : orr.answers) oracle_keys.insert(answer_key(a));
  report.subsetHolds = std::all_of(
      er.answers.begin(), er.answers.end(),
      [&](const Answer& a) { return oracle_keys.count(answer_key(a)) != 0; });
  report.firstAnswerMatched =
      er.answers.empty() ? orr.answers.empty()
                         : oracle_keys.count(answer_key(er.answers.front())) != 0;
  return report;
}

std::string format_report(const DiffReport& r) {
  std::ostringstream os;
  os << "engine answers: " << r.engineAnswers.size() << "\n";
  for (const Answer& a : r.engineAnswers) os << "  " << answer_key(a) << "\n";
  os << "oracle answers: " << r.oracleAnswers.size() << "\n";
  for (const Answer& a : r.oracleAnswers) os << "  " << answer_key(a) << "\n";
  os << "subsetHolds: " << (r.subsetHolds ? "true" : "false") << "\n";
  os << "firstAnswerMatched: " << (r.firstAnswerMatched ? "true" : "false") << "\n";
  os << "conclusive: " << (r.conclusive ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace linweb
