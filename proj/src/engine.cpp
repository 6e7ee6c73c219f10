#include "linweb/engine.hpp"

#include <utility>

#include "linweb/modules.hpp"
#include "linweb/pretty.hpp"

namespace linweb {

namespace {

struct LimitExceeded {};

// Balanced hypothesis push/pop on every exit path.
struct HypothesisScope {
  std::deque<DPtr>* stack;
  std::function<void()> on_pop;
  HypothesisScope(std::deque<DPtr>* s, DPtr clause, std::function<void()> pop)
      : stack(s), on_pop(std::move(pop)) {
    stack->push_front(std::move(clause));
  }
  ~HypothesisScope() {
    stack->pop_front();
    if (on_pop) on_pop();
  }
};

}  // namespace

std::string format_event(const TraceEvent& ev) {
  static const char* names[] = {"CALL", "EXIT", "FAIL", "COMMIT", "PRUNE", "PUSH", "POP"};
  return std::string(names[static_cast<int>(ev.kind)]) + " " +
         std::to_string(ev.depth) + " " + ev.subject;
}

Solver::Solver(std::vector<DPtr> program, VarGen& gen, SolveOptions opts)
    : statics_(std::move(program)), gen_(gen), opts_(opts) {}

void Solver::trace(TraceEvent::Kind kind, int depth, const std::string& subject) {
  if (opts_.trace) opts_.trace->on_event(TraceEvent{kind, depth, subject});
}

void Solver::step(int depth) {
  ++stats_.inferences;
  if (opts_.max_steps && stats_.inferences > opts_.max_steps) throw LimitExceeded{};
  if (opts_.max_depth && static_cast<std::uint64_t>(depth) > opts_.max_depth)
    throw LimitExceeded{};
}

bool Solver::solve_goal(const GPtr& g, const Substitution& s, int depth, const Cont& k) {
  switch (g->kind) {
    case GFormula::Kind::Atom:
      if (g->builtin) return call_builtin(g->atom, s, depth, k);
      return solve_atom(g->atom, s, depth, k);
    case GFormula::Kind::And: {
      const GPtr& right = g->body;
      return solve_goal(g->left, s, depth,
                        [&](const Substitution& s2) {
                          return solve_goal(right, s2, depth, k);
                        });
    }
    case GFormula::Kind::Exists: {
      std::map<std::uint64_t, TermPtr> m{{g->var->id, gen_.fresh()}};
      return solve_goal(substitute(g->body, m), s, depth, k);
    }
    case GFormula::Kind::Assume: {
      trace(TraceEvent::Kind::Push, depth, pretty(g->clause));
      ++stats_.hypothesesPushed;
      HypothesisScope scope(&hypotheses_, g->clause, [this, depth, &g] {
        trace(TraceEvent::Kind::Pop, depth, pretty(g->clause));
      });
      // The continuation escapes this scope: the rest of the proof must not
      // see the hypothesis, and backtracking back in must restore it.
      Cont k_outside = [&](const Substitution& s2) {
        DPtr saved = hypotheses_.front();
        hypotheses_.pop_front();
        bool stop;
        try {
          stop = k(s2);
        } catch (...) {
          hypotheses_.push_front(std::move(saved));
          throw;
        }
        hypotheses_.push_front(std::move(saved));
        return stop;
      };
      return solve_goal(g->body, s, depth, k_outside);
    }
    case GFormula::Kind::Load: {
      if (!opts_.registry)
        throw LoadError("no module registry configured for \"" + g->url + "\"");
      GPtr elaborated = opts_.registry->elaborate_load(g->url, g->body);
      return solve_goal(elaborated, s, depth, k);
    }
  }
  return false;
}

bool Solver::solve_atom(const TermPtr& atom, const Substitution& s, int depth,
                        const Cont& k) {
  trace(TraceEvent::Kind::Call, depth, pretty(s.apply(atom)));
  Cont k_exit = [&](const Substitution& s2) {
    trace(TraceEvent::Kind::Exit, depth, pretty(s2.apply(atom)));
    return k(s2);
  };
  // The program for this atom is fixed at selection time: hypotheses most
  // recent first, then static clauses in source order.
  std::vector<DPtr> candidates(hypotheses_.begin(), hypotheses_.end());
  candidates.insert(candidates.end(), statics_.begin(), statics_.end());
  for (const DPtr& d : candidates) {
    step(depth);
    DPtr renamed = rename_fresh(d, gen_);
    std::vector<GPtr> bodies;
    if (backchain(renamed, atom, bodies, s, depth + 1, k_exit)) return true;
  }
  trace(TraceEvent::Kind::Fail, depth, pretty(s.apply(atom)));
  return false;
}

bool Solver::backchain(const DPtr& d, const TermPtr& atom, std::vector<GPtr>& bodies,
                       const Substitution& s, int depth, const Cont& k) {
  switch (d->kind) {
    case DFormula::Kind::Atom: {
      auto s2 = unify(d->atom, atom, s, opts_.occurs_check);
      if (!s2) return false;
      return solve_bodies(bodies, 0, *s2, depth, k);
    }
    case DFormula::Kind::Imp: {
      // Head first; accumulated bodies run outermost-first afterwards.
      bodies.push_back(d->body);
      bool stop = backchain(d->inner, atom, bodies, s, depth, k);
      bodies.pop_back();
      return stop;
    }
    case DFormula::Kind::All: {
      // Normally consumed by rename_fresh before backchaining begins.
      std::map<std::uint64_t, TermPtr> m{{d->var->id, gen_.fresh()}};
      DPtr inner = substitute(d->inner, m);
      return backchain(inner, atom, bodies, s, depth, k);
    }
    case DFormula::Kind::Choice: {
      bool committed = false;
      bool strict_cutoff = false;
      auto guarded = [&](const DPtr& taken, const DPtr& sibling,
                         bool sibling_unexplored) -> Cont {
        return [&, taken, sibling, sibling_unexplored](const Substitution& s2) {
          if (!committed) {
            committed = true;
            ++stats_.choiceCommits;
            trace(TraceEvent::Kind::Commit, depth, pretty(taken));
            if (sibling_unexplored) {
              ++stats_.choicePrunes;
              trace(TraceEvent::Kind::Prune, depth, pretty(sibling));
            }
          }
          bool stop = k(s2);
          if (!stop && opts_.strict_commit) {
            strict_cutoff = true;
            return true;
          }
          return stop;
        };
      };
      bool stop = backchain(d->left, atom, bodies, s, depth,
                            guarded(d->left, d->right, /*sibling_unexplored=*/true));
      if (stop && !strict_cutoff) return true;
      if (committed) return false;  // the sibling is never attempted
      strict_cutoff = false;
      stop = backchain(d->right, atom, bodies, s, depth,
                       guarded(d->right, d->left, /*sibling_unexplored=*/false));
      return stop && !strict_cutoff;
    }
  }
  return false;
}

bool Solver::solve_bodies(const std::vector<GPtr>& bodies, std::size_t i,
                          const Substitution& s, int depth, const Cont& k) {
  if (i == bodies.size()) return k(s);
  return solve_goal(bodies[i], s, depth,
                    [&](const Substitution& s2) {
                      return solve_bodies(bodies, i + 1, s2, depth, k);
                    });
}

bool Solver::call_builtin(const TermPtr& atom, const Substitution& s, int depth,
                          const Cont& k) {
  trace(TraceEvent::Kind::Call, depth, pretty(s.apply(atom)));
  const std::string& f = atom->name;
  TermPtr lhs = s.apply(atom->args[0]);
  TermPtr rhs = s.apply(atom->args[1]);
  bool ok = false;
  if (f == "=") {
    auto s2 = unify(lhs, rhs, s, opts_.occurs_check);
    if (s2) {
      trace(TraceEvent::Kind::Exit, depth, pretty(s2->apply(atom)));
      return k(*s2);
    }
    trace(TraceEvent::Kind::Fail, depth, pretty(s.apply(atom)));
    return false;
  }
  if (f == "neq") {
    if (!is_ground(lhs) || !is_ground(rhs))
      throw BuiltinError("instantiation error: neq/2 requires ground arguments in " +
                         pretty(s.apply(atom)));
    ok = !term_equal(lhs, rhs);
  } else {
    if (lhs->kind != Term::Kind::Int || rhs->kind != Term::Kind::Int)
      throw BuiltinError("instantiation error: " + f +
                         "/2 requires integer arguments in " + pretty(s.apply(atom)));
    long long a = lhs->value, b = rhs->value;
    if (f == "ge") ok = a >= b;
    else if (f == "gt") ok = a > b;
    else if (f == "le") ok = a <= b;
    else if (f == "lt") ok = a < b;
    else throw BuiltinError("unknown builtin: " + f);
  }
  if (!ok) {
    trace(TraceEvent::Kind::Fail, depth, pretty(s.apply(atom)));
    return false;
  }
  trace(TraceEvent::Kind::Exit, depth, pretty(s.apply(atom)));
  return k(s);
}

Outcome Solver::stream(const ParsedGoal& query, const AnswerFn& on_answer) {
  GPtr body = query.goal;
  while (body->kind == GFormula::Kind::Exists) body = body->body;

  bool stopped = false;
  Cont top = [&](const Substitution& s) {
    Answer a;
    for (const auto& [name, var] : query.template_vars)
      a.bindings.emplace_back(name, s.apply(var));
    if (!on_answer(a)) {
      stopped = true;
      return true;
    }
    return false;
  };
  try {
    solve_goal(body, Substitution{}, 0, top);
  } catch (const LimitExceeded&) {
    return Outcome::LimitHit;
  }
  return stopped ? Outcome::Stopped : Outcome::Exhausted;
}

SolveResult Solver::run(const ParsedGoal& query) {
  SolveResult result;
  result.outcome = stream(query, [&](const Answer& a) {
    result.answers.push_back(a);
    return opts_.mode == SolveOptions::Mode::All;
  });
  result.stats = stats_;
  return result;
}

SolveResult solve(const std::vector<DPtr>& program, const ParsedGoal& query,
                  VarGen& gen, SolveOptions opts) {
  Solver solver(program, gen, opts);
  return solver.run(query);
}

}  // namespace linweb
