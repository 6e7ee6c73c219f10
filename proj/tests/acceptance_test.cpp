// Acceptance suite: one pass/fail line per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>

#include "linweb/modules.hpp"
#include "support.hpp"

using namespace linweb;
using linweb::testing::Rng;
using linweb::testing::answer_keys;
using linweb::testing::load_corpus;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", what);
}

struct CountingTrace : TraceSink {
  std::size_t prunes = 0;
  std::size_t calls_on_append = 0;
  void on_event(const TraceEvent& ev) override {
    if (ev.kind == TraceEvent::Kind::Prune) ++prunes;
    if (ev.kind == TraceEvent::Kind::Call && ev.subject.rfind("append(", 0) == 0)
      ++calls_on_append;
  }
};

}  // namespace

TEST_CASE("criterion 1: max(9,3,M) commits once and prunes once") {
  VarGen gen;
  auto program = load_corpus("max.lw", gen);
  ParsedGoal q = parse_goal("max(9,3,M)", gen);
  SolveOptions opts;
  opts.mode = SolveOptions::Mode::All;
  auto t0 = Clock::now();
  SolveResult r = solve(program, q, gen, opts);
  double elapsed = ms_since(t0);
  bool ok = answer_keys(r.answers) == std::vector<std::string>{"M=9"} &&
            r.stats.choiceCommits == 1 && r.stats.choicePrunes == 1 &&
            elapsed < 10.0;
  report(1, ok, "max(9,3,M) -> M = 9, commits=1, prunes=1, " +
                    std::to_string(elapsed) + " ms");
}

TEST_CASE("criterion 2: lists module union via url hypothesis") {
  VarGen gen;
  ModuleRegistry reg;
  reg.register_mapping("www.dau.com/lists", linweb::testing::corpus_path("lists.lw"));
  SolveOptions opts;
  opts.registry = &reg;
  ParsedGoal q = parse_goal("\"www.dau.com/lists\" => uni([a,b],[b,c],Z)", gen);
  auto t0 = Clock::now();
  SolveResult r = solve({}, q, gen, opts);
  double elapsed = ms_since(t0);
  bool ok = !r.answers.empty() && answer_key(r.answers[0]) == "Z=[a,b,c]" &&
            elapsed < 50.0;
  report(2, ok, "uni([a,b],[b,c],Z) -> Z = [a,b,c], " + std::to_string(elapsed) + " ms");
}

TEST_CASE("criterion 3: append creates no backtracking point") {
  VarGen gen;
  auto program = load_corpus("choice_append.lw", gen);
  CountingTrace trace;
  SolveOptions opts;
  opts.mode = SolveOptions::Mode::All;
  opts.trace = &trace;
  auto t0 = Clock::now();
  SolveResult er = solve(program, parse_goal("append(X,Y,[1,2])", gen), gen, opts);
  OracleResult orr = solve_nondet(program, parse_goal("append(X,Y,[1,2])", gen), gen);
  double elapsed = ms_since(t0);
  // The pruned sibling is the recursive clause; exploring it would issue a
  // second CALL on append. Exactly one CALL means zero sibling explorations.
  bool ok = er.answers.size() == 1 && orr.answers.size() == 3 &&
            trace.prunes == 1 && trace.calls_on_append == 1 && elapsed < 50.0;
  report(3, ok, "engine 1 answer / oracle 3, no pruned-sibling exploration, " +
                    std::to_string(elapsed) + " ms");
}

TEST_CASE("criterion 4: memb is deterministic") {
  VarGen gen;
  auto program = load_corpus("lists.lw", gen);
  SolveOptions opts;
  opts.mode = SolveOptions::Mode::All;
  SolveResult r = solve(program, parse_goal("memb(a,[a,b,a])", gen), gen, opts);
  report(4, r.answers.size() == 1, "memb(a,[a,b,a]) yields exactly 1 success");
}

TEST_CASE("criterion 5: differential suite over 500 random choice programs") {
  Rng rng(20260501);
  VarGen gen;
  int conclusive = 0, subset_ok = 0;
  auto t0 = Clock::now();
  for (int i = 0; i < 500; ++i) {
    auto p = linweb::testing::gen_program(rng, gen, true);
    DiffReport r = differential_check(p.clauses, p.query, gen);
    if (!r.conclusive) continue;
    ++conclusive;
    if (r.subsetHolds) ++subset_ok;
  }
  double elapsed = ms_since(t0);
  bool ok = conclusive >= 475 && subset_ok == conclusive && elapsed < 60'000.0;
  report(5, ok, "subsetHolds " + std::to_string(subset_ok) + "/" +
                    std::to_string(conclusive) + " conclusive of 500, " +
                    std::to_string(elapsed) + " ms");
}

TEST_CASE("criterion 6: choice-free equivalence on 200 random Horn programs") {
  Rng rng(20260601);
  VarGen gen;
  int identical = 0;
  auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    auto p = linweb::testing::gen_program(rng, gen, false);
    SolveOptions eopts;
    eopts.mode = SolveOptions::Mode::All;
    SolveResult er = solve(p.clauses, p.query, gen, eopts);
    OracleResult orr = solve_nondet(p.clauses, p.query, gen);
    if (!er.limit_hit() && !orr.limit_hit &&
        answer_keys(er.answers) == answer_keys(orr.answers))
      ++identical;
  }
  double elapsed = ms_since(t0);
  bool ok = identical == 200 && elapsed < 30'000.0;
  report(6, ok, "identical answer sequences " + std::to_string(identical) +
                    "/200, " + std::to_string(elapsed) + " ms");
}

TEST_CASE("criterion 7: unification property suite") {
  Rng rng(20260701);
  VarGen gen;
  bool sound = true;
  for (int i = 0; i < 1000; ++i) {
    auto vars = linweb::testing::gen_var_pool(rng, gen, 4);
    TermPtr t1 = linweb::testing::gen_term(rng, 5, vars);
    TermPtr t2 = linweb::testing::gen_term(rng, 5, vars);
    auto s = unify(t1, t2, Substitution{});
    if (!s) continue;
    TermPtr a1 = s->apply(t1), a2 = s->apply(t2);
    if (!term_equal(a1, a2) || !term_equal(s->apply(a1), a1)) {
      sound = false;
      break;
    }
  }
  int cyclic_rejected = 0;
  for (int i = 0; i < 50; ++i) {
    TermPtr x = gen.fresh("X");
    TermPtr t = x;
    int depth = 1 + i % 4;
    for (int d = 0; d < depth; ++d)
      t = (i + d) % 2 == 0 ? mk_compound("f", {t})
                           : mk_compound("g", {mk_const("c"), t});
    if (!unify(x, t, Substitution{}, true).has_value()) ++cyclic_rejected;
  }
  bool ok = sound && cyclic_rejected == 50;
  report(7, ok, "1000 pairs sound+idempotent, cyclic rejected " +
                    std::to_string(cyclic_rejected) + "/50");
}

TEST_CASE("criterion 8: parser round trip") {
  Rng rng(20260801);
  VarGen gen;
  int formulas = 0;
  bool ok = true;
  while (formulas < 500 && ok) {
    auto p = linweb::testing::gen_program(rng, gen, true);
    for (const DPtr& unit : p.clauses) {
      std::string text = pretty(unit) + ".";
      DPtr f1 = parse_program(text, gen).clauses[0];
      std::string text2 = pretty(f1) + ".";
      DPtr f2 = parse_program(text2, gen).clauses[0];
      if (text2 != text || !equal_mod_renaming(f1, f2)) {
        ok = false;
        break;
      }
      ++formulas;
    }
  }
  bool corpus_ok = true;
  for (const char* name : {"max.lw", "lists.lw"}) {
    std::string source = linweb::testing::slurp(linweb::testing::corpus_path(name));
    std::string once = pretty_module(parse_program(source, gen));
    std::string twice = pretty_module(parse_program(once, gen));
    corpus_ok = corpus_ok && once == twice;
  }
  report(8, ok && formulas >= 500 && corpus_ok,
         std::to_string(formulas) + " formulas round-trip, corpus fixpoint " +
             (corpus_ok ? "holds" : "broken"));
}

TEST_CASE("criterion 9: module scoping and context restoration") {
  VarGen gen;
  ModuleRegistry reg;
  // p is defined only inside module u.
  std::string tmp = std::string(LINWEB_SOURCE_DIR) + "/corpus/scope_p.lw";
  reg.register_mapping("u", tmp);
  SolveOptions opts;
  opts.registry = &reg;
  auto program = parse_program("q.", gen).clauses;
  Solver solver(program, gen, opts);
  std::size_t before = solver.program_size();
  SolveResult r = solver.run(parse_goal("(\"u\" => p), p", gen));
  std::size_t after = solver.program_size();
  // The first conjunct alone succeeds, so the failure is the second p.
  SolveResult first_only = solve(program, parse_goal("\"u\" => p", gen), gen, opts);
  bool ok = r.answers.empty() && first_only.answers.size() == 1 && before == after;
  report(9, ok, "(\"u\" => p), p fails on the second conjunct; program length restored");
}
