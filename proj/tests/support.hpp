#ifndef LINWEB_TESTS_SUPPORT_HPP
#define LINWEB_TESTS_SUPPORT_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linweb/engine.hpp"
#include "linweb/formula.hpp"
#include "linweb/oracle.hpp"
#include "linweb/parser.hpp"
#include "linweb/pretty.hpp"
#include "linweb/term.hpp"

namespace linweb::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(LINWEB_SOURCE_DIR) + "/corpus/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::vector<DPtr> load_corpus(const std::string& name, VarGen& gen) {
  return parse_program(slurp(corpus_path(name)), gen).clauses;
}

struct Rng {
  std::mt19937 eng;
  explicit Rng(std::uint32_t seed) : eng(seed) {}
  int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint32_t>(n)); }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0, 1)(eng) < p;
  }
};

// Random first-order term over a small alphabet; shared variable pool.
inline TermPtr gen_term(Rng& rng, int depth, const std::vector<TermPtr>& vars) {
  int leaf_kinds = vars.empty() ? 2 : 3;
  if (depth <= 0 || rng.chance(0.35)) {
    switch (rng.pick(leaf_kinds)) {
      case 0: {
        static const char* consts[] = {"a", "b", "c"};
        return mk_const(consts[rng.pick(3)]);
      }
      case 1:
        return mk_int(rng.pick(4));
      default:
        return vars[rng.pick(static_cast<int>(vars.size()))];
    }
  }
  if (rng.chance(0.5)) return mk_compound("f", {gen_term(rng, depth - 1, vars)});
  return mk_compound("g", {gen_term(rng, depth - 1, vars), gen_term(rng, depth - 1, vars)});
}

inline std::vector<TermPtr> gen_var_pool(Rng& rng, VarGen& gen, int max_vars) {
  std::vector<TermPtr> vars;
  int n = rng.pick(max_vars + 1);
  for (int i = 0; i < n; ++i)
    vars.push_back(mk_var("X" + std::to_string(i + 1), gen.next++));
  return vars;
}

// Randomized programs for differential testing. Bodies only call
// lower-indexed predicates, so every derivation is finite; builtin guards
// are always ground; up to two choice units per program.
struct GenProgram {
  std::vector<DPtr> clauses;
  ParsedGoal query;
};

inline GenProgram gen_program(Rng& rng, VarGen& gen, bool allow_choice) {
  static const int kPreds = 4;
  static const int kArity[kPreds] = {1, 2, 1, 2};
  auto pred_name = [](int i) { return "p" + std::to_string(i); };

  auto gen_leaf = [&](int pred, std::vector<TermPtr>& unit_vars) -> DPtr {
    std::vector<TermPtr> vars;
    int nv = rng.pick(3);
    for (int v = 0; v < nv; ++v) {
      vars.push_back(gen.fresh("V"));
      unit_vars.push_back(vars.back());
    }
    auto small_arg = [&]() -> TermPtr {
      if (!vars.empty() && rng.chance(0.5))
        return vars[rng.pick(static_cast<int>(vars.size()))];
      if (rng.chance(0.3)) return mk_int(rng.pick(3));
      if (rng.chance(0.25)) return mk_compound("f", {mk_const("a")});
      static const char* consts[] = {"a", "b", "c"};
      return mk_const(consts[rng.pick(3)]);
    };
    std::vector<TermPtr> head_args;
    for (int a = 0; a < kArity[pred]; ++a) head_args.push_back(small_arg());
    TermPtr head = mk_compound(pred_name(pred), std::move(head_args));

    std::vector<GPtr> body;
    int nb = pred == 0 ? 0 : rng.pick(3);
    for (int b = 0; b < nb; ++b) {
      int callee = rng.pick(pred);  // strictly lower index: terminating
      std::vector<TermPtr> args;
      for (int a = 0; a < kArity[callee]; ++a) args.push_back(small_arg());
      body.push_back(g_atom(mk_compound(pred_name(callee), std::move(args))));
    }
    if (rng.chance(0.15)) {
      int x = rng.pick(4), y = rng.pick(4);
      body.push_back(g_atom(mk_compound(rng.chance(0.5) ? "ge" : "lt",
                                        {mk_int(x), mk_int(y)})));
    }
    DPtr d = d_atom(std::move(head));
    if (!body.empty()) {
      GPtr g = body.back();
      for (int b = static_cast<int>(body.size()) - 2; b >= 0; --b)
        g = g_and(body[b], g);
      d = d_imp(std::move(g), std::move(d));
    }
    return d;
  };

  GenProgram out;
  int n_clauses = 3 + rng.pick(6);  // 3..8
  int choices_used = 0;
  for (int c = 0; c < n_clauses; ++c) {
    int pred = rng.pick(kPreds);
    std::vector<TermPtr> unit_vars;
    DPtr unit;
    if (allow_choice && choices_used < 2 && rng.chance(0.4)) {
      DPtr l = gen_leaf(pred, unit_vars);
      DPtr r = gen_leaf(pred, unit_vars);
      unit = d_choice(std::move(l), std::move(r));
      ++choices_used;
    } else {
      unit = gen_leaf(pred, unit_vars);
    }
    for (auto it = unit_vars.rbegin(); it != unit_vars.rend(); ++it)
      unit = d_all(*it, unit);
    out.clauses.push_back(std::move(unit));
  }

  int qpred = rng.pick(kPreds);
  std::vector<TermPtr> args;
  int qv = 0;
  for (int a = 0; a < kArity[qpred]; ++a) {
    if (qv < 2 && rng.chance(0.5)) {
      TermPtr v = mk_var("Q" + std::to_string(++qv), gen.next++);
      out.query.template_vars.emplace_back(v->name, v);
      args.push_back(v);
    } else if (rng.chance(0.3)) {
      args.push_back(mk_int(rng.pick(3)));
    } else {
      static const char* consts[] = {"a", "b", "c"};
      args.push_back(mk_const(consts[rng.pick(3)]));
    }
  }
  out.query.goal = g_atom(mk_compound(pred_name(qpred), std::move(args)));
  return out;
}

inline std::vector<std::string> answer_keys(const std::vector<Answer>& answers) {
  std::vector<std::string> keys;
  for (const auto& a : answers) keys.push_back(answer_key(a));
  return keys;
}

}  // namespace linweb::testing

#endif
