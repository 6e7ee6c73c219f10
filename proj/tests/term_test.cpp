#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace linweb;
using linweb::testing::Rng;
using linweb::testing::gen_term;
using linweb::testing::gen_var_pool;

TEST_CASE("apply replaces bound variables recursively") {
  TermPtr x = mk_var("X", 1), y = mk_var("Y", 2);
  Substitution s;
  s.bind(1, mk_const("a"));
  TermPtr t = mk_compound("f", {x, y});
  CHECK(pretty(s.apply(t)) == "f(a,Y)");

  Substitution empty;
  CHECK(pretty(empty.apply(mk_compound("f", {x}))) == "f(X)");

  // Full dereferencing: X -> g(Y), Y -> b.
  Substitution chain;
  chain.bind(1, mk_compound("g", {y}));
  chain.bind(2, mk_const("b"));
  CHECK(pretty(chain.apply(x)) == "g(b)");
}

TEST_CASE("unify: decomposition, clash, occurs check") {
  VarGen gen;
  TermPtr x = gen.fresh("X"), y = gen.fresh("Y");
  TermPtr t1 = mk_compound("f", {x, mk_const("b")});
  TermPtr t2 = mk_compound("f", {mk_const("a"), y});
  auto s = unify(t1, t2, Substitution{});
  REQUIRE(s.has_value());
  CHECK(pretty(s->apply(x)) == "a");
  CHECK(pretty(s->apply(y)) == "b");

  CHECK_FALSE(unify(mk_compound("f", {mk_const("a")}),
                    mk_compound("g", {mk_const("a")}), Substitution{}).has_value());

  TermPtr z = gen.fresh("Z");
  TermPtr fz = mk_compound("f", {z});
  CHECK_FALSE(unify(z, fz, Substitution{}, true).has_value());
  auto unsound = unify(z, fz, Substitution{}, false);
  REQUIRE(unsound.has_value());
  CHECK(unsound->contains(z->id));
}

TEST_CASE("unify failure leaves the input substitution unchanged") {
  VarGen gen;
  TermPtr x = gen.fresh("X");
  Substitution s;
  s.bind(x->id, mk_const("a"));
  auto r = unify(mk_compound("f", {x, x}),
                 mk_compound("f", {mk_const("a"), mk_const("b")}), s);
  CHECK_FALSE(r.has_value());
  CHECK(s.size() == 1);
  CHECK(pretty(s.apply(x)) == "a");
}

TEST_CASE("rename_fresh strips quantifiers and shares variables across disjuncts") {
  VarGen gen;
  TermPtr x = mk_var("X", gen.next++);
  DPtr d = d_all(x, d_atom(mk_compound("p", {x})));
  DPtr r = rename_fresh(d, gen);
  REQUIRE(r->kind == DFormula::Kind::Atom);
  REQUIRE(r->atom->args[0]->kind == Term::Kind::Var);
  CHECK(r->atom->args[0]->id != x->id);

  // forall X forall Y. p(X,Y) & q(Y,X): sharing preserved.
  TermPtr xv = mk_var("X", gen.next++), yv = mk_var("Y", gen.next++);
  DPtr choice = d_all(xv, d_all(yv, d_choice(d_atom(mk_compound("p", {xv, yv})),
                                             d_atom(mk_compound("q", {yv, xv})))));
  DPtr rc = rename_fresh(choice, gen);
  REQUIRE(rc->kind == DFormula::Kind::Choice);
  const auto& p_args = rc->left->atom->args;
  const auto& q_args = rc->right->atom->args;
  CHECK(p_args[0]->id == q_args[1]->id);
  CHECK(p_args[1]->id == q_args[0]->id);
  CHECK(p_args[0]->id != p_args[1]->id);

  // Two renamings yield disjoint fresh ids.
  DPtr rc2 = rename_fresh(choice, gen);
  CHECK(rc2->left->atom->args[0]->id != rc->left->atom->args[0]->id);

  // Structure is preserved up to variable identity.
  CHECK(equal_mod_renaming(rc, rc2));
}

TEST_CASE("property: unification soundness and idempotence") {
  Rng rng(20260823);
  VarGen gen;
  int successes = 0;
  for (int i = 0; i < 400; ++i) {
    auto vars = gen_var_pool(rng, gen, 4);
    TermPtr t1 = gen_term(rng, 5, vars);
    TermPtr t2 = gen_term(rng, 5, vars);
    auto s = unify(t1, t2, Substitution{});
    if (!s) continue;
    ++successes;
    TermPtr a1 = s->apply(t1), a2 = s->apply(t2);
    CHECK(term_equal(a1, a2));
    CHECK(term_equal(s->apply(a1), a1));  // idempotent
  }
  CHECK(successes > 50);  // the generator must actually exercise success paths
}

namespace {

// Brute-force enumeration of ground unifiers over a tiny universe.
std::vector<TermPtr> small_universe() {
  return {mk_const("a"), mk_const("b"), mk_compound("f", {mk_const("a")})};
}

void all_assignments(const std::vector<TermPtr>& vars, std::size_t i,
                     Substitution s, std::vector<Substitution>& out) {
  if (i == vars.size()) {
    out.push_back(std::move(s));
    return;
  }
  for (const TermPtr& u : small_universe()) {
    Substitution s2 = s;
    s2.bind(vars[i]->id, u);
    all_assignments(vars, i + 1, std::move(s2), out);
  }
}

}  // namespace

TEST_CASE("property: most generality against brute-forced unifiers") {
  Rng rng(77);
  VarGen gen;
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    auto vars = gen_var_pool(rng, gen, 3);
    TermPtr t1 = gen_term(rng, 3, vars);
    TermPtr t2 = gen_term(rng, 3, vars);
    auto mgu = unify(t1, t2, Substitution{});

    std::vector<TermPtr> term_vars;
    collect_vars(t1, term_vars);
    collect_vars(t2, term_vars);
    if (term_vars.size() > 3) continue;
    std::vector<Substitution> candidates;
    all_assignments(term_vars, 0, Substitution{}, candidates);
    for (const Substitution& theta : candidates) {
      if (!term_equal(theta.apply(t1), theta.apply(t2))) continue;
      // theta unifies, so the mgu must exist and theta must factor through
      // it: theta(mgu(v)) == theta(v) for every variable of the problem.
      REQUIRE(mgu.has_value());
      for (const TermPtr& v : term_vars)
        CHECK(term_equal(theta.apply(mgu->apply(v)), theta.apply(v)));
      ++checked;
    }
  }
  CHECK(checked > 100);
}
