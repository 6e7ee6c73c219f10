#ifndef LINWEB_FORMULA_HPP
#define LINWEB_FORMULA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linweb/term.hpp"

namespace linweb {

struct GFormula;
struct DFormula;
using GPtr = std::shared_ptr<const GFormula>;
using DPtr = std::shared_ptr<const DFormula>;

// Goals:  G ::= A | G , G | (D) => G | "url" => G | exists x G
struct GFormula {
  enum class Kind { Atom, And, Assume, Load, Exists };
  Kind kind;
  TermPtr atom;       // Atom (Const or Compound, never Var/Int)
  bool builtin = false;
  GPtr left;          // And
  GPtr body;          // And right / Assume / Load / Exists body
  DPtr clause;        // Assume
  std::string url;    // Load
  TermPtr var;        // Exists
};

// Clauses:  D ::= A | Head :- Body | forall x D | D & D
struct DFormula {
  enum class Kind { Atom, Imp, All, Choice };
  Kind kind;
  TermPtr atom;       // Atom
  GPtr body;          // Imp body (G)
  DPtr inner;         // Imp head / All inner
  TermPtr var;        // All bound variable
  DPtr left, right;   // Choice
};

struct SourceModule {
  std::optional<std::string> url;  // from a mod("...") declaration
  std::vector<DPtr> clauses;       // source order
};

// ge/gt/le/lt/neq/= with arity 2.
bool is_builtin_functor(const std::string& name, std::size_t arity);

GPtr g_atom(TermPtr atom);
GPtr g_and(GPtr left, GPtr right);
GPtr g_assume(DPtr clause, GPtr body);
GPtr g_load(std::string url, GPtr body);
GPtr g_exists(TermPtr var, GPtr body);

DPtr d_atom(TermPtr atom);
DPtr d_imp(GPtr body, DPtr head);
DPtr d_all(TermPtr var, DPtr inner);
DPtr d_choice(DPtr left, DPtr right);

// Rule-3 instantiation: strips every universal quantifier of d, replacing
// each bound variable by one fresh variable shared across its whole scope
// (both disjuncts of a choice included). Structure is otherwise unchanged.
DPtr rename_fresh(const DPtr& d, VarGen& gen);

// Variable-for-term replacement over a whole clause / goal tree.
DPtr substitute(const DPtr& d, const std::map<std::uint64_t, TermPtr>& m);
GPtr substitute(const GPtr& g, const std::map<std::uint64_t, TermPtr>& m);

bool formula_equal(const DPtr& a, const DPtr& b);
bool formula_equal(const GPtr& a, const GPtr& b);

// Equality up to a bijective renaming of variables.
bool equal_mod_renaming(const DPtr& a, const DPtr& b);
bool equal_mod_renaming(const GPtr& a, const GPtr& b);

// Leaf Horn clauses reachable through Imp/All/Choice nodes.
std::size_t count_leaf_clauses(const DPtr& d);

}  // namespace linweb

#endif
