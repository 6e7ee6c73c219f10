#include "linweb/formula.hpp"

#include <utility>

namespace linweb {

bool is_builtin_functor(const std::string& name, std::size_t arity) {
  if (arity != 2) return false;
  return name == "ge" || name == "gt" || name == "le" || name == "lt" ||
         name == "neq" || name == "=";
}

GPtr g_atom(TermPtr atom) {
  auto g = std::make_shared<GFormula>();
  g->kind = GFormula::Kind::Atom;
  g->builtin = is_builtin_functor(atom->name, atom->args.size());
  g->atom = std::move(atom);
  return g;
}

GPtr g_and(GPtr left, GPtr right) {
  auto g = std::make_shared<GFormula>();
  g->kind = GFormula::Kind::And;
  g->left = std::move(left);
  g->body = std::move(right);
  return g;
}

GPtr g_assume(DPtr clause, GPtr body) {
  auto g = std::make_shared<GFormula>();
  g->kind = GFormula::Kind::Assume;
  g->clause = std::move(clause);
  g->body = std::move(body);
  return g;
}

GPtr g_load(std::string url, GPtr body) {
  auto g = std::make_shared<GFormula>();
  g->kind = GFormula::Kind::Load;
  g->url = std::move(url);
  g->body = std::move(body);
  return g;
}

GPtr g_exists(TermPtr var, GPtr body) {
  auto g = std::make_shared<GFormula>();
  g->kind = GFormula::Kind::Exists;
  g->var = std::move(var);
  g->body = std::move(body);
  return g;
}

DPtr d_atom(TermPtr atom) {
  auto d = std::make_shared<DFormula>();
  d->kind = DFormula::Kind::Atom;
  d->atom = std::move(atom);
  return d;
}

DPtr d_imp(GPtr body, DPtr head) {
  auto d = std::make_shared<DFormula>();
  d->kind = DFormula::Kind::Imp;
  d->body = std::move(body);
  d->inner = std::move(head);
  return d;
}

DPtr d_all(TermPtr var, DPtr inner) {
  auto d = std::make_shared<DFormula>();
  d->kind = DFormula::Kind::All;
  d->var = std::move(var);
  d->inner = std::move(inner);
  return d;
}

DPtr d_choice(DPtr left, DPtr right) {
  auto d = std::make_shared<DFormula>();
  d->kind = DFormula::Kind::Choice;
  d->left = std::move(left);
  d->right = std::move(right);
  return d;
}

namespace {

TermPtr subst_term(const TermPtr& t, const std::map<std::uint64_t, TermPtr>& m) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = m.find(t->id);
      return it == m.end() ? t : it->second;
    }
    case Term::Kind::Compound: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr r = subst_term(a, m);
        changed = changed || r.get() != a.get();
        args.push_back(std::move(r));
      }
      return changed ? mk_compound(t->name, std::move(args)) : t;
    }
    default:
      return t;
  }
}

}  // namespace

GPtr substitute(const GPtr& g, const std::map<std::uint64_t, TermPtr>& m) {
  if (m.empty()) return g;
  switch (g->kind) {
    case GFormula::Kind::Atom:
      return g_atom(subst_term(g->atom, m));
    case GFormula::Kind::And:
      return g_and(substitute(g->left, m), substitute(g->body, m));
    case GFormula::Kind::Assume:
      return g_assume(substitute(g->clause, m), substitute(g->body, m));
    case GFormula::Kind::Load:
      return g_load(g->url, substitute(g->body, m));
    case GFormula::Kind::Exists: {
      // Bound variable shadows any outer binding of the same id.
      auto inner = m;
      inner.erase(g->var->id);
      return g_exists(g->var, substitute(g->body, inner));
    }
  }
  return g;
}

DPtr substitute(const DPtr& d, const std::map<std::uint64_t, TermPtr>& m) {
  if (m.empty()) return d;
  switch (d->kind) {
    case DFormula::Kind::Atom:
      return d_atom(subst_term(d->atom, m));
    case DFormula::Kind::Imp:
      return d_imp(substitute(d->body, m), substitute(d->inner, m));
    case DFormula::Kind::All: {
      auto inner = m;
      inner.erase(d->var->id);
      return d_all(d->var, substitute(d->inner, inner));
    }
    case DFormula::Kind::Choice:
      return d_choice(substitute(d->left, m), substitute(d->right, m));
  }
  return d;
}

namespace {

DPtr rename_rec(const DPtr& d, VarGen& gen, std::map<std::uint64_t, TermPtr>& m) {
  switch (d->kind) {
    case DFormula::Kind::All: {
      m[d->var->id] = gen.fresh();
      return rename_rec(d->inner, gen, m);
    }
    case DFormula::Kind::Imp: {
      GPtr body = substitute(d->body, m);
      DPtr head = rename_rec(d->inner, gen, m);
      return d_imp(std::move(body), std::move(head));
    }
    case DFormula::Kind::Choice: {
      DPtr l = rename_rec(d->left, gen, m);
      DPtr r = rename_rec(d->right, gen, m);
      return d_choice(std::move(l), std::move(r));
    }
    case DFormula::Kind::Atom:
      return d_atom(subst_term(d->atom, m));
  }
  return d;
}

}  // namespace

DPtr rename_fresh(const DPtr& d, VarGen& gen) {
  std::map<std::uint64_t, TermPtr> m;
  return rename_rec(d, gen, m);
}

namespace {

// Two-way variable correspondence for equality up to renaming.
struct VarBijection {
  std::map<std::uint64_t, std::uint64_t> fwd, bwd;
  bool match(std::uint64_t a, std::uint64_t b) {
    auto f = fwd.find(a);
    auto g = bwd.find(b);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a] = b;
      bwd[b] = a;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b && g->second == a;
  }
};

bool term_eq(const TermPtr& a, const TermPtr& b, VarBijection* vb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var:
      return vb ? vb->match(a->id, b->id) : a->id == b->id;
    case Term::Kind::Const: return a->name == b->name;
    case Term::Kind::Int: return a->value == b->value;
    case Term::Kind::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_eq(a->args[i], b->args[i], vb)) return false;
      return true;
  }
  return false;
}

bool d_eq(const DPtr& a, const DPtr& b, VarBijection* vb);

bool g_eq(const GPtr& a, const GPtr& b, VarBijection* vb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case GFormula::Kind::Atom:
      return a->builtin == b->builtin && term_eq(a->atom, b->atom, vb);
    case GFormula::Kind::And:
      return g_eq(a->left, b->left, vb) && g_eq(a->body, b->body, vb);
    case GFormula::Kind::Assume:
      return d_eq(a->clause, b->clause, vb) && g_eq(a->body, b->body, vb);
    case GFormula::Kind::Load:
      return a->url == b->url && g_eq(a->body, b->body, vb);
    case GFormula::Kind::Exists:
      return term_eq(a->var, b->var, vb) && g_eq(a->body, b->body, vb);
  }
  return false;
}

bool d_eq(const DPtr& a, const DPtr& b, VarBijection* vb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case DFormula::Kind::Atom:
      return term_eq(a->atom, b->atom, vb);
    case DFormula::Kind::Imp:
      return g_eq(a->body, b->body, vb) && d_eq(a->inner, b->inner, vb);
    case DFormula::Kind::All:
      return term_eq(a->var, b->var, vb) && d_eq(a->inner, b->inner, vb);
    case DFormula::Kind::Choice:
      return d_eq(a->left, b->left, vb) && d_eq(a->right, b->right, vb);
  }
  return false;
}

}  // namespace

bool formula_equal(const DPtr& a, const DPtr& b) { return d_eq(a, b, nullptr); }
bool formula_equal(const GPtr& a, const GPtr& b) { return g_eq(a, b, nullptr); }

bool equal_mod_renaming(const DPtr& a, const DPtr& b) {
  VarBijection vb;
  return d_eq(a, b, &vb);
}

bool equal_mod_renaming(const GPtr& a, const GPtr& b) {
  VarBijection vb;
  return g_eq(a, b, &vb);
}

std::size_t count_leaf_clauses(const DPtr& d) {
  switch (d->kind) {
    case DFormula::Kind::Atom: return 1;
    case DFormula::Kind::Imp: return count_leaf_clauses(d->inner);
    case DFormula::Kind::All: return count_leaf_clauses(d->inner);
    case DFormula::Kind::Choice:
      return count_leaf_clauses(d->left) + count_leaf_clauses(d->right);
  }
  return 0;
}

}  // namespace linweb
