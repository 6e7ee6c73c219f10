#include "linweb/term.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace linweb {

TermPtr mk_var(std::string name, std::uint64_t id) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->name = std::move(name);
  t->id = id;
  return t;
}

TermPtr mk_const(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->name = std::move(name);
  return t;
}

TermPtr mk_int(long long value) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Int;
  t->value = value;
  return t;
}

TermPtr mk_compound(std::string functor, std::vector<TermPtr> args) {
  assert(!args.empty());
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Compound;
  t->name = std::move(functor);
  t->args = std::move(args);
  return t;
}

TermPtr mk_list(std::vector<TermPtr> items, TermPtr tail) {
  TermPtr acc = tail ? std::move(tail) : mk_const("nil");
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    acc = mk_compound("cons", {*it, acc});
  return acc;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: return a->id == b->id;
    case Term::Kind::Const: return a->name == b->name;
    case Term::Kind::Int: return a->value == b->value;
    case Term::Kind::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

bool is_ground(const TermPtr& t) {
  if (t->kind == Term::Kind::Var) return false;
  for (const auto& a : t->args)
    if (!is_ground(a)) return false;
  return true;
}

void collect_vars(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == Term::Kind::Var) {
    for (const auto& v : out)
      if (v->id == t->id) return;
    out.push_back(t);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

const TermPtr* Substitution::lookup(std::uint64_t var_id) const {
  auto it = bindings_.find(var_id);
  return it == bindings_.end() ? nullptr : &it->second;
}

TermPtr Substitution::walk(TermPtr t) const {
  while (t->kind == Term::Kind::Var) {
    const TermPtr* b = lookup(t->id);
    if (!b) break;
    t = *b;
  }
  return t;
}

TermPtr Substitution::apply_rec(const TermPtr& t, std::vector<std::uint64_t>& path) const {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Int:
      return t;
    case Term::Kind::Var: {
      const TermPtr* b = lookup(t->id);
      if (!b) return t;
      if (std::find(path.begin(), path.end(), t->id) != path.end()) return t;
      path.push_back(t->id);
      TermPtr r = apply_rec(*b, path);
      path.pop_back();
      return r;
    }
    case Term::Kind::Compound: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        TermPtr r = apply_rec(a, path);
        changed = changed || r.get() != a.get();
        args.push_back(std::move(r));
      }
      return changed ? mk_compound(t->name, std::move(args)) : t;
    }
  }
  return t;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  std::vector<std::uint64_t> path;
  return apply_rec(t, path);
}

bool occurs_in(std::uint64_t var_id, const TermPtr& t, const Substitution& s) {
  TermPtr w = s.walk(t);
  if (w->kind == Term::Kind::Var) return w->id == var_id;
  for (const auto& a : w->args)
    if (occurs_in(var_id, a, s)) return true;
  return false;
}

namespace {

bool unify1(const TermPtr& t1, const TermPtr& t2, Substitution& s, bool occurs_check) {
  TermPtr a = s.walk(t1);
  TermPtr b = s.walk(t2);
  if (a->kind == Term::Kind::Var && b->kind == Term::Kind::Var && a->id == b->id)
    return true;
  if (a->kind == Term::Kind::Var) {
    if (occurs_check && occurs_in(a->id, b, s)) return false;
    s.bind(a->id, b);
    return true;
  }
  if (b->kind == Term::Kind::Var) {
    if (occurs_check && occurs_in(b->id, a, s)) return false;
    s.bind(b->id, a);
    return true;
  }
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Const: return a->name == b->name;
    case Term::Kind::Int: return a->value == b->value;
    case Term::Kind::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!unify1(a->args[i], b->args[i], s, occurs_check)) return false;
      return true;
    default: return false;
  }
}

}  // namespace

std::optional<Substitution> unify(const TermPtr& t1, const TermPtr& t2,
                                  const Substitution& s, bool occurs_check) {
  Substitution out = s;
  if (!unify1(t1, t2, out, occurs_check)) return std::nullopt;
  return out;
}

}  // namespace linweb
