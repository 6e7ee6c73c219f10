#include "linweb/pretty.hpp"

#include <sstream>

namespace linweb {

namespace {

void term_out(std::ostream& os, const TermPtr& t, VarNamer* namer) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (namer)
        os << namer->name_for(t->id);
      else
        os << t->name;
      return;
    case Term::Kind::Int:
      os << t->value;
      return;
    case Term::Kind::Const:
      if (is_nil(*t))
        os << "[]";
      else
        os << t->name;
      return;
    case Term::Kind::Compound:
      if (is_cons(*t)) {
        os << '[';
        term_out(os, t->args[0], namer);
        TermPtr rest = t->args[1];
        while (is_cons(*rest)) {
          os << ',';
          term_out(os, rest->args[0], namer);
          rest = rest->args[1];
        }
        if (!is_nil(*rest)) {
          os << '|';
          term_out(os, rest, namer);
        }
        os << ']';
        return;
      }
      os << t->name << '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ',';
        term_out(os, t->args[i], namer);
      }
      os << ')';
      return;
  }
}

std::string quote(const std::string& url) {
  std::string out = "\"";
  for (char c : url) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

const char* infix_symbol(const std::string& functor) {
  if (functor == "ge") return " >= ";
  if (functor == "gt") return " > ";
  if (functor == "le") return " =< ";
  if (functor == "lt") return " < ";
  if (functor == "=") return " = ";
  return nullptr;
}

void d_out(std::ostream& os, const DPtr& d);

void g_out(std::ostream& os, const GPtr& g) {
  switch (g->kind) {
    case GFormula::Kind::Atom: {
      const char* sym =
          g->builtin && g->atom->args.size() == 2 ? infix_symbol(g->atom->name) : nullptr;
      if (sym) {
        term_out(os, g->atom->args[0], nullptr);
        os << sym;
        term_out(os, g->atom->args[1], nullptr);
      } else {
        term_out(os, g->atom, nullptr);
      }
      return;
    }
    case GFormula::Kind::And:
      if (g->left->kind == GFormula::Kind::Atom) {
        g_out(os, g->left);
      } else {
        os << '(';
        g_out(os, g->left);
        os << ')';
      }
      os << ", ";
      g_out(os, g->body);
      return;
    case GFormula::Kind::Assume:
      os << '(';
      d_out(os, g->clause);
      os << ") => ";
      g_out(os, g->body);
      return;
    case GFormula::Kind::Load:
      os << quote(g->url) << " => ";
      g_out(os, g->body);
      return;
    case GFormula::Kind::Exists:
      g_out(os, g->body);  // implicit in concrete syntax
      return;
  }
}

void d_group_out(std::ostream& os, const DPtr& d) {
  if (d->kind == DFormula::Kind::Imp || d->kind == DFormula::Kind::Choice) {
    os << '(';
    d_out(os, d);
    os << ')';
  } else {
    d_out(os, d);
  }
}

void d_out(std::ostream& os, const DPtr& d) {
  switch (d->kind) {
    case DFormula::Kind::Atom:
      term_out(os, d->atom, nullptr);
      return;
    case DFormula::Kind::Imp:
      if (d->inner->kind == DFormula::Kind::Atom) {
        d_out(os, d->inner);
      } else {
        os << '(';
        d_out(os, d->inner);
        os << ')';
      }
      os << " :- ";
      g_out(os, d->body);
      return;
    case DFormula::Kind::All:
      d_out(os, d->inner);  // implicit quantification
      return;
    case DFormula::Kind::Choice: {
      d_group_out(os, d->left);
      os << " & ";
      if (d->right->kind == DFormula::Kind::Choice)
        d_out(os, d->right);  // right-associated
      else
        d_group_out(os, d->right);
      return;
    }
  }
}

}  // namespace

std::string pretty(const TermPtr& t) {
  std::ostringstream os;
  term_out(os, t, nullptr);
  return os.str();
}

std::string pretty(const GPtr& g) {
  std::ostringstream os;
  g_out(os, g);
  return os.str();
}

std::string pretty(const DPtr& d) {
  std::ostringstream os;
  d_out(os, d);
  return os.str();
}

std::string pretty_module(const SourceModule& m) {
  std::ostringstream os;
  if (m.url) os << "mod(" << quote(*m.url) << ").\n";
  for (const auto& c : m.clauses) {
    d_out(os, c);
    os << ".\n";
  }
  return os.str();
}

const std::string& VarNamer::name_for(std::uint64_t id) {
  auto it = names.find(id);
  if (it == names.end())
    it = names.emplace(id, "_G" + std::to_string(next++)).first;
  return it->second;
}

std::string pretty_renamed(const TermPtr& t, VarNamer& namer) {
  std::ostringstream os;
  term_out(os, t, &namer);
  return os.str();
}

}  // namespace linweb
