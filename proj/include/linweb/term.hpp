#ifndef LINWEB_TERM_HPP
#define LINWEB_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace linweb {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// First-order terms. Lists are plain terms: the constant `nil` and the
// binary functor `cons`; the parser and printer handle the bracket sugar.
struct Term {
  enum class Kind { Var, Const, Int, Compound };

  Kind kind;
  std::string name;       // Var: source name; Const: symbol; Compound: functor
  long long value = 0;    // Int
  std::uint64_t id = 0;   // Var: unique per engine run
  std::vector<TermPtr> args;  // Compound, arity >= 1
};

TermPtr mk_var(std::string name, std::uint64_t id);
TermPtr mk_const(std::string name);
TermPtr mk_int(long long value);
TermPtr mk_compound(std::string functor, std::vector<TermPtr> args);

// [a,b|T]; a null tail means nil.
TermPtr mk_list(std::vector<TermPtr> items, TermPtr tail = nullptr);

inline bool is_nil(const Term& t) {
  return t.kind == Term::Kind::Const && t.name == "nil";
}
inline bool is_cons(const Term& t) {
  return t.kind == Term::Kind::Compound && t.name == "cons" && t.args.size() == 2;
}

// Structural equality; variables compare by id.
bool term_equal(const TermPtr& a, const TermPtr& b);

bool is_ground(const TermPtr& t);

// Collects variables in first-occurrence order (no duplicates).
void collect_vars(const TermPtr& t, std::vector<TermPtr>& out);

// Monotone fresh-variable source. One per solver session; ids are never reused.
struct VarGen {
  std::uint64_t next = 1;
  TermPtr fresh(const std::string& base = "_G") {
    std::uint64_t id = next++;
    return mk_var(base + std::to_string(id), id);
  }
};

// Idempotent variable binding map. Bindings are stored in triangular form;
// apply() dereferences fully, so applying twice equals applying once.
class Substitution {
 public:
  Substitution() = default;

  bool contains(std::uint64_t var_id) const { return bindings_.count(var_id) != 0; }
  const TermPtr* lookup(std::uint64_t var_id) const;
  void bind(std::uint64_t var_id, TermPtr t) { bindings_[var_id] = std::move(t); }
  std::size_t size() const { return bindings_.size(); }

  // Resolves a top-level variable chain; does not descend into arguments.
  TermPtr walk(TermPtr t) const;

  // Full recursive application. Unbound variables pass through; a cyclic
  // binding (occurs-check off) leaves the looping variable in place rather
  // than diverging.
  TermPtr apply(const TermPtr& t) const;

 private:
  TermPtr apply_rec(const TermPtr& t, std::vector<std::uint64_t>& path) const;
  std::map<std::uint64_t, TermPtr> bindings_;
};

// Most general unifier extending s. Returns nullopt on clash or (when
// occurs_check) on a cyclic binding; s itself is never modified.
std::optional<Substitution> unify(const TermPtr& t1, const TermPtr& t2,
                                  const Substitution& s, bool occurs_check = true);

// True iff var_id occurs in t under s.
bool occurs_in(std::uint64_t var_id, const TermPtr& t, const Substitution& s);

}  // namespace linweb

#endif
