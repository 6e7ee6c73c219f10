#include "linweb/parser.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace linweb {

ParseError::ParseError(int line, int col, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + message),
      line_(line),
      col_(col),
      expected_(std::move(expected)) {}

namespace {

struct Token {
  enum class Kind { Atom, Var, Int, Str, Punct, End };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

[[noreturn]] void fail(const Token& at, const std::string& msg,
                       std::vector<std::string> expected = {}) {
  throw ParseError(at.line, at.col, msg, std::move(expected));
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.text = text.substr(i, j - i);
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                   ? Token::Kind::Var
                   : Token::Kind::Atom;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = text.substr(i, j - i);
      try {
        t.value = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        fail(t, "integer literal out of range");
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      std::string s;
      std::size_t j = i + 1;
      while (true) {
        if (j >= text.size() || text[j] == '\n') fail(t, "unterminated string literal");
        char d = text[j];
        if (d == '"') break;
        if (d == '\\') {
          if (j + 1 >= text.size()) fail(t, "unterminated string literal");
          char e = text[j + 1];
          if (e != '"' && e != '\\') fail(t, "unsupported escape in string literal");
          s.push_back(e);
          j += 2;
          continue;
        }
        s.push_back(d);
        ++j;
      }
      t.kind = Token::Kind::Str;
      t.text = std::move(s);
      advance(j + 1 - i);
      out.push_back(std::move(t));
      continue;
    }
    auto punct = [&](const std::string& p) {
      if (text.compare(i, p.size(), p) != 0) return false;
      t.kind = Token::Kind::Punct;
      t.text = p;
      advance(p.size());
      out.push_back(t);
      return true;
    };
    if (punct(":-") || punct("=>") || punct(">=") || punct("=<") || punct("(") ||
        punct(")") || punct("[") || punct("]") || punct(",") || punct("|") ||
        punct(".") || punct("&") || punct("<") || punct(">") || punct("="))
      continue;
    fail(t, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Token::Kind::End;
  end.text = "<end of input>";
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, VarGen& gen)
      : tokens_(std::move(tokens)), gen_(gen) {}

  SourceModule program() {
    SourceModule m;
    bool saw_clause = false;
    while (!at_end()) {
      if (is_mod_decl()) {
        if (m.url) fail(peek(), "duplicate mod declaration");
        if (saw_clause) fail(peek(), "mod declaration must precede all clauses");
        next();  // mod
        expect("(");
        const Token& s = peek();
        if (s.kind != Token::Kind::Str) fail(s, "expected quoted url", {"string"});
        std::string url = s.text;
        next();
        expect(")");
        expect(".");
        if (url.empty()) fail(s, "empty url in mod declaration");
        m.url = std::move(url);
        continue;
      }
      m.clauses.push_back(unit());
      saw_clause = true;
    }
    return m;
  }

  ParsedGoal goal() {
    begin_unit();
    if (at_end()) fail(peek(), "empty goal");
    GPtr g = goal_expr();
    if (is_punct(".")) next();
    if (!at_end()) fail(peek(), "unexpected input after goal", {"."});
    ParsedGoal pg;
    // First occurrence outermost; anonymous variables stay off the template.
    for (auto it = unit_vars_.rbegin(); it != unit_vars_.rend(); ++it)
      g = g_exists(it->second, g);
    pg.goal = std::move(g);
    for (const auto& [name, var] : unit_vars_)
      if (name[0] != '_') pg.template_vars.emplace_back(name, var);
    return pg;
  }

 private:
  const Token& peek(std::size_t off = 0) const {
    std::size_t k = pos_ + off;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() { return tokens_[pos_++]; }
  bool is_punct(const std::string& p, std::size_t off = 0) const {
    const Token& t = peek(off);
    return t.kind == Token::Kind::Punct && t.text == p;
  }
  void expect(const std::string& p) {
    if (!is_punct(p)) fail(peek(), "expected '" + p + "'", {p});
    next();
  }
  bool is_mod_decl() const {
    return peek().kind == Token::Kind::Atom && peek().text == "mod" &&
           is_punct("(", 1) && peek(2).kind == Token::Kind::Str;
  }

  void begin_unit() {
    unit_vars_.clear();
    named_.clear();
  }

  TermPtr var_for(const Token& t) {
    if (t.text == "_") {
      TermPtr v = gen_.fresh("_");
      unit_vars_.emplace_back("_", v);
      return v;
    }
    auto it = named_.find(t.text);
    if (it != named_.end()) return it->second;
    TermPtr v = mk_var(t.text, gen_.next++);
    named_.emplace(t.text, v);
    unit_vars_.emplace_back(t.text, v);
    return v;
  }

  DPtr unit() {
    begin_unit();
    DPtr d = dformula();
    expect(".");
    for (auto it = unit_vars_.rbegin(); it != unit_vars_.rend(); ++it)
      d = d_all(it->second, d);
    return d;
  }

  DPtr dformula() {
    DPtr d = dgroup();
    if (is_punct("&")) {
      next();
      return d_choice(std::move(d), dformula());
    }
    return d;
  }

  DPtr dgroup() {
    DPtr d = dprimary();
    if (is_punct(":-")) {
      next();
      return d_imp(goal_expr(), std::move(d));
    }
    return d;
  }

  DPtr dprimary() {
    if (is_punct("(")) {
      next();
      DPtr d = dformula();
      expect(")");
      return d;
    }
    const Token& at = peek();
    TermPtr t = term();
    if (t->kind != Term::Kind::Const && t->kind != Term::Kind::Compound)
      fail(at, "clause head must be an atom");
    if (is_builtin_functor(t->name, t->args.size()))
      fail(at, "builtin predicate cannot be a clause head");
    return d_atom(std::move(t));
  }

  GPtr goal_expr() {
    GPtr g = gprimary();
    if (is_punct(",")) {
      next();
      return g_and(std::move(g), goal_expr());
    }
    return g;
  }

  GPtr gprimary() {
    if (peek().kind == Token::Kind::Str) {
      const Token& s = next();
      if (s.text.empty()) fail(s, "empty url");
      expect("=>");
      return g_load(s.text, goal_expr());
    }
    if (is_punct("(")) {
      // Either a hypothetical implication (Clause) => G or a grouped goal.
      std::size_t save = pos_;
      auto save_vars = unit_vars_;
      auto save_named = named_;
      try {
        next();
        DPtr d = dformula();
        expect(")");
        expect("=>");
        return g_assume(std::move(d), goal_expr());
      } catch (const ParseError&) {
        pos_ = save;
        unit_vars_ = std::move(save_vars);
        named_ = std::move(save_named);
      }
      next();
      GPtr g = goal_expr();
      expect(")");
      return g;
    }
    const Token& at = peek();
    TermPtr t = term();
    static const struct { const char* sym; const char* functor; } cmp[] = {
        {">=", "ge"}, {">", "gt"}, {"=<", "le"}, {"<", "lt"}, {"=", "="}};
    for (const auto& c : cmp) {
      if (is_punct(c.sym)) {
        next();
        TermPtr rhs = term();
        return g_atom(mk_compound(c.functor, {std::move(t), std::move(rhs)}));
      }
    }
    if (t->kind != Term::Kind::Const && t->kind != Term::Kind::Compound)
      fail(at, "goal must be an atom");
    return g_atom(std::move(t));
  }

  TermPtr term() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Var:
        next();
        return var_for(t);
      case Token::Kind::Int:
        next();
        return mk_int(t.value);
      case Token::Kind::Atom: {
        next();
        if (is_punct("(")) {
          next();
          std::vector<TermPtr> args;
          args.push_back(term());
          while (is_punct(",")) {
            next();
            args.push_back(term());
          }
          expect(")");
          return mk_compound(t.text, std::move(args));
        }
        return mk_const(t.text);
      }
      case Token::Kind::Str:
        fail(t, "string literal not allowed in term position");
      case Token::Kind::Punct:
        if (t.text == "[") {
          next();
          if (is_punct("]")) {
            next();
            return mk_const("nil");
          }
          std::vector<TermPtr> items;
          items.push_back(term());
          while (is_punct(",")) {
            next();
            items.push_back(term());
          }
          TermPtr tail;
          if (is_punct("|")) {
            next();
            tail = term();
          }
          expect("]");
          return mk_list(std::move(items), std::move(tail));
        }
        fail(t, "expected term", {"term"});
      case Token::Kind::End:
        fail(t, "expected term", {"term"});
    }
    fail(t, "expected term", {"term"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  VarGen& gen_;
  std::vector<std::pair<std::string, TermPtr>> unit_vars_;
  std::map<std::string, TermPtr> named_;
};

}  // namespace

SourceModule parse_program(const std::string& text, VarGen& gen) {
  Parser p(tokenize(text), gen);
  return p.program();
}

ParsedGoal parse_goal(const std::string& text, VarGen& gen) {
  Parser p(tokenize(text), gen);
  return p.goal();
}

}  // namespace linweb
