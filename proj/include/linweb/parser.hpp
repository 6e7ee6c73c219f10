#ifndef LINWEB_PARSER_HPP
#define LINWEB_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "linweb/formula.hpp"
#include "linweb/term.hpp"

namespace linweb {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::string message, std::vector<std::string> expected);
  int line() const { return line_; }
  int col() const { return col_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_, col_;
  std::vector<std::string> expected_;
};

// Parses a .lw program: an optional mod("url"). declaration followed by
// period-terminated clause units. Uppercase-initial (and `_`-initial)
// identifiers are variables, implicitly universally quantified per unit.
SourceModule parse_program(const std::string& text, VarGen& gen);

struct ParsedGoal {
  GPtr goal;  // free variables wrapped in Exists, first occurrence outermost
  // Answer template: (source name, variable) in first-occurrence order.
  std::vector<std::pair<std::string, TermPtr>> template_vars;
};

ParsedGoal parse_goal(const std::string& text, VarGen& gen);

}  // namespace linweb

#endif
