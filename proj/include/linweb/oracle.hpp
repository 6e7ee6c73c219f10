#ifndef LINWEB_ORACLE_HPP
#define LINWEB_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "linweb/engine.hpp"
#include "linweb/formula.hpp"
#include "linweb/parser.hpp"

namespace linweb {

class ModuleRegistry;

// Naive nondeterministic reference solver: choice clauses are ordinary
// backtracking alternatives, both disjuncts always reachable. Used as the
// completeness reference in differential tests; shares the parser and
// term layer with the engine but none of its backchaining code.
struct OracleOptions {
  std::uint64_t max_steps = 1'000'000;
  bool occurs_check = true;
  ModuleRegistry* registry = nullptr;
};

struct OracleResult {
  std::vector<Answer> answers;
  bool limit_hit = false;
};

OracleResult solve_nondet(const std::vector<DPtr>& program, const ParsedGoal& query,
                          VarGen& gen, OracleOptions opts = {});

struct DiffReport {
  std::vector<Answer> engineAnswers;
  std::vector<Answer> oracleAnswers;
  bool subsetHolds = false;        // engine answers ⊆ oracle answers
  bool firstAnswerMatched = false; // engine's first answer appears among oracle's
  bool conclusive = false;         // neither side hit a limit
};

DiffReport differential_check(const std::vector<DPtr>& program, const ParsedGoal& query,
                              VarGen& gen, std::uint64_t max_steps = 1'000'000,
                              ModuleRegistry* registry = nullptr);

// Canonical form for ground-normalized answer comparison: residual
// variables renamed _G1.. in order of appearance across the whole answer.
std::string answer_key(const Answer& a);

std::string format_report(const DiffReport& r);

}  // namespace linweb

#endif
