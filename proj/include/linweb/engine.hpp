#ifndef LINWEB_ENGINE_HPP
#define LINWEB_ENGINE_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linweb/formula.hpp"
#include "linweb/parser.hpp"
#include "linweb/term.hpp"

namespace linweb {

class ModuleRegistry;

class BuiltinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StatCounters {
  std::uint64_t inferences = 0;        // backchaining clause selections
  std::uint64_t choiceCommits = 0;     // disjuncts committed
  std::uint64_t choicePrunes = 0;      // siblings discarded unexplored
  std::uint64_t hypothesesPushed = 0;  // clause additions via => loads/assumes
};

struct Answer {
  // Query-variable name -> fully dereferenced term, in template order.
  std::vector<std::pair<std::string, TermPtr>> bindings;
};

struct TraceEvent {
  enum class Kind { Call, Exit, Fail, Commit, Prune, Push, Pop };
  Kind kind;
  int depth;
  std::string subject;
};

std::string format_event(const TraceEvent& ev);

struct TraceSink {
  virtual ~TraceSink() = default;
  virtual void on_event(const TraceEvent& ev) = 0;
};

struct SolveOptions {
  enum class Mode { First, All };
  Mode mode = Mode::First;
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t max_depth = 0;  // 0 = unbounded
  bool occurs_check = true;
  // Hard commit: a committed disjunct yields its first solution only.
  bool strict_commit = false;
  TraceSink* trace = nullptr;
  ModuleRegistry* registry = nullptr;
};

enum class Outcome {
  Exhausted,  // search space fully explored
  Stopped,    // caller stopped the stream (mode First)
  LimitHit    // step or depth limit exceeded; not a finite failure
};

struct SolveResult {
  std::vector<Answer> answers;
  Outcome outcome = Outcome::Exhausted;
  StatCounters stats;
  bool limit_hit() const { return outcome == Outcome::LimitHit; }
};

// One solver per query run. The program is shared and immutable; the
// hypothesis stack, substitution, and counters live here.
class Solver {
 public:
  Solver(std::vector<DPtr> program, VarGen& gen, SolveOptions opts = {});

  // Return false from the callback to stop after the current answer.
  using AnswerFn = std::function<bool(const Answer&)>;
  Outcome stream(const ParsedGoal& query, const AnswerFn& on_answer);

  SolveResult run(const ParsedGoal& query);

  const StatCounters& stats() const { return stats_; }
  std::size_t program_size() const { return statics_.size() + hypotheses_.size(); }

 private:
  using Cont = std::function<bool(const Substitution&)>;

  bool solve_goal(const GPtr& g, const Substitution& s, int depth, const Cont& k);
  bool solve_atom(const TermPtr& atom, const Substitution& s, int depth, const Cont& k);
  bool backchain(const DPtr& d, const TermPtr& atom, std::vector<GPtr>& bodies,
                 const Substitution& s, int depth, const Cont& k);
  bool solve_bodies(const std::vector<GPtr>& bodies, std::size_t i,
                    const Substitution& s, int depth, const Cont& k);
  bool call_builtin(const TermPtr& atom, const Substitution& s, int depth, const Cont& k);

  void step(int depth);
  void trace(TraceEvent::Kind kind, int depth, const std::string& subject);

  std::vector<DPtr> statics_;
  std::deque<DPtr> hypotheses_;  // most recent first
  VarGen& gen_;
  SolveOptions opts_;
  StatCounters stats_;
};

// Convenience wrapper: parse nothing, just run.
SolveResult solve(const std::vector<DPtr>& program, const ParsedGoal& query,
                  VarGen& gen, SolveOptions opts = {});

}  // namespace linweb

#endif
