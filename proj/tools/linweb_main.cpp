// linweb: committed-choice Horn clause interpreter with URL modules.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linweb/engine.hpp"
#include "linweb/modules.hpp"
#include "linweb/oracle.hpp"
#include "linweb/parser.hpp"
#include "linweb/pretty.hpp"

namespace {

using namespace linweb;

struct StderrTrace : TraceSink {
  void on_event(const TraceEvent& ev) override {
    std::cerr << format_event(ev) << "\n";
  }
};

std::string format_answer(const Answer& a) {
  if (a.bindings.empty()) return "true";
  VarNamer namer;
  std::ostringstream os;
  for (std::size_t i = 0; i < a.bindings.size(); ++i) {
    if (i) os << ", ";
    os << a.bindings[i].first << " = " << pretty_renamed(a.bindings[i].second, namer);
  }
  return os.str();
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void print_stats(const StatCounters& st) {
  std::cout << "inferences: " << st.inferences
            << "  choiceCommits: " << st.choiceCommits
            << "  choicePrunes: " << st.choicePrunes
            << "  hypothesesPushed: " << st.hypothesesPushed << "\n";
}

struct Session {
  std::vector<DPtr> program;
  VarGen gen;
  ModuleRegistry registry;
  SolveOptions opts;
  StderrTrace trace_sink;
  bool show_stats = false;
  bool use_oracle = false;

  void consult(const std::string& path) {
    SourceModule m = parse_program(read_file_or_die(path), gen);
    program.insert(program.end(), m.clauses.begin(), m.clauses.end());
  }
};

int run_batch(Session& s, const std::string& query_text) {
  ParsedGoal query = parse_goal(query_text, s.gen);

  if (s.use_oracle) {
    DiffReport report = differential_check(s.program, query, s.gen, s.opts.max_steps,
                                           &s.registry);
    std::cout << format_report(report);
    if (!report.subsetHolds) return 3;
    if (!report.conclusive) return 2;
    return report.engineAnswers.empty() ? 1 : 0;
  }

  Solver solver(s.program, s.gen, s.opts);
  std::size_t count = 0;
  Outcome outcome = solver.stream(query, [&](const Answer& a) {
    std::cout << format_answer(a) << "\n";
    ++count;
    return s.opts.mode == SolveOptions::Mode::All;
  });
  if (s.show_stats) print_stats(solver.stats());
  switch (outcome) {
    case Outcome::Stopped:
      return 0;
    case Outcome::Exhausted:
      if (count == 0) {
        std::cout << "false\n";
        return 1;
      }
      std::cout << "no more answers\n";
      return 0;
    case Outcome::LimitHit:
      std::cerr << "error: step or depth limit exceeded\n";
      return 2;
  }
  return 2;
}

void repl(Session& s) {
  std::string line;
  StatCounters last_stats;
  std::cout << "linweb: type queries ending with '.', ';' for more answers, :quit to exit\n";
  while (true) {
    std::cout << "?- " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::string text = line;
    // Directives
    if (!text.empty() && text[0] == ':') {
      std::istringstream is(text);
      std::string cmd, arg;
      is >> cmd >> arg;
      if (cmd == ":quit") break;
      if (cmd == ":load") {
        try {
          SourceModule m = parse_program(read_file_or_die(arg), s.gen);
          s.program.insert(s.program.end(), m.clauses.begin(), m.clauses.end());
          std::cout << "loaded " << m.clauses.size() << " clause(s)\n";
        } catch (const std::exception& e) {
          std::cerr << "error: " << e.what() << "\n";
        }
        continue;
      }
      if (cmd == ":trace") {
        s.opts.trace = (arg == "on") ? &s.trace_sink : nullptr;
        continue;
      }
      if (cmd == ":stats") {
        print_stats(last_stats);
        continue;
      }
      std::cerr << "unknown directive: " << cmd << "\n";
      continue;
    }
    if (text.rfind("?-", 0) == 0) text = text.substr(2);
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      ParsedGoal query = parse_goal(text, s.gen);
      Solver solver(s.program, s.gen, s.opts);
      std::size_t count = 0;
      Outcome outcome = solver.stream(query, [&](const Answer& a) {
        std::cout << format_answer(a) << std::flush;
        ++count;
        std::cout << " ";
        std::string more;
        if (!std::getline(std::cin, more)) return false;
        return more == ";";
      });
      last_stats = solver.stats();
      if (outcome == Outcome::LimitHit)
        std::cerr << "error: step or depth limit exceeded\n";
      else if (count == 0)
        std::cout << "false\n";
      else if (outcome == Outcome::Exhausted)
        std::cout << "no more answers\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linweb - Horn clauses with committed-choice conjunction and URL modules"};

  std::vector<std::string> files;
  std::string query_text;
  std::vector<std::string> maps;
  std::string map_file;
  bool all = false, first = false, trace = false, stats = false, oracle = false;
  bool no_occurs = false, strict_commit = false;
  std::uint64_t max_steps = 1'000'000;

  app.add_option("-c,--consult", files, "Program file to load (repeatable)");
  app.add_option("-q,--query", query_text, "Goal to run in batch mode");
  app.add_flag("--all", all, "Enumerate all answers");
  app.add_flag("--first", first, "Stop after the first answer (default)");
  app.add_flag("--trace", trace, "Print trace events to stderr");
  app.add_flag("--stats", stats, "Print counters after the query");
  app.add_flag("--oracle", oracle, "Run the nondeterministic oracle and print the differential report");
  app.add_flag("--no-occurs-check", no_occurs, "Disable the occurs check (unsound mode)");
  app.add_flag("--strict-commit", strict_commit, "Hard commit: one solution per committed disjunct");
  app.add_option("--map", maps, "Module mapping url=path (repeatable)");
  app.add_option("--map-file", map_file, "File of url<TAB>path mappings");
  app.add_option("--max-steps", max_steps, "Inference step limit");

  CLI11_PARSE(app, argc, argv);

  Session s;
  s.opts.mode = all ? SolveOptions::Mode::All : SolveOptions::Mode::First;
  s.opts.max_steps = max_steps;
  s.opts.occurs_check = !no_occurs;
  s.opts.strict_commit = strict_commit;
  s.opts.registry = &s.registry;
  s.show_stats = stats;
  s.use_oracle = oracle;
  if (trace) s.opts.trace = &s.trace_sink;

  try {
    for (const std::string& m : maps) {
      auto eq = m.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --map expects url=path, got " << m << "\n";
        return 2;
      }
      s.registry.register_mapping(m.substr(0, eq), m.substr(eq + 1));
    }
    if (!map_file.empty()) s.registry.load_map_file(map_file);
    for (const std::string& f : files) s.consult(f);

    if (!query_text.empty()) return run_batch(s, query_text);
    repl(s);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
