#ifndef LINWEB_MODULES_HPP
#define LINWEB_MODULES_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "linweb/formula.hpp"

namespace linweb {

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// URL-keyed module source. Resolution order: registered mappings
// (longest-prefix match, latest registration wins), then directories from
// LINWEB_PATH, then HTTP GET with an assumed http:// prefix. A URL is
// fetched and parsed at most once per session.
class ModuleRegistry {
 public:
  ModuleRegistry();

  void register_mapping(std::string pattern, std::string locator);

  // Lines of url<TAB>path; '#' comments and blank lines skipped.
  void load_map_file(const std::string& path);

  // Parsed clauses in source order. Throws LoadError on resolution,
  // fetch, parse, or mod-declaration-mismatch failure.
  std::vector<DPtr> load_module(const std::string& url);

  // (Clause_n => ... (Clause_1 => g)): the engine pushes hypotheses
  // outermost-first, so clause 1 ends up scanned first, matching module
  // source order ahead of the prior context.
  GPtr elaborate_load(const std::string& url, const GPtr& g);

  std::uint64_t fetch_count(const std::string& url) const;
  void set_warning_handler(std::function<void(const std::string&)> handler);

  struct FetchLimits {
    int timeout_seconds = 10;
    std::size_t max_body_bytes = 1 << 20;
    int max_redirects = 5;
  };
  FetchLimits& fetch_limits() { return fetch_limits_; }

 private:
  struct Entry {
    std::mutex m;
    bool loaded = false;
    std::vector<DPtr> clauses;
  };

  std::string fetch(const std::string& url);  // raw program text
  std::string fetch_http(const std::string& target);

  mutable std::mutex mu_;
  std::vector<std::pair<std::string, std::string>> mappings_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> cache_;
  std::unordered_map<std::string, std::uint64_t> fetches_;
  std::function<void(const std::string&)> warn_;
  FetchLimits fetch_limits_;
  VarGen gen_;  // separate id range from query variables
};

}  // namespace linweb

#endif
