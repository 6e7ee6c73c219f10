#include "linweb/modules.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "httplib.h"
#include "linweb/parser.hpp"

namespace linweb {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

}  // namespace

ModuleRegistry::ModuleRegistry() {
  gen_.next = 1ull << 40;  // keep module clause variable ids out of the query range
  warn_ = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
}

void ModuleRegistry::register_mapping(std::string pattern, std::string locator) {
  std::lock_guard<std::mutex> lk(mu_);
  mappings_.emplace_back(std::move(pattern), std::move(locator));
}

void ModuleRegistry::load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open map file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw LoadError("malformed map file line " + std::to_string(lineno) + " in " + path);
    register_mapping(line.substr(0, tab), line.substr(tab + 1));
  }
}

void ModuleRegistry::set_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard<std::mutex> lk(mu_);
  warn_ = std::move(handler);
}

std::uint64_t ModuleRegistry::fetch_count(const std::string& url) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = fetches_.find(url);
  return it == fetches_.end() ? 0 : it->second;
}

std::string ModuleRegistry::fetch_http(const std::string& target) {
  std::string current = target;
  for (int hop = 0; hop <= fetch_limits_.max_redirects; ++hop) {
    std::string rest;
    if (starts_with(current, "http://")) {
      rest = current.substr(7);
    } else if (starts_with(current, "https://")) {
      throw LoadError("https fetch not supported: " + current);
    } else {
      throw LoadError("unsupported url scheme: " + current);
    }
    auto slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : rest.substr(slash);
    std::string host = hostport;
    int port = 80;
    auto colon = hostport.rfind(':');
    if (colon != std::string::npos) {
      host = hostport.substr(0, colon);
      port = std::atoi(hostport.c_str() + colon + 1);
    }
    httplib::Client cli(host, port);
    cli.set_connection_timeout(fetch_limits_.timeout_seconds, 0);
    cli.set_read_timeout(fetch_limits_.timeout_seconds, 0);
    cli.set_follow_location(false);

    std::string body;
    std::size_t cap = fetch_limits_.max_body_bytes;
    httplib::Headers headers{{"Accept", "text/plain"}};
    auto res = cli.Get(path, headers, [&](const char* data, size_t len) {
      if (body.size() + len > cap) return false;
      body.append(data, len);
      return true;
    });
    if (!res) throw LoadError("fetch failed: " + current);
    if (res->status >= 300 && res->status < 400) {
      auto loc = res->get_header_value("Location");
      if (loc.empty()) throw LoadError("redirect without location: " + current);
      current = starts_with(loc, "http") ? loc : "http://" + host + loc;
      continue;
    }
    if (res->status >= 400)
      throw LoadError("http status " + std::to_string(res->status) + ": " + current);
    return body;
  }
  throw LoadError("too many redirects: " + target);
}

std::string ModuleRegistry::fetch(const std::string& url) {
  std::string locator;
  bool mapped = false;
  const char* search_path = nullptr;
  {
    std::lock_guard<std::mutex> lk(mu_);
    // Longest-prefix match; among equal lengths the latest registration wins.
    std::size_t best = 0;
    for (const auto& [pattern, loc] : mappings_) {
      if (pattern.size() >= best && starts_with(url, pattern)) {
        best = pattern.size();
        locator = loc + url.substr(pattern.size());
        mapped = true;
      }
    }
    ++fetches_[url];
  }
  if (mapped) {
    if (starts_with(locator, "http://") || starts_with(locator, "https://"))
      return fetch_http(locator);
    return read_file(locator);
  }
  search_path = std::getenv("LINWEB_PATH");
  if (search_path) {
    std::stringstream ss(search_path);
    std::string dir;
    while (std::getline(ss, dir, ':')) {
      if (dir.empty()) continue;
      std::string candidate = dir + "/" + url;
      if (file_exists(candidate)) return read_file(candidate);
    }
  }
  return fetch_http("http://" + url);
}

std::vector<DPtr> ModuleRegistry::load_module(const std::string& url) {
  if (url.empty()) throw LoadError("empty url");
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto& slot = cache_[url];
    if (!slot) slot = std::make_shared<Entry>();
    entry = slot;
  }
  std::lock_guard<std::mutex> elk(entry->m);
  if (entry->loaded) return entry->clauses;

  std::string text = fetch(url);
  SourceModule m;
  try {
    std::lock_guard<std::mutex> lk(mu_);  // gen_ is shared across entries
    m = parse_program(text, gen_);
  } catch (const ParseError& e) {
    throw LoadError("parse error in module " + url + ": " + e.what());
  }
  if (m.url && *m.url != url)
    throw LoadError("module declares mod(\"" + *m.url + "\") but was requested as " + url);
  if (!m.url) {
    std::function<void(const std::string&)> warn;
    {
      std::lock_guard<std::mutex> lk(mu_);
      warn = warn_;
    }
    if (warn) warn("module " + url + " has no mod declaration");
  }
  entry->clauses = std::move(m.clauses);
  entry->loaded = true;
  return entry->clauses;
}

GPtr ModuleRegistry::elaborate_load(const std::string& url, const GPtr& g) {
  GPtr result = g;
  for (const auto& clause : load_module(url))
    result = g_assume(clause, result);
  return result;
}

}  // namespace linweb
