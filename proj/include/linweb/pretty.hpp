#ifndef LINWEB_PRETTY_HPP
#define LINWEB_PRETTY_HPP

#include <map>
#include <string>

#include "linweb/formula.hpp"
#include "linweb/term.hpp"

namespace linweb {

// Canonical concrete syntax: parse(pretty(x)) == x up to variable renaming.
std::string pretty(const TermPtr& t);
std::string pretty(const GPtr& g);   // quantifiers implicit
std::string pretty(const DPtr& d);   // quantifiers implicit, choice groups parenthesized
std::string pretty_module(const SourceModule& m);

// Consistent residual-variable display across the terms of one answer.
struct VarNamer {
  std::map<std::uint64_t, std::string> names;
  int next = 1;
  const std::string& name_for(std::uint64_t id);
};

std::string pretty_renamed(const TermPtr& t, VarNamer& namer);

}  // namespace linweb

#endif
