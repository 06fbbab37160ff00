#include "brel/edge_list.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace brel {

namespace {

[[noreturn]] void fail(uint64_t line, const std::string& what) {
  throw std::runtime_error("edge list, line " + std::to_string(line) + ": " + what);
}

} // namespace

EdgeList parse_edge_list(std::istream& is) {
  EdgeList out;
  std::string line;
  uint64_t lineno = 0;
  bool saw_body = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    if (line[first] == '%') {
      if (saw_body || out.had_header)
        fail(lineno, "header must be the first non-comment line");
      std::istringstream ss(line.substr(first + 1));
      if (!(ss >> out.n >> out.sigma))
        fail(lineno, "expected '% n sigma'");
      std::string extra;
      if (ss >> extra) fail(lineno, "trailing content after header");
      out.had_header = true;
      continue;
    }
    std::istringstream ss(line);
    uint64_t label = 0, object = 0;
    if (!(ss >> label >> object)) fail(lineno, "expected 'label object'");
    std::string extra;
    if (ss >> extra) fail(lineno, "trailing content after pair");
    if (label < 1) fail(lineno, "labels are 1-based");
    if (object < 1) fail(lineno, "objects are 1-based");
    if (out.had_header) {
      if (label > out.sigma) fail(lineno, "label exceeds declared sigma");
      if (object > out.n) fail(lineno, "object exceeds declared n");
    } else {
      out.sigma = std::max(out.sigma, label);
      out.n = std::max(out.n, object);
    }
    out.pairs.push_back({label, object});
    saw_body = true;
  }
  return out;
}

void write_edge_list(std::ostream& os, const EdgeList& e) {
  os << "% " << e.n << " " << e.sigma << "\n";
  for (const Pair& p : e.pairs) os << p.label << " " << p.object << "\n";
}

} // namespace brel
