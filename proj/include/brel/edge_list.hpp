#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "brel/relation.hpp"

namespace brel {

/// Parsed edge-list input: optional "% n sigma" header, one "label object"
/// pair per line (1-based), '#' comment lines ignored. Without a header the
/// universes are the maxima observed.
struct EdgeList {
  uint64_t n = 0;
  uint64_t sigma = 0;
  bool had_header = false;
  std::vector<Pair> pairs;  // as read; duplicates allowed
};

/// Throws std::runtime_error with the offending line number on bad input.
EdgeList parse_edge_list(std::istream& is);

void write_edge_list(std::ostream& os, const EdgeList& e);

} // namespace brel
