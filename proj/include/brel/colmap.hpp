#pragma once
#include <cstdint>
#include <vector>

#include "brel/bitvector.hpp"
#include "brel/relation.hpp"

namespace brel {

// The unary column-cardinality bitmap B[1, n+t] shared by the string-based
// representations: each column contributes its 1s (one per pair) followed by
// a terminating 0, so map/unmap convert between columns and positions of S.
namespace colmap {

// pairs must be object-major sorted and deduplicated.
inline BitVector build(const std::vector<Pair>& object_major, uint64_t n) {
  std::vector<bool> bits;
  bits.reserve(n + object_major.size());
  size_t i = 0;
  for (uint64_t x = 1; x <= n; ++x) {
    while (i < object_major.size() && object_major[i].object == x) {
      bits.push_back(true);
      ++i;
    }
    bits.push_back(false);
  }
  return BitVector(bits);
}

// map(x) = rank1(B, select0(B, x)); position in S of column x's last pair.
inline uint64_t map(const BitVector& b, uint64_t x) {
  if (x == 0) return 0;
  return b.rank1(*b.select0(x));
}

// unmap(m) = rank0(B, select1(B, m)) + 1; the column owning S[m].
inline uint64_t unmap(const BitVector& b, uint64_t m) {
  return b.rank0(*b.select1(m)) + 1;
}

} // namespace colmap

} // namespace brel
