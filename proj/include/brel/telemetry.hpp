#pragma once
#include <cstdint>

namespace brel::telemetry {

// Per-thread instrumentation used to check the node-visit and probe bounds.
// Structures only increment; callers reset and read around a query.
struct Counters {
  uint64_t wt_nodes = 0;           // wavelet tree nodes touched
  uint64_t gwt_nodes = 0;          // generalized wavelet tree nodes touched
  uint64_t brwt_nodes = 0;         // BRWT nodes touched
  uint64_t band_probes = 0;        // B_{k,l} select-next probes
  uint64_t rmq_queries = 0;
  uint64_t child_searches = 0;     // per-node child binary searches (GWT)
  uint64_t child_search_steps = 0; // comparisons inside those searches
  uint64_t distinct_probes = 0;    // probes inside distinct_in_range

  void reset() { *this = Counters{}; }
};

inline Counters& counters() {
  thread_local Counters c;
  return c;
}

} // namespace brel::telemetry
