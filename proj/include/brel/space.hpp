#pragma once
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "brel/brwt.hpp"
#include "brel/relation.hpp"

namespace brel::space {

/// lg C(n, k) computed exactly with a small big-integer; n <= 10^4.
double binomial_log2_exact(uint64_t n, uint64_t k);

/// H(R) = lg C(n*sigma, t). Exact big-integer path for n*sigma <= 10^4,
/// log-gamma beyond. Zero when t = 0 or t = n*sigma; t > n*sigma is an error.
double entropy_bits(const RelationDims& dims);

/// Sum of n_a lg(total / n_a) over the given occurrence counts (total bits of
/// a zero-order code); zero for empty or single-symbol distributions.
double zero_order_bits(std::span<const uint64_t> counts);

/// t * H0(S) for the label string S of a relation.
double label_string_h0_bits(const std::vector<Pair>& pairs, uint64_t sigma);

/// Analytic accounting of an ideally encoded BRWT: 2n raw bits for the root
/// plus, per deeper node, the zero-order size of its combined {01,10,11} sequence.
double brwt_ideal_bits(const Brwt& b);

/// lg(1 + sqrt 2) * H(R) + slack * (t + n + sigma).
double brwt_space_bound(const RelationDims& dims, double slack = 8.0);

struct ReprSpace {
  std::string name;
  uint64_t payload_bits = 0;
  uint64_t directory_bits = 0;
};

struct SpaceReport {
  RelationDims dims;
  double entropy_bits = 0;
  double h0_s_bits = 0;
  std::vector<ReprSpace> reprs;
  bool has_brwt = false;
  double brwt_ideal_bits = 0;
  double brwt_bound_bits = 0;
};

SpaceReport make_report(const std::vector<Pair>& pairs, const RelationDims& dims,
                        std::span<const ReprSpace> reprs, const Brwt* brwt);

void print_text(std::ostream& os, const SpaceReport& r);
void print_kv(std::ostream& os, const SpaceReport& r);

} // namespace brel::space
