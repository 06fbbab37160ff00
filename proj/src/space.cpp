#include "brel/space.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace brel::space {

namespace {

// Unsigned big integer, base 2^32, just enough for exact binomials.
struct BigUint {
  std::vector<uint32_t> limbs{1};  // little-endian; value 1

  void mul(uint64_t m) {
    uint64_t carry = 0;
    for (auto& limb : limbs) {
      const uint64_t v = limb * m + carry;
      limb = static_cast<uint32_t>(v);
      carry = v >> 32;
    }
    while (carry) {
      limbs.push_back(static_cast<uint32_t>(carry));
      carry >>= 32;
    }
  }

  void div(uint64_t d) {  // exact division
    uint64_t rem = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
      const uint64_t v = (rem << 32) | limbs[i];
      limbs[i] = static_cast<uint32_t>(v / d);
      rem = v % d;
    }
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
  }

  double log2() const {
    size_t top = limbs.size();
    while (top > 1 && limbs[top - 1] == 0) --top;
    double head = 0;
    int used = 0;
    for (size_t i = top; i-- > 0 && used < 3; ++used) {
      head = head * 4294967296.0 + limbs[i];
    }
    const double scale = 32.0 * (static_cast<double>(top) - used);
    return std::log2(head) + scale;
  }
};

} // namespace

double binomial_log2_exact(uint64_t n, uint64_t k) {
  if (k > n) throw std::invalid_argument("binomial_log2_exact: k > n");
  if (k > n - k) k = n - k;
  if (k == 0) return 0.0;
  BigUint c;
  for (uint64_t i = 1; i <= k; ++i) {
    c.mul(n - i + 1);
    c.div(i);
  }
  return c.log2();
}

double entropy_bits(const RelationDims& dims) {
  const uint64_t cells = dims.n * dims.sigma;
  if (dims.t > cells) throw std::invalid_argument("entropy_bits: t > n*sigma");
  if (dims.t == 0 || dims.t == cells) return 0.0;
  if (cells <= 10000) return binomial_log2_exact(cells, dims.t);
  const double lg = std::lgamma(static_cast<double>(cells) + 1) -
                    std::lgamma(static_cast<double>(dims.t) + 1) -
                    std::lgamma(static_cast<double>(cells - dims.t) + 1);
  return lg / std::log(2.0);
}

double zero_order_bits(std::span<const uint64_t> counts) {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  if (total == 0) return 0.0;
  double bits = 0;
  for (uint64_t c : counts) {
    if (c == 0) continue;
    bits += static_cast<double>(c) *
            std::log2(static_cast<double>(total) / static_cast<double>(c));
  }
  return bits;
}

double label_string_h0_bits(const std::vector<Pair>& pairs, uint64_t sigma) {
  std::vector<uint64_t> counts(sigma + 1, 0);
  for (const Pair& p : pairs) ++counts[p.label];
  return zero_order_bits(counts);
}

double brwt_ideal_bits(const Brwt& b) {
  double bits = 2.0 * static_cast<double>(b.dims().n);
  const auto& nodes = b.nodes();
  for (size_t i = 1; i < nodes.size(); ++i) {
    const auto& v = nodes[i];
    uint64_t t01 = 0, t10 = 0, t11 = 0;
    for (uint64_t p = 1; p <= v.size(); ++p) {
      const bool l = v.left.access(p);
      const bool r = v.right.access(p);
      if (l && r) {
        ++t11;
      } else if (l) {
        ++t10;
      } else {
        ++t01;  // below the root one of the bits is always set
      }
    }
    const uint64_t counts[3] = {t01, t10, t11};
    bits += zero_order_bits(counts);
  }
  return bits;
}

double brwt_space_bound(const RelationDims& dims, double slack) {
  return std::log2(1.0 + std::sqrt(2.0)) * entropy_bits(dims) +
         slack * static_cast<double>(dims.t + dims.n + dims.sigma);
}

SpaceReport make_report(const std::vector<Pair>& pairs, const RelationDims& dims,
                        std::span<const ReprSpace> reprs, const Brwt* brwt) {
  SpaceReport r;
  r.dims = dims;
  r.entropy_bits = entropy_bits(dims);
  r.h0_s_bits = label_string_h0_bits(pairs, dims.sigma);
  r.reprs.assign(reprs.begin(), reprs.end());
  if (brwt != nullptr) {
    r.has_brwt = true;
    r.brwt_ideal_bits = brwt_ideal_bits(*brwt);
    r.brwt_bound_bits = brwt_space_bound(dims);
  }
  return r;
}

void print_text(std::ostream& os, const SpaceReport& r) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << "relation: n=" << r.dims.n << " sigma=" << r.dims.sigma
     << " t=" << r.dims.t << "\n";
  os << std::fixed << std::setprecision(4);
  os << "entropy H(R)       " << std::setw(16) << r.entropy_bits << " bits\n";
  os << "t*H0(S)            " << std::setw(16) << r.h0_s_bits << " bits\n";
  for (const auto& repr : r.reprs) {
    os << std::left << std::setw(10) << repr.name << std::right
       << " payload  " << std::setw(12) << repr.payload_bits << " bits"
       << "  directories " << std::setw(12) << repr.directory_bits << " bits\n";
  }
  if (r.has_brwt) {
    os << "brwt ideal encoding " << std::setw(16) << r.brwt_ideal_bits
       << " bits vs bound " << r.brwt_bound_bits << " bits ("
       << (r.brwt_ideal_bits <= r.brwt_bound_bits ? "within" : "EXCEEDS")
       << ")\n";
  }
  os.flags(flags);
  os.precision(precision);
}

void print_kv(std::ostream& os, const SpaceReport& r) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(12);
  os << "n=" << r.dims.n << "\n";
  os << "sigma=" << r.dims.sigma << "\n";
  os << "t=" << r.dims.t << "\n";
  os << "entropy_bits=" << r.entropy_bits << "\n";
  os << "h0_s_bits=" << r.h0_s_bits << "\n";
  for (const auto& repr : r.reprs) {
    os << repr.name << "_payload_bits=" << repr.payload_bits << "\n";
    os << repr.name << "_directory_bits=" << repr.directory_bits << "\n";
  }
  if (r.has_brwt) {
    os << "brwt_ideal_bits=" << r.brwt_ideal_bits << "\n";
    os << "brwt_bound_bits=" << r.brwt_bound_bits << "\n";
  }
  os.flags(flags);
  os.precision(precision);
}

} // namespace brel::space
