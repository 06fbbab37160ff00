#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>

#include "brel/brwt.hpp"
#include "brel/rel_gwt.hpp"
#include "brel/rel_str.hpp"
#include "brel/rel_wt.hpp"

namespace brel {

/// On-disk container: magic "BREL", format version (16-bit LE), representation
/// tag (1 byte), dims as three 64-bit LE words, then the representation's own
/// payload.
enum class ReprTag : uint8_t { str = 1, wt = 2, gwt = 3, brwt = 4 };

inline constexpr uint16_t kContainerVersion = 1;

std::optional<ReprTag> tag_from_name(std::string_view name);
std::string_view tag_name(ReprTag tag);

class StoredRelation {
public:
  StoredRelation() = default;
  template <typename T>
  StoredRelation(ReprTag tag, T structure)
      : tag_(tag), structure_(std::move(structure)) {}

  ReprTag tag() const { return tag_; }
  const RelationBackend& backend() const;
  RelationDims dims() const { return backend().dims(); }
  uint64_t payload_bits() const;
  uint64_t directory_bits() const;
  std::vector<Pair> decode() const;

  void save(std::ostream& os) const;
  static StoredRelation load(std::istream& is);

private:
  ReprTag tag_ = ReprTag::str;
  std::variant<BinRelStr, BinRelWt, BinRelGwt, Brwt> structure_;
};

StoredRelation build_relation(ReprTag tag, std::vector<Pair> pairs, uint64_t n,
                              uint64_t sigma, uint64_t arity = 8,
                              BandMode mode = BandMode::prefix);

} // namespace brel
