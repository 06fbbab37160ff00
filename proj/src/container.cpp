#include "brel/container.hpp"

#include <stdexcept>

#include "brel/io.hpp"

namespace brel {

std::optional<ReprTag> tag_from_name(std::string_view name) {
  if (name == "str") return ReprTag::str;
  if (name == "wt") return ReprTag::wt;
  if (name == "gwt") return ReprTag::gwt;
  if (name == "brwt") return ReprTag::brwt;
  return std::nullopt;
}

std::string_view tag_name(ReprTag tag) {
  switch (tag) {
    case ReprTag::str: return "str";
    case ReprTag::wt: return "wt";
    case ReprTag::gwt: return "gwt";
    case ReprTag::brwt: return "brwt";
  }
  return "?";
}

const RelationBackend& StoredRelation::backend() const {
  return *std::visit(
      [](const auto& s) { return static_cast<const RelationBackend*>(&s); },
      structure_);
}

uint64_t StoredRelation::payload_bits() const {
  return std::visit([](const auto& s) { return s.payload_bits(); }, structure_);
}

uint64_t StoredRelation::directory_bits() const {
  return std::visit([](const auto& s) { return s.directory_bits(); }, structure_);
}

std::vector<Pair> StoredRelation::decode() const {
  return std::visit([](const auto& s) { return s.decode(); }, structure_);
}

void StoredRelation::save(std::ostream& os) const {
  os.write("BREL", 4);
  io::write_u16(os, kContainerVersion);
  io::write_u8(os, static_cast<uint8_t>(tag_));
  const RelationDims d = dims();
  io::write_u64(os, d.n);
  io::write_u64(os, d.sigma);
  io::write_u64(os, d.t);
  std::visit([&](const auto& s) { s.save_payload(os); }, structure_);
  if (!os) throw std::runtime_error("StoredRelation::save: write failed");
}

StoredRelation StoredRelation::load(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string_view(magic, 4) != "BREL")
    throw std::runtime_error("not a BREL file (bad magic)");
  const uint16_t version = io::read_u16(is);
  if (version != kContainerVersion)
    throw std::runtime_error("unsupported BREL format version " +
                             std::to_string(version));
  const uint8_t tag_byte = io::read_u8(is);
  RelationDims d;
  d.n = io::read_u64(is);
  d.sigma = io::read_u64(is);
  d.t = io::read_u64(is);
  switch (static_cast<ReprTag>(tag_byte)) {
    case ReprTag::str:
      return StoredRelation(ReprTag::str, BinRelStr::load_payload(is, d));
    case ReprTag::wt:
      return StoredRelation(ReprTag::wt, BinRelWt::load_payload(is, d));
    case ReprTag::gwt:
      return StoredRelation(ReprTag::gwt, BinRelGwt::load_payload(is, d));
    case ReprTag::brwt:
      return StoredRelation(ReprTag::brwt, Brwt::load_payload(is, d));
  }
  throw std::runtime_error("unknown representation tag " +
                           std::to_string(tag_byte));
}

StoredRelation build_relation(ReprTag tag, std::vector<Pair> pairs, uint64_t n,
                              uint64_t sigma, uint64_t arity, BandMode mode) {
  switch (tag) {
    case ReprTag::str:
      return StoredRelation(tag, BinRelStr(std::move(pairs), n, sigma));
    case ReprTag::wt:
      return StoredRelation(tag, BinRelWt(std::move(pairs), n, sigma));
    case ReprTag::gwt:
      return StoredRelation(tag, BinRelGwt(std::move(pairs), n, sigma, arity, mode));
    case ReprTag::brwt:
      return StoredRelation(tag, Brwt(std::move(pairs), n, sigma));
  }
  throw std::logic_error("build_relation: unknown tag");
}

} // namespace brel
