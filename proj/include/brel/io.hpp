#pragma once
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace brel::io {

// Little-endian integer helpers shared by all on-disk formats.

inline void write_u64(std::ostream& os, uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

inline void write_u16(std::ostream& os, uint16_t v) {
  unsigned char buf[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(buf), 2);
}

inline void write_u8(std::ostream& os, uint8_t v) {
  os.put(static_cast<char>(v));
}

inline uint64_t read_u64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8))
    throw std::runtime_error("truncated input: expected 8 bytes");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return v;
}

inline uint16_t read_u16(std::istream& is) {
  unsigned char buf[2];
  if (!is.read(reinterpret_cast<char*>(buf), 2))
    throw std::runtime_error("truncated input: expected 2 bytes");
  return static_cast<uint16_t>(buf[0] | (buf[1] << 8));
}

inline uint8_t read_u8(std::istream& is) {
  int c = is.get();
  if (c == std::char_traits<char>::eof())
    throw std::runtime_error("truncated input: expected 1 byte");
  return static_cast<uint8_t>(c);
}

} // namespace brel::io
