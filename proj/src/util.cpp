#include "sentinet/util.hpp"

#include <bit>
#include <cstring>

namespace sentinet {

static constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(std::span<const uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

static int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Hash32 hash_from_hex(const std::string& hex) {
  if (hex.size() != 64) throw std::invalid_argument("hash hex must be 64 chars");
  Hash32 out{};
  for (size_t i = 0; i < 32; ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit in hash");
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_u64_be(std::vector<uint8_t>& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<uint8_t>(v >> shift));
}

void put_f64_be(std::vector<uint8_t>& out, double v) {
  put_u64_be(out, std::bit_cast<uint64_t>(v));
}

}  // namespace sentinet
