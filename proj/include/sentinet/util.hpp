#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sentinet {

using Hash32 = std::array<uint8_t, 32>;

inline constexpr Hash32 kZeroHash{};

std::string to_hex(std::span<const uint8_t> bytes);
Hash32 hash_from_hex(const std::string& hex);

// Short prefix for logs and file names.
inline std::string hex_abbrev(const Hash32& h, size_t nbytes = 6) {
  return to_hex(std::span<const uint8_t>(h.data(), nbytes));
}

// Big-endian encoding helpers for the canonical block encoding.
void put_u32_be(std::vector<uint8_t>& out, uint32_t v);
void put_u64_be(std::vector<uint8_t>& out, uint64_t v);
void put_f64_be(std::vector<uint8_t>& out, double v);

}  // namespace sentinet
