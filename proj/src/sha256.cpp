#include "sentinet/sha256.hpp"

#include <openssl/sha.h>

namespace sentinet {

Hash32 sha256(std::span<const uint8_t> data) {
  Hash32 out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Hash32 sha256(std::string_view data) {
  return sha256(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

}  // namespace sentinet
