#include "sentinet/rng.hpp"

#include <vector>

namespace sentinet {

uint64_t derive_seed(uint64_t master, std::string_view stream, uint64_t index) {
  std::vector<uint8_t> buf;
  buf.reserve(16 + stream.size());
  put_u64_be(buf, master);
  put_u64_be(buf, index);
  buf.insert(buf.end(), stream.begin(), stream.end());
  Hash32 h = sha256(buf);
  uint64_t out = 0;
  for (size_t i = 0; i < 8; ++i) out = (out << 8) | h[i];
  return out;
}

}  // namespace sentinet
