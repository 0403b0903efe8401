#pragma once

#include <span>
#include <string_view>

#include "sentinet/util.hpp"

namespace sentinet {

Hash32 sha256(std::span<const uint8_t> data);
Hash32 sha256(std::string_view data);

}  // namespace sentinet
