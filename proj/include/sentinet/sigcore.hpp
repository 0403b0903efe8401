#pragma once

#include <compare>
#include <set>
#include <string>

#include "sentinet/sha256.hpp"
#include "sentinet/util.hpp"

namespace sentinet::sigcore {

enum class ProtocolKind : uint8_t { Tcp, Udp, Icmp, Other };

struct Protocol {
  ProtocolKind kind = ProtocolKind::Tcp;
  uint8_t other_code = 0;  // meaningful only when kind == Other

  static Protocol tcp() { return {ProtocolKind::Tcp, 0}; }
  static Protocol udp() { return {ProtocolKind::Udp, 0}; }
  static Protocol icmp() { return {ProtocolKind::Icmp, 0}; }
  static Protocol other(uint8_t code) { return {ProtocolKind::Other, code}; }

  auto operator<=>(const Protocol&) const = default;
};

enum class Direction : uint8_t { Local, Remote };

inline char direction_char(Direction d) { return d == Direction::Local ? 'L' : 'R'; }

// One observed packet/flow event from a device trace. device_id is
// simulator-local bookkeeping and never contributes to any digest.
struct PacketRecord {
  double timestamp = 0.0;
  Protocol protocol;
  std::string endpoint;  // DNS name if available, else IP literal
  uint16_t service_port = 0;
  Direction direction = Direction::Remote;
  std::string device_id;
};

struct PacketSignature {
  Hash32 digest{};
  auto operator<=>(const PacketSignature&) const = default;
};

using SignatureSet = std::set<PacketSignature>;

struct DeviceFingerprint {
  Hash32 digest{};
  auto operator<=>(const DeviceFingerprint&) const = default;
};

// "<PROTOCOL>|<endpoint>|<direction><port>", protocol uppercased, endpoint
// lowercased. Injective over (protocol, endpoint, direction, port).
// Throws std::invalid_argument for an empty endpoint or one containing '|'.
std::string canonical_signature_string(const PacketRecord& record);

// SHA-256 of the canonical string. Timestamp and device_id never matter.
PacketSignature compute_signature(const PacketRecord& record);

// SHA-256 over the digests sorted ascending bytewise; permutation-invariant.
// Throws std::invalid_argument on an empty set ("cannot fingerprint silent
// device").
DeviceFingerprint compute_fingerprint(const SignatureSet& signatures);

}  // namespace sentinet::sigcore
