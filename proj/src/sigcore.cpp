#include "sentinet/sigcore.hpp"

#include <algorithm>
#include <vector>

namespace sentinet::sigcore {

static std::string protocol_token(Protocol p) {
  switch (p.kind) {
    case ProtocolKind::Tcp: return "TCP";
    case ProtocolKind::Udp: return "UDP";
    case ProtocolKind::Icmp: return "ICMP";
    case ProtocolKind::Other: return "OTHER" + std::to_string(p.other_code);
  }
  return "OTHER";
}

std::string canonical_signature_string(const PacketRecord& record) {
  if (record.endpoint.empty())
    throw std::invalid_argument("endpoint must be non-empty");
  if (record.endpoint.find('|') != std::string::npos)
    throw std::invalid_argument("endpoint must not contain '|'");

  std::string endpoint = record.endpoint;
  std::transform(endpoint.begin(), endpoint.end(), endpoint.begin(),
                 [](unsigned char c) { return std::tolower(c); });

  std::string out = protocol_token(record.protocol);
  out += '|';
  out += endpoint;
  out += '|';
  out += direction_char(record.direction);
  out += std::to_string(record.service_port);
  return out;
}

PacketSignature compute_signature(const PacketRecord& record) {
  return PacketSignature{sha256(canonical_signature_string(record))};
}

DeviceFingerprint compute_fingerprint(const SignatureSet& signatures) {
  if (signatures.empty())
    throw std::invalid_argument("cannot fingerprint silent device");
  // std::set already iterates digests in ascending bytewise order.
  std::vector<uint8_t> buf;
  buf.reserve(signatures.size() * 32);
  for (const PacketSignature& sig : signatures)
    buf.insert(buf.end(), sig.digest.begin(), sig.digest.end());
  return DeviceFingerprint{sha256(buf)};
}

}  // namespace sentinet::sigcore
