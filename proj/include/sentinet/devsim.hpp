#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sentinet/rng.hpp"
#include "sentinet/sigcore.hpp"

namespace sentinet::devsim {

using sigcore::Direction;
using sigcore::PacketRecord;
using sigcore::Protocol;

// Flow fields only; timestamp and device id are stamped at replay time.
struct TraceRecord {
  Protocol protocol;
  std::string endpoint;
  uint16_t service_port = 0;
  Direction direction = Direction::Remote;

  PacketRecord materialize(double timestamp, const std::string& device_id) const {
    return PacketRecord{timestamp, protocol, endpoint, service_port, direction, device_id};
  }
};

struct DeviceTrace {
  std::string device_type;
  std::vector<TraceRecord> records;
};

// Uniformly random record plus an exponential inter-packet delay with the
// given mean, both drawn from the device's own rng stream.
std::pair<double, TraceRecord> replay_next(const DeviceTrace& trace, Rng& rng,
                                           double mean_interval);

enum class AttackKind { Scan, Flood, Exfil };

struct AttackProfile {
  AttackKind kind = AttackKind::Exfil;
  double start = 0.0;
  // Attack traffic stops here; the run keeps going so chains settle before
  // measurement. <= 0 means the attack runs to the end.
  double stop = 0.0;
  double rate = 1.0;      // packets per simulated second per infected device
  double fraction = 0.0;  // infected fraction of the device population

  void validate() const {
    if (fraction < 0.0 || fraction > 1.0)
      throw std::invalid_argument("attack fraction must be in [0,1]");
    if (rate <= 0.0) throw std::invalid_argument("attack rate must be positive");
  }
};

AttackKind attack_kind_from_string(const std::string& name);
std::string attack_kind_name(AttackKind kind);

// Selects ceil(fraction * population) victims. Returns an empty set (with
// `warning` set) when fraction * population < 1.
std::vector<size_t> inject_attack(size_t population, const AttackProfile& profile,
                                  Rng& rng, std::string* warning = nullptr);

// The flow a given victim emits while infected. SCAN and FLOOD vary the
// endpoint per victim (distinct signatures network-wide); EXFIL shares one
// fixed endpoint (the coordinated attacker able to cross the majority
// threshold).
TraceRecord attack_record(const AttackProfile& profile, size_t victim_index);

// Built-in traces: "lifx-like" (NTP + vendor API), "plug-like" (3 flows),
// "tablet-like" (200 distinct endpoints; never converges).
const std::vector<DeviceTrace>& bundled_traces();
const DeviceTrace& trace_by_label(const std::string& label);
bool has_trace_label(const std::string& label);

// Trace files: one JSON object per line with protocol, endpoint,
// service_port, direction. The loader enforces the signature-field
// invariants.
DeviceTrace load_trace(const std::filesystem::path& file, const std::string& label);
void save_trace(const DeviceTrace& trace, const std::filesystem::path& file);

}  // namespace sentinet::devsim
