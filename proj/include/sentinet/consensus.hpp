#pragma once

#include <cstdint>
#include <deque>
#include <map>

#include "sentinet/ledger.hpp"
#include "sentinet/rng.hpp"

namespace sentinet::consensus {

using ledger::ControlBlock;
using ledger::PowMode;

struct PowContext {
  Hash32 target{};        // block threshold (real mode)
  Hash32 share_target{};  // partial-solution threshold; must exceed target
  PowMode mode = PowMode::Simulated;
  double sim_rate = 0.0;     // expected blocks per simulated second per unit weight
  double hash_weight = 1.0;  // relative mining power of this node

  bool sane() const {
    return hash_weight > 0 &&
           (mode == PowMode::RealPow ? ledger::hash_less(target, share_target)
                                     : sim_rate > 0);
  }
};

// Target with the top `zero_bits` bits clear, i.e. 2^(256 - zero_bits).
Hash32 target_with_difficulty(unsigned zero_bits);

struct MineResult {
  enum class Kind { Solved, Share, Exhausted } kind;
  // Solved/Share: the nonce that produced the hash. Exhausted: the next
  // nonce to scan.
  uint64_t nonce;
};

// Scans nonces starting at candidate.nonce. Returns Solved on the first
// hash below target (candidate.nonce left at the solution), Share on the
// first hash below share_target (candidate.nonce advanced past it), else
// Exhausted after nonce_budget attempts. Resumable: no nonce is scanned
// twice across calls.
MineResult mine_step(ControlBlock& candidate, const PowContext& ctx, uint64_t nonce_budget);

// Simulated-PoW waiting time until this node wins the next block race:
// exponential with rate sim_rate * hash_weight (memoryless, so the race can
// be resampled whenever the chain tip moves).
double schedule_block_delay(const PowContext& ctx, Rng& rng);

// Tracks activity shares per peer. A peer is active iff it produced at
// least one share within the trailing window. Inactive peers stop receiving
// block forwards (they may still issue direct chain-sync requests).
class ActivityLedger {
 public:
  explicit ActivityLedger(double window_seconds) : window_(window_seconds) {}

  void record_share(int peer, double now);
  bool is_peer_active(int peer, double now) const;
  double window() const { return window_; }

 private:
  double window_;
  std::map<int, std::deque<double>> shares_;
};

}  // namespace sentinet::consensus
