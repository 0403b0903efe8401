#include "sentinet/consensus.hpp"

#include <stdexcept>

namespace sentinet::consensus {

Hash32 target_with_difficulty(unsigned zero_bits) {
  if (zero_bits >= 256) throw std::invalid_argument("difficulty too high");
  Hash32 t{};
  if (zero_bits == 0) {
    t.fill(0xff);  // 2^256 is not representable; accept (almost) everything
    return t;
  }
  // 2^(256 - zero_bits): single set bit, big-endian.
  unsigned bit_index = 256 - zero_bits;  // counted from the least significant bit
  t[31 - bit_index / 8] = static_cast<uint8_t>(1u << (bit_index % 8));
  return t;
}

MineResult mine_step(ControlBlock& candidate, const PowContext& ctx, uint64_t nonce_budget) {
  if (ctx.mode != PowMode::RealPow)
    throw std::logic_error("mine_step requires real proof-of-work mode");
  if (nonce_budget < 1) throw std::invalid_argument("nonce budget must be >= 1");

  for (uint64_t i = 0; i < nonce_budget; ++i) {
    Hash32 h = candidate.control_hash();
    if (ledger::hash_less(h, ctx.target))
      return {MineResult::Kind::Solved, candidate.nonce};
    if (ledger::hash_less(h, ctx.share_target)) {
      uint64_t share_nonce = candidate.nonce;
      ++candidate.nonce;
      return {MineResult::Kind::Share, share_nonce};
    }
    ++candidate.nonce;
  }
  return {MineResult::Kind::Exhausted, candidate.nonce};
}

double schedule_block_delay(const PowContext& ctx, Rng& rng) {
  if (ctx.mode != PowMode::Simulated)
    throw std::logic_error("schedule_block_delay requires simulated mode");
  double rate = ctx.sim_rate * ctx.hash_weight;
  if (rate <= 0) throw std::invalid_argument("simulated mining rate must be positive");
  return rng.exponential_mean(1.0 / rate);
}

void ActivityLedger::record_share(int peer, double now) {
  auto& entries = shares_[peer];
  if (!entries.empty() && now < entries.back())
    throw std::invalid_argument("share timestamps must be non-decreasing per peer");
  entries.push_back(now);
  while (!entries.empty() && entries.front() < now - window_) entries.pop_front();
}

bool ActivityLedger::is_peer_active(int peer, double now) const {
  auto it = shares_.find(peer);
  if (it == shares_.end() || it->second.empty()) return false;
  return it->second.back() >= now - window_;
}

}  // namespace sentinet::consensus
