#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentinet/sigcore.hpp"
#include "sentinet/util.hpp"

namespace sentinet::ledger {

using sigcore::DeviceFingerprint;
using sigcore::PacketSignature;
using sigcore::SignatureSet;

// Block kinds of the multichain ledger: one proof-of-work control chain
// anchoring the headers of many per-device-type whitelist chains.

struct WhitelistBlock {
  Hash32 prev_hash{};         // zero for genesis
  Hash32 chain_id{};          // device fingerprint naming the chain
  Hash32 sentinel_address{};  // zero on canonical genesis blocks
  double timestamp = 0.0;
  std::vector<PacketSignature> signatures;

  bool is_genesis() const { return prev_hash == kZeroHash; }
  std::vector<uint8_t> encode() const;
  size_t encoded_size() const { return 108 + 32 * signatures.size(); }
  Hash32 header_hash() const;
};

struct ControlBlock {
  Hash32 prev_hash{};
  double timestamp = 0.0;
  Hash32 sentinel_address{};
  std::vector<Hash32> whitelist_headers;
  uint64_t nonce = 0;
  Hash32 target{};  // 256-bit big-endian threshold; all-ones when unused

  bool is_genesis() const { return prev_hash == kZeroHash; }
  std::vector<uint8_t> encode() const;
  size_t encoded_size() const { return 116 + 32 * whitelist_headers.size(); }
  Hash32 control_hash() const;
};

// The control chain starts from one fixed constant block shared by every
// node; device chains start from a canonical genesis derived purely from the
// profiled signature set, so concurrent founders of the same chain build
// byte-identical genesis blocks.
const ControlBlock& control_genesis();
const Hash32& control_genesis_hash();
WhitelistBlock make_chain_genesis(const Hash32& chain_id, const SignatureSet& profiled);

// a < b as 256-bit big-endian unsigned integers
inline bool hash_less(const Hash32& a, const Hash32& b) { return a < b; }

enum class PowMode { RealPow, Simulated };

enum class Validity { Valid, Pending, Invalid };

struct ValidityReport {
  Validity verdict = Validity::Valid;
  std::vector<std::string> reasons;

  bool valid() const { return verdict == Validity::Valid; }
  bool storable() const { return verdict != Validity::Invalid; }
  std::string reason_text() const;
};

struct Whitelist {
  Hash32 chain_id{};
  SignatureSet allowed;
};

// In-memory block store for one node: the control chain plus every device
// chain the node has seen, with branch tips, receipt order and cumulative
// whitelist caches. Single writer (the owning sentinel's event handler).
class ChainStore {
 public:
  ChainStore();

  ValidityReport validate_control(const ControlBlock& block, PowMode mode) const;
  ValidityReport validate_whitelist(const WhitelistBlock& block) const;

  // Insert after validation. Invalid blocks (orphans, malformed) are not
  // stored. Re-inserting a known block is a no-op. Pending whitelist blocks
  // (no control anchor yet) are stored.
  ValidityReport insert_control(const ControlBlock& block, PowMode mode);
  ValidityReport insert_whitelist(const WhitelistBlock& block);

  bool has_control(const Hash32& hash) const;
  bool has_whitelist(const Hash32& hash) const;
  const ControlBlock* control(const Hash32& hash) const;
  const WhitelistBlock* whitelist(const Hash32& hash) const;

  uint64_t control_height(const Hash32& hash) const;
  uint64_t whitelist_height(const Hash32& hash) const;
  uint64_t receipt_seq(const Hash32& hash) const;

  // Longest control branch tip (receipt order breaks exact ties).
  const Hash32& control_tip() const { return control_tip_; }
  uint64_t control_tip_height() const;
  std::vector<Hash32> control_branch() const;  // genesis..tip

  bool has_chain(const Hash32& chain_id) const;
  std::vector<Hash32> chain_ids() const;
  // All known branch tips of a device chain with their heights.
  std::map<Hash32, uint64_t> tips(const Hash32& chain_id) const;

  // Tip of maximal height; exact ties go to the tip first received locally.
  // Ties never switch branches. Throws std::out_of_range on unknown chain.
  Hash32 resolve_fork(const Hash32& chain_id) const;

  // Cumulative signature union genesis..tip (cached per block).
  const SignatureSet& whitelist_at(const Hash32& tip) const;
  // Union along the currently-longest branch of the chain.
  Whitelist derive_whitelist(const Hash32& chain_id) const;

  // True if the header is listed by a control block on the longest control
  // branch.
  bool header_confirmed(const Hash32& header) const;

  // Removes branches whose tip is >= depth blocks behind the longest tip of
  // the chain. Returns the number of blocks removed. depth >= 1.
  size_t prune_rejected_forks(const Hash32& chain_id, uint64_t depth);

  // Blocks of a branch genesis..tip.
  std::vector<Hash32> branch(const Hash32& tip) const;
  std::vector<Hash32> chain_blocks(const Hash32& chain_id) const;  // all, by (height, hash)

  size_t control_count() const { return controls_.size(); }
  size_t whitelist_count() const { return whitelists_.size(); }
  uint64_t forks_created(const Hash32& chain_id) const;
  uint64_t control_forks_created() const { return control_forks_created_; }
  uint64_t control_reorgs() const { return control_reorgs_; }

  // Flat-file export/import: control.jsonl plus one chain_<hex>.jsonl per
  // device chain, one JSON object per line, hashes hex-encoded.
  void export_dir(const std::filesystem::path& dir) const;
  // Returns per-file error strings (corrupt files are skipped, loading
  // continues).
  std::vector<std::string> import_dir(const std::filesystem::path& dir, PowMode mode);

  // Merge every block of another store (harness-side union view).
  void merge(const ChainStore& other, PowMode mode);

 private:
  struct StoredControl {
    ControlBlock block;
    uint64_t height = 0;
    uint64_t receipt = 0;
  };
  struct StoredWhitelist {
    WhitelistBlock block;
    uint64_t height = 0;
    uint64_t receipt = 0;
    SignatureSet branch_union;
  };

  void adopt_control_tip(const Hash32& tip);
  void rebuild_confirmed_headers();

  std::map<Hash32, StoredControl> controls_;
  std::map<Hash32, StoredWhitelist> whitelists_;
  std::map<Hash32, std::vector<Hash32>> control_children_;
  std::map<Hash32, std::vector<Hash32>> whitelist_children_;
  // chain_id -> (tip hash -> height)
  std::map<Hash32, std::map<Hash32, uint64_t>> tips_;
  std::map<Hash32, uint64_t> forks_created_;
  std::map<Hash32, uint64_t> control_tips_;  // tip hash -> height
  std::set<Hash32> confirmed_headers_;
  Hash32 control_tip_{};
  uint64_t control_forks_created_ = 0;
  uint64_t control_reorgs_ = 0;
  uint64_t receipt_counter_ = 0;
};

// JSON (de)serialization used by the flat-file export and the audit tool.
std::string control_to_jsonl(const ControlBlock& block);
std::string whitelist_to_jsonl(const WhitelistBlock& block);
// Throw std::invalid_argument on malformed lines or hash mismatches.
ControlBlock control_from_jsonl(const std::string& line);
WhitelistBlock whitelist_from_jsonl(const std::string& line);
bool jsonl_is_control(const std::string& line);

}  // namespace sentinet::ledger
