#include "sentinet/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sentinet/sha256.hpp"

namespace sentinet::ledger {

using nlohmann::json;

std::vector<uint8_t> WhitelistBlock::encode() const {
  std::vector<uint8_t> out;
  out.reserve(encoded_size());
  out.insert(out.end(), prev_hash.begin(), prev_hash.end());
  out.insert(out.end(), chain_id.begin(), chain_id.end());
  out.insert(out.end(), sentinel_address.begin(), sentinel_address.end());
  put_f64_be(out, timestamp);
  put_u32_be(out, static_cast<uint32_t>(signatures.size()));
  for (const PacketSignature& sig : signatures)
    out.insert(out.end(), sig.digest.begin(), sig.digest.end());
  return out;
}

Hash32 WhitelistBlock::header_hash() const { return sha256(encode()); }

std::vector<uint8_t> ControlBlock::encode() const {
  std::vector<uint8_t> out;
  out.reserve(encoded_size());
  out.insert(out.end(), prev_hash.begin(), prev_hash.end());
  put_f64_be(out, timestamp);
  out.insert(out.end(), sentinel_address.begin(), sentinel_address.end());
  put_u32_be(out, static_cast<uint32_t>(whitelist_headers.size()));
  for (const Hash32& h : whitelist_headers) out.insert(out.end(), h.begin(), h.end());
  put_u64_be(out, nonce);
  out.insert(out.end(), target.begin(), target.end());
  return out;
}

Hash32 ControlBlock::control_hash() const { return sha256(encode()); }

static Hash32 all_ones_hash() {
  Hash32 h;
  h.fill(0xff);
  return h;
}

const ControlBlock& control_genesis() {
  static const ControlBlock genesis = [] {
    ControlBlock b;
    b.target = all_ones_hash();
    return b;
  }();
  return genesis;
}

const Hash32& control_genesis_hash() {
  static const Hash32 h = control_genesis().control_hash();
  return h;
}

WhitelistBlock make_chain_genesis(const Hash32& chain_id, const SignatureSet& profiled) {
  WhitelistBlock b;
  b.chain_id = chain_id;
  b.signatures.assign(profiled.begin(), profiled.end());
  return b;
}

std::string ValidityReport::reason_text() const {
  std::string out;
  for (const std::string& r : reasons) {
    if (!out.empty()) out += ',';
    out += r;
  }
  return out;
}

ChainStore::ChainStore() {
  StoredControl genesis{control_genesis(), 1, receipt_counter_++};
  control_tip_ = control_genesis_hash();
  control_tips_[control_tip_] = 1;
  controls_.emplace(control_tip_, std::move(genesis));
}

ValidityReport ChainStore::validate_control(const ControlBlock& block, PowMode mode) const {
  ValidityReport report;
  if (block.is_genesis()) {
    if (block.control_hash() != control_genesis_hash()) {
      report.verdict = Validity::Invalid;
      report.reasons.push_back("bad-genesis");
    }
    return report;
  }
  if (!controls_.count(block.prev_hash)) {
    report.verdict = Validity::Invalid;
    report.reasons.push_back("orphan");
  }
  if (mode == PowMode::RealPow && !hash_less(block.control_hash(), block.target)) {
    report.verdict = Validity::Invalid;
    report.reasons.push_back("pow");
  }
  return report;
}

ValidityReport ChainStore::validate_whitelist(const WhitelistBlock& block) const {
  ValidityReport report;
  std::set<PacketSignature> seen(block.signatures.begin(), block.signatures.end());
  if (seen.size() != block.signatures.size()) {
    report.verdict = Validity::Invalid;
    report.reasons.push_back("duplicate-signature");
  }
  if (!block.is_genesis()) {
    auto it = whitelists_.find(block.prev_hash);
    if (it == whitelists_.end()) {
      report.verdict = Validity::Invalid;
      report.reasons.push_back("orphan");
    } else if (it->second.block.chain_id != block.chain_id) {
      report.verdict = Validity::Invalid;
      report.reasons.push_back("chain-mismatch");
    }
  }
  if (report.verdict == Validity::Valid && !header_confirmed(block.header_hash())) {
    report.verdict = Validity::Pending;
    report.reasons.push_back("unanchored");
  }
  return report;
}

void ChainStore::adopt_control_tip(const Hash32& tip) {
  const StoredControl& cur = controls_.at(control_tip_);
  const StoredControl& cand = controls_.at(tip);
  if (cand.height < cur.height) return;
  if (cand.height == cur.height && cand.receipt >= cur.receipt) return;
  bool extension = cand.block.prev_hash == control_tip_;
  Hash32 old_tip = control_tip_;
  control_tip_ = tip;
  if (extension) {
    for (const Hash32& h : cand.block.whitelist_headers) confirmed_headers_.insert(h);
  } else {
    if (old_tip != cand.block.prev_hash) ++control_reorgs_;
    rebuild_confirmed_headers();
  }
}

void ChainStore::rebuild_confirmed_headers() {
  confirmed_headers_.clear();
  Hash32 cursor = control_tip_;
  while (true) {
    const StoredControl& sc = controls_.at(cursor);
    for (const Hash32& h : sc.block.whitelist_headers) confirmed_headers_.insert(h);
    if (sc.block.is_genesis()) break;
    cursor = sc.block.prev_hash;
  }
}

ValidityReport ChainStore::insert_control(const ControlBlock& block, PowMode mode) {
  Hash32 hash = block.control_hash();
  if (controls_.count(hash)) return {};  // idempotent
  ValidityReport report = validate_control(block, mode);
  if (!report.storable()) return report;

  StoredControl stored;
  stored.block = block;
  stored.receipt = receipt_counter_++;
  stored.height = controls_.at(block.prev_hash).height + 1;

  auto& siblings = control_children_[block.prev_hash];
  if (!siblings.empty()) ++control_forks_created_;
  siblings.push_back(hash);

  control_tips_.erase(block.prev_hash);
  control_tips_[hash] = stored.height;
  controls_.emplace(hash, std::move(stored));
  adopt_control_tip(hash);
  return report;
}

ValidityReport ChainStore::insert_whitelist(const WhitelistBlock& block) {
  Hash32 hash = block.header_hash();
  if (whitelists_.count(hash)) return {};
  ValidityReport report = validate_whitelist(block);
  if (!report.storable()) return report;

  StoredWhitelist stored;
  stored.block = block;
  stored.receipt = receipt_counter_++;
  if (block.is_genesis()) {
    stored.height = 1;
    stored.branch_union.insert(block.signatures.begin(), block.signatures.end());
  } else {
    const StoredWhitelist& parent = whitelists_.at(block.prev_hash);
    stored.height = parent.height + 1;
    stored.branch_union = parent.branch_union;
    stored.branch_union.insert(block.signatures.begin(), block.signatures.end());
  }

  if (!block.is_genesis()) {
    auto& siblings = whitelist_children_[block.prev_hash];
    if (!siblings.empty()) ++forks_created_[block.chain_id];
    siblings.push_back(hash);
  }

  auto& chain_tips = tips_[block.chain_id];
  chain_tips.erase(block.prev_hash);
  chain_tips[hash] = stored.height;
  whitelists_.emplace(hash, std::move(stored));
  return report;
}

bool ChainStore::has_control(const Hash32& hash) const { return controls_.count(hash) > 0; }
bool ChainStore::has_whitelist(const Hash32& hash) const { return whitelists_.count(hash) > 0; }

const ControlBlock* ChainStore::control(const Hash32& hash) const {
  auto it = controls_.find(hash);
  return it == controls_.end() ? nullptr : &it->second.block;
}

const WhitelistBlock* ChainStore::whitelist(const Hash32& hash) const {
  auto it = whitelists_.find(hash);
  return it == whitelists_.end() ? nullptr : &it->second.block;
}

uint64_t ChainStore::control_height(const Hash32& hash) const {
  return controls_.at(hash).height;
}

uint64_t ChainStore::whitelist_height(const Hash32& hash) const {
  return whitelists_.at(hash).height;
}

uint64_t ChainStore::receipt_seq(const Hash32& hash) const {
  if (auto it = whitelists_.find(hash); it != whitelists_.end()) return it->second.receipt;
  return controls_.at(hash).receipt;
}

uint64_t ChainStore::control_tip_height() const { return controls_.at(control_tip_).height; }

std::vector<Hash32> ChainStore::control_branch() const {
  std::vector<Hash32> out;
  Hash32 cursor = control_tip_;
  while (true) {
    out.push_back(cursor);
    const StoredControl& sc = controls_.at(cursor);
    if (sc.block.is_genesis()) break;
    cursor = sc.block.prev_hash;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool ChainStore::has_chain(const Hash32& chain_id) const {
  auto it = tips_.find(chain_id);
  return it != tips_.end() && !it->second.empty();
}

std::vector<Hash32> ChainStore::chain_ids() const {
  std::vector<Hash32> out;
  for (const auto& [chain, tips] : tips_)
    if (!tips.empty()) out.push_back(chain);
  return out;
}

std::map<Hash32, uint64_t> ChainStore::tips(const Hash32& chain_id) const {
  auto it = tips_.find(chain_id);
  if (it == tips_.end()) return {};
  return it->second;
}

Hash32 ChainStore::resolve_fork(const Hash32& chain_id) const {
  auto it = tips_.find(chain_id);
  if (it == tips_.end() || it->second.empty())
    throw std::out_of_range("unknown chain");
  const Hash32* best = nullptr;
  uint64_t best_height = 0;
  uint64_t best_receipt = 0;
  for (const auto& [tip, height] : it->second) {
    uint64_t receipt = whitelists_.at(tip).receipt;
    if (!best || height > best_height ||
        (height == best_height && receipt < best_receipt)) {
      best = &tip;
      best_height = height;
      best_receipt = receipt;
    }
  }
  return *best;
}

const SignatureSet& ChainStore::whitelist_at(const Hash32& tip) const {
  return whitelists_.at(tip).branch_union;
}

Whitelist ChainStore::derive_whitelist(const Hash32& chain_id) const {
  Whitelist out;
  out.chain_id = chain_id;
  out.allowed = whitelist_at(resolve_fork(chain_id));
  return out;
}

bool ChainStore::header_confirmed(const Hash32& header) const {
  return confirmed_headers_.count(header) > 0;
}

size_t ChainStore::prune_rejected_forks(const Hash32& chain_id, uint64_t depth) {
  if (depth < 1) throw std::invalid_argument("prune depth must be >= 1");
  auto it = tips_.find(chain_id);
  if (it == tips_.end() || it->second.size() <= 1) return 0;

  uint64_t best_height = 0;
  for (const auto& [tip, height] : it->second) best_height = std::max(best_height, height);

  // Everything reachable from a surviving tip stays.
  std::set<Hash32> keep;
  for (const auto& [tip, height] : it->second) {
    if (best_height - height >= depth) continue;
    Hash32 cursor = tip;
    while (keep.insert(cursor).second) {
      const WhitelistBlock& b = whitelists_.at(cursor).block;
      if (b.is_genesis()) break;
      cursor = b.prev_hash;
    }
  }

  std::vector<Hash32> doomed;
  for (const auto& [hash, stored] : whitelists_)
    if (stored.block.chain_id == chain_id && !keep.count(hash)) doomed.push_back(hash);

  for (const Hash32& hash : doomed) {
    const WhitelistBlock& b = whitelists_.at(hash).block;
    if (!b.is_genesis()) {
      auto& siblings = whitelist_children_[b.prev_hash];
      std::erase(siblings, hash);
      if (siblings.empty()) whitelist_children_.erase(b.prev_hash);
    }
    whitelist_children_.erase(hash);
    it->second.erase(hash);
    whitelists_.erase(hash);
  }
  return doomed.size();
}

std::vector<Hash32> ChainStore::branch(const Hash32& tip) const {
  std::vector<Hash32> out;
  Hash32 cursor = tip;
  while (true) {
    out.push_back(cursor);
    const WhitelistBlock& b = whitelists_.at(cursor).block;
    if (b.is_genesis()) break;
    cursor = b.prev_hash;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Hash32> ChainStore::chain_blocks(const Hash32& chain_id) const {
  std::vector<std::pair<uint64_t, Hash32>> rows;
  for (const auto& [hash, stored] : whitelists_)
    if (stored.block.chain_id == chain_id) rows.emplace_back(stored.height, hash);
  std::sort(rows.begin(), rows.end());
  std::vector<Hash32> out;
  out.reserve(rows.size());
  for (auto& [h, hash] : rows) out.push_back(hash);
  return out;
}

uint64_t ChainStore::forks_created(const Hash32& chain_id) const {
  auto it = forks_created_.find(chain_id);
  return it == forks_created_.end() ? 0 : it->second;
}

// --- JSON lines -------------------------------------------------------------

std::string control_to_jsonl(const ControlBlock& block) {
  json j;
  j["kind"] = "control";
  j["hash"] = to_hex(block.control_hash());
  j["prev"] = to_hex(block.prev_hash);
  j["timestamp"] = block.timestamp;
  j["sentinel"] = to_hex(block.sentinel_address);
  json headers = json::array();
  for (const Hash32& h : block.whitelist_headers) headers.push_back(to_hex(h));
  j["headers"] = std::move(headers);
  j["nonce"] = block.nonce;
  j["target"] = to_hex(block.target);
  return j.dump();
}

std::string whitelist_to_jsonl(const WhitelistBlock& block) {
  json j;
  j["kind"] = "whitelist";
  j["hash"] = to_hex(block.header_hash());
  j["prev"] = to_hex(block.prev_hash);
  j["chain"] = to_hex(block.chain_id);
  j["sentinel"] = to_hex(block.sentinel_address);
  j["timestamp"] = block.timestamp;
  json sigs = json::array();
  for (const PacketSignature& s : block.signatures) sigs.push_back(to_hex(s.digest));
  j["signatures"] = std::move(sigs);
  return j.dump();
}

bool jsonl_is_control(const std::string& line) {
  json j = json::parse(line);
  return j.at("kind").get<std::string>() == "control";
}

ControlBlock control_from_jsonl(const std::string& line) {
  json j = json::parse(line);
  if (j.at("kind").get<std::string>() != "control")
    throw std::invalid_argument("not a control block line");
  ControlBlock b;
  b.prev_hash = hash_from_hex(j.at("prev").get<std::string>());
  b.timestamp = j.at("timestamp").get<double>();
  b.sentinel_address = hash_from_hex(j.at("sentinel").get<std::string>());
  for (const auto& h : j.at("headers"))
    b.whitelist_headers.push_back(hash_from_hex(h.get<std::string>()));
  b.nonce = j.at("nonce").get<uint64_t>();
  b.target = hash_from_hex(j.at("target").get<std::string>());
  if (to_hex(b.control_hash()) != j.at("hash").get<std::string>())
    throw std::invalid_argument("control block hash mismatch");
  return b;
}

WhitelistBlock whitelist_from_jsonl(const std::string& line) {
  json j = json::parse(line);
  if (j.at("kind").get<std::string>() != "whitelist")
    throw std::invalid_argument("not a whitelist block line");
  WhitelistBlock b;
  b.prev_hash = hash_from_hex(j.at("prev").get<std::string>());
  b.chain_id = hash_from_hex(j.at("chain").get<std::string>());
  b.sentinel_address = hash_from_hex(j.at("sentinel").get<std::string>());
  b.timestamp = j.at("timestamp").get<double>();
  for (const auto& s : j.at("signatures"))
    b.signatures.push_back(PacketSignature{hash_from_hex(s.get<std::string>())});
  if (to_hex(b.header_hash()) != j.at("hash").get<std::string>())
    throw std::invalid_argument("whitelist block hash mismatch");
  return b;
}

void ChainStore::export_dir(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "control.jsonl");
    std::vector<std::pair<std::pair<uint64_t, Hash32>, const ControlBlock*>> rows;
    for (const auto& [hash, stored] : controls_)
      rows.push_back({{stored.height, hash}, &stored.block});
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, block] : rows) out << control_to_jsonl(*block) << '\n';
  }
  for (const auto& [chain, tips] : tips_) {
    if (tips.empty()) continue;
    std::ofstream out(dir / ("chain_" + hex_abbrev(chain, 8) + ".jsonl"));
    for (const Hash32& hash : chain_blocks(chain))
      out << whitelist_to_jsonl(whitelists_.at(hash).block) << '\n';
  }
}

std::vector<std::string> ChainStore::import_dir(const std::filesystem::path& dir,
                                                PowMode mode) {
  std::vector<std::string> errors;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  // Control chain first so device blocks can be anchored on arrival.
  std::stable_partition(files.begin(), files.end(), [](const auto& p) {
    return p.filename() == "control.jsonl";
  });

  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) {
      errors.push_back(file.string() + ": cannot open");
      continue;
    }
    std::string line;
    size_t lineno = 0;
    bool file_bad = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        if (jsonl_is_control(line)) {
          ControlBlock b = control_from_jsonl(line);
          if (!insert_control(b, mode).storable()) throw std::invalid_argument("rejected");
        } else {
          WhitelistBlock b = whitelist_from_jsonl(line);
          if (!insert_whitelist(b).storable()) throw std::invalid_argument("rejected");
        }
      } catch (const std::exception& e) {
        errors.push_back(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
        file_bad = true;
        break;
      }
    }
    if (file_bad) continue;
  }
  return errors;
}

void ChainStore::merge(const ChainStore& other, PowMode mode) {
  // Parent-first insertion: order by height.
  std::vector<std::pair<uint64_t, const ControlBlock*>> controls;
  for (const auto& [hash, stored] : other.controls_)
    controls.push_back({stored.height, &stored.block});
  std::sort(controls.begin(), controls.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [h, block] : controls) insert_control(*block, mode);

  std::vector<std::pair<uint64_t, const WhitelistBlock*>> blocks;
  for (const auto& [hash, stored] : other.whitelists_)
    blocks.push_back({stored.height, &stored.block});
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [h, block] : blocks) insert_whitelist(*block);
}

}  // namespace sentinet::ledger
