// Copyright 2026 The pihvc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIHVC_REGISTRY_REGISTRY_H_
#define PIHVC_REGISTRY_REGISTRY_H_

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

// leaf = H("leaf", [value bytes]); node = H("node", [left, right]); the empty
// leaf is H("null-leaf", []).
Digest LeafHash(const CrhParams& params, const PrimeDigest& commitment);
Digest NodeHash(const CrhParams& params, const Digest& left,
                const Digest& right);
Digest NullLeaf(const CrhParams& params);

struct MerklePath {
  uint64_t leaf_index = 0;
  // Bottom-up. `is_right` tells whether the sibling sits to the right.
  std::vector<std::pair<Digest, bool>> siblings;

  Bytes Serialize() const;
  static absl::StatusOr<MerklePath> Deserialize(ByteView data);
  bool operator==(const MerklePath&) const = default;
};

struct LedgerDigest {
  Digest root;
  uint64_t epoch = 0;

  Bytes Serialize() const;
  static absl::StatusOr<LedgerDigest> Deserialize(ByteView data);
  bool operator==(const LedgerDigest&) const = default;
};

// Whether deleted slots may take later inserts.
enum class SlotReuse { kNever, kLowestFree };

inline constexpr int kMaxRegistryHeight = 32;

// Sparse Merkle tree of fixed height. Only non-empty subtrees are stored;
// empty ones are represented by a precomputed ladder of null hashes.
class MerkleRegistry {
 public:
  static absl::StatusOr<MerkleRegistry> Create(
      const CrhParams& params, int height,
      SlotReuse reuse = SlotReuse::kNever);

  int height() const { return height_; }
  uint64_t epoch() const { return epoch_; }
  uint64_t capacity() const { return uint64_t{1} << height_; }
  size_t size() const { return leaves_.size(); }
  SlotReuse reuse() const { return reuse_; }
  const Digest& root() const;
  LedgerDigest digest() const { return {root(), epoch_}; }
  const Digest& null_hash(int level) const { return null_hashes_[level]; }
  const std::map<uint64_t, Digest>& leaves() const { return leaves_; }

  // Node hash evaluations performed so far (instrumentation).
  uint64_t node_hash_count() const { return node_hash_count_; }

  // Fills the next free slots with LeafHash of each commitment. Returns the
  // new root and one path per inserted leaf. One epoch step per batch.
  absl::StatusOr<std::pair<Digest, std::vector<MerklePath>>> InsertBatch(
      const std::vector<PrimeDigest>& commitments);
  // Same, for precomputed leaf hashes; returns the slots used.
  absl::StatusOr<std::vector<uint64_t>> InsertLeafHashes(
      const std::vector<Digest>& leaves);
  // Slots the next InsertLeafHashes call of `count` leaves would use.
  absl::StatusOr<std::vector<uint64_t>> NextSlots(size_t count) const;

  // Resets the slot to the null leaf, recomputing `height` nodes.
  absl::StatusOr<Digest> DeleteLeaf(uint64_t index);

  absl::StatusOr<MerklePath> ProveLeaf(uint64_t index) const;

  // (height, epoch, reuse, next never-used slot, sorted (index, leaf)).
  Bytes SerializeSnapshot() const;
  static absl::StatusOr<MerkleRegistry> DeserializeSnapshot(
      const CrhParams& params, ByteView data);

 private:
  MerkleRegistry(const CrhParams& params, int height, SlotReuse reuse);
  const Digest& Node(int level, uint64_t index) const;
  void Recompute(std::set<uint64_t> dirty);
  static uint64_t Key(int level, uint64_t index) {
    return (static_cast<uint64_t>(level) << 56) | index;
  }

  CrhParams params_;
  int height_;
  SlotReuse reuse_;
  uint64_t epoch_ = 0;
  uint64_t next_unused_ = 0;
  std::set<uint64_t> holes_;
  std::map<uint64_t, Digest> leaves_;
  // Internal nodes (levels 1..height) that differ from the null ladder.
  std::unordered_map<uint64_t, Digest> nodes_;
  std::vector<Digest> null_hashes_;
  uint64_t node_hash_count_ = 0;
};

// Folds leaf_hash through the path. The path must have exactly `height`
// siblings and its side bits must match leaf_index.
bool VerifyLeaf(const CrhParams& params, const Digest& root,
                const Digest& leaf_hash, const MerklePath& path, int height);

}  // namespace pihvc

#endif  // PIHVC_REGISTRY_REGISTRY_H_
