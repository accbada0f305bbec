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

#include "pihvc/registry/registry.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kPathTag = "pihvc/merkle-path";
constexpr std::string_view kDigestTag = "pihvc/ledger-digest";
constexpr std::string_view kSnapshotTag = "pihvc/registry";

}  // namespace

Digest LeafHash(const CrhParams& params, const PrimeDigest& commitment) {
  return CrhHashFields(params, crh_site::kLeaf, {NatToBytes(commitment.value)});
}

Digest NodeHash(const CrhParams& params, const Digest& left,
                const Digest& right) {
  return CrhHashFields(params, crh_site::kNode, {left.bytes, right.bytes});
}

Digest NullLeaf(const CrhParams& params) {
  return CrhHashFields(params, crh_site::kNullLeaf, {});
}

Bytes MerklePath::Serialize() const {
  std::vector<Bytes> items;
  for (const auto& [hash, is_right] : siblings) {
    items.push_back(FieldWriter("").Add(hash.bytes).AddBool(is_right).Finish());
  }
  return FieldWriter(kPathTag).AddU64(leaf_index).AddList(items).Finish();
}

absl::StatusOr<MerklePath> MerklePath::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kPathTag));
  MerklePath path;
  ASSIGN_OR_RETURN(path.leaf_index, r.NextU64());
  ASSIGN_OR_RETURN(std::vector<Bytes> items, r.NextList());
  RETURN_IF_ERROR(r.Done());
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(FieldReader f, FieldReader::Open(item, ""));
    Digest hash;
    ASSIGN_OR_RETURN(hash.bytes, f.Next());
    ASSIGN_OR_RETURN(bool is_right, f.NextBool());
    RETURN_IF_ERROR(f.Done());
    path.siblings.emplace_back(std::move(hash), is_right);
  }
  return path;
}

Bytes LedgerDigest::Serialize() const {
  return FieldWriter(kDigestTag).Add(root.bytes).AddU64(epoch).Finish();
}

absl::StatusOr<LedgerDigest> LedgerDigest::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kDigestTag));
  LedgerDigest d;
  ASSIGN_OR_RETURN(d.root.bytes, r.Next());
  ASSIGN_OR_RETURN(d.epoch, r.NextU64());
  RETURN_IF_ERROR(r.Done());
  return d;
}

MerkleRegistry::MerkleRegistry(const CrhParams& params, int height,
                               SlotReuse reuse)
    : params_(params), height_(height), reuse_(reuse) {
  null_hashes_.push_back(NullLeaf(params_));
  for (int level = 1; level <= height_; ++level) {
    null_hashes_.push_back(
        NodeHash(params_, null_hashes_.back(), null_hashes_.back()));
  }
}

absl::StatusOr<MerkleRegistry> MerkleRegistry::Create(const CrhParams& params,
                                                      int height,
                                                      SlotReuse reuse) {
  if (height < 1 || height > kMaxRegistryHeight) {
    return absl::InvalidArgumentError(
        absl::StrCat("registry: height must be in [1, ", kMaxRegistryHeight,
                     "], got ", height));
  }
  return MerkleRegistry(params, height, reuse);
}

const Digest& MerkleRegistry::Node(int level, uint64_t index) const {
  if (level == 0) {
    auto it = leaves_.find(index);
    return it == leaves_.end() ? null_hashes_[0] : it->second;
  }
  auto it = nodes_.find(Key(level, index));
  return it == nodes_.end() ? null_hashes_[level] : it->second;
}

const Digest& MerkleRegistry::root() const { return Node(height_, 0); }

void MerkleRegistry::Recompute(std::set<uint64_t> dirty) {
  for (int level = 1; level <= height_; ++level) {
    std::set<uint64_t> parents;
    for (uint64_t i : dirty) parents.insert(i >> 1);
    for (uint64_t p : parents) {
      Digest h = NodeHash(params_, Node(level - 1, 2 * p), Node(level - 1, 2 * p + 1));
      ++node_hash_count_;
      if (h == null_hashes_[level]) {
        nodes_.erase(Key(level, p));
      } else {
        nodes_[Key(level, p)] = std::move(h);
      }
    }
    dirty = std::move(parents);
  }
}

absl::StatusOr<std::vector<uint64_t>> MerkleRegistry::NextSlots(
    size_t count) const {
  std::vector<uint64_t> slots;
  if (reuse_ == SlotReuse::kLowestFree) {
    for (auto it = holes_.begin(); it != holes_.end() && slots.size() < count;
         ++it) {
      slots.push_back(*it);
    }
  }
  uint64_t next = next_unused_;
  while (slots.size() < count) {
    if (next >= capacity()) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "registry: full (capacity ", capacity(), ", requested ", count, ")"));
    }
    slots.push_back(next++);
  }
  return slots;
}

absl::StatusOr<std::vector<uint64_t>> MerkleRegistry::InsertLeafHashes(
    const std::vector<Digest>& leaves) {
  if (leaves.empty()) {
    return absl::InvalidArgumentError("registry: empty batch");
  }
  for (const Digest& leaf : leaves) {
    if (leaf.bytes.size() != params_.digest_bits / 8) {
      return absl::InvalidArgumentError("registry: leaf has wrong width");
    }
  }
  ASSIGN_OR_RETURN(std::vector<uint64_t> slots, NextSlots(leaves.size()));
  for (size_t i = 0; i < slots.size(); ++i) {
    leaves_[slots[i]] = leaves[i];
    holes_.erase(slots[i]);
    if (slots[i] >= next_unused_) next_unused_ = slots[i] + 1;
  }
  Recompute(std::set<uint64_t>(slots.begin(), slots.end()));
  ++epoch_;
  return slots;
}

absl::StatusOr<std::pair<Digest, std::vector<MerklePath>>>
MerkleRegistry::InsertBatch(const std::vector<PrimeDigest>& commitments) {
  std::vector<Digest> leaves;
  leaves.reserve(commitments.size());
  for (const PrimeDigest& c : commitments) leaves.push_back(LeafHash(params_, c));
  ASSIGN_OR_RETURN(std::vector<uint64_t> slots, InsertLeafHashes(leaves));
  std::vector<MerklePath> paths;
  for (uint64_t slot : slots) {
    ASSIGN_OR_RETURN(MerklePath path, ProveLeaf(slot));
    paths.push_back(std::move(path));
  }
  return std::make_pair(root(), std::move(paths));
}

absl::StatusOr<Digest> MerkleRegistry::DeleteLeaf(uint64_t index) {
  if (index >= capacity()) {
    return absl::OutOfRangeError(absl::StrCat("registry: index ", index,
                                              " out of range"));
  }
  if (leaves_.erase(index) == 0) {
    return absl::NotFoundError(absl::StrCat("registry: slot ", index,
                                            " is empty"));
  }
  holes_.insert(index);
  Recompute({index});
  ++epoch_;
  return root();
}

absl::StatusOr<MerklePath> MerkleRegistry::ProveLeaf(uint64_t index) const {
  if (index >= capacity()) {
    return absl::OutOfRangeError(absl::StrCat("registry: index ", index,
                                              " out of range"));
  }
  if (!leaves_.contains(index)) {
    return absl::NotFoundError(absl::StrCat("registry: slot ", index,
                                            " is empty"));
  }
  MerklePath path;
  path.leaf_index = index;
  uint64_t i = index;
  for (int level = 0; level < height_; ++level) {
    bool is_right = (i & 1) == 0;
    path.siblings.emplace_back(Node(level, i ^ 1), is_right);
    i >>= 1;
  }
  return path;
}

Bytes MerkleRegistry::SerializeSnapshot() const {
  std::vector<Bytes> items;
  for (const auto& [index, leaf] : leaves_) {
    items.push_back(FieldWriter("").AddU64(index).Add(leaf.bytes).Finish());
  }
  return FieldWriter(kSnapshotTag)
      .AddU32(static_cast<uint32_t>(height_))
      .AddU64(epoch_)
      .AddU32(reuse_ == SlotReuse::kNever ? 0 : 1)
      .AddU64(next_unused_)
      .AddList(items)
      .Finish();
}

absl::StatusOr<MerkleRegistry> MerkleRegistry::DeserializeSnapshot(
    const CrhParams& params, ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kSnapshotTag));
  ASSIGN_OR_RETURN(uint32_t height, r.NextU32());
  ASSIGN_OR_RETURN(uint64_t epoch, r.NextU64());
  ASSIGN_OR_RETURN(uint32_t reuse, r.NextU32());
  ASSIGN_OR_RETURN(uint64_t next_unused, r.NextU64());
  ASSIGN_OR_RETURN(std::vector<Bytes> items, r.NextList());
  RETURN_IF_ERROR(r.Done());
  if (reuse > 1) return absl::InvalidArgumentError("registry: bad reuse flag");
  ASSIGN_OR_RETURN(
      MerkleRegistry reg,
      Create(params, static_cast<int>(height),
             reuse == 0 ? SlotReuse::kNever : SlotReuse::kLowestFree));
  if (next_unused > reg.capacity()) {
    return absl::InvalidArgumentError("registry: next slot beyond capacity");
  }
  std::set<uint64_t> dirty;
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(FieldReader f, FieldReader::Open(item, ""));
    ASSIGN_OR_RETURN(uint64_t index, f.NextU64());
    Digest leaf;
    ASSIGN_OR_RETURN(leaf.bytes, f.Next());
    RETURN_IF_ERROR(f.Done());
    if (index >= next_unused || leaf.bytes.size() != params.digest_bits / 8) {
      return absl::InvalidArgumentError("registry: bad leaf entry");
    }
    if (!dirty.empty() && index <= *dirty.rbegin()) {
      return absl::InvalidArgumentError("registry: leaves not sorted");
    }
    reg.leaves_[index] = std::move(leaf);
    dirty.insert(index);
  }
  reg.next_unused_ = next_unused;
  for (uint64_t i = 0; i < next_unused; ++i) {
    if (!reg.leaves_.contains(i)) reg.holes_.insert(i);
  }
  if (!dirty.empty()) reg.Recompute(std::move(dirty));
  reg.epoch_ = epoch;
  return reg;
}

bool VerifyLeaf(const CrhParams& params, const Digest& root,
                const Digest& leaf_hash, const MerklePath& path, int height) {
  if (height < 1 || height > kMaxRegistryHeight) return false;
  if (path.siblings.size() != static_cast<size_t>(height)) return false;
  if (path.leaf_index >> height != 0) return false;
  Digest acc = leaf_hash;
  for (int level = 0; level < height; ++level) {
    const auto& [sibling, is_right] = path.siblings[level];
    bool expect_right = ((path.leaf_index >> level) & 1) == 0;
    if (is_right != expect_right) return false;
    acc = is_right ? NodeHash(params, acc, sibling)
                   : NodeHash(params, sibling, acc);
  }
  return acc == root;
}

}  // namespace pihvc
