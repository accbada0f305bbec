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

#include <chrono>
#include <map>

#include "gtest/gtest.h"
#include "oracle.h"
#include "pihvc/crypto/commitment.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/random.h"

namespace pihvc {
namespace {

const CrhParams& Crh() {
  static const CrhParams* crh = new CrhParams(*CrhSetup(128));
  return *crh;
}

PrimeDigest Commitment(int i) {
  return *HashToPrime(Crh(), AsBytes("commitment-" + std::to_string(i)));
}

std::map<uint64_t, oracle::Buf> OracleLeaves(const MerkleRegistry& reg) {
  std::map<uint64_t, oracle::Buf> out;
  for (const auto& [index, leaf] : reg.leaves()) out[index] = leaf.bytes;
  return out;
}

TEST(RegistryTest, EmptyRootsFollowNullLadder) {
  auto reg = MerkleRegistry::Create(Crh(), 2);
  ASSERT_TRUE(reg.ok());
  oracle::Buf n0 = oracle::SiteHash("null-leaf", {});
  oracle::Buf n1 = oracle::SiteHash("node", {n0, n0});
  EXPECT_EQ(reg->root().bytes, oracle::SiteHash("node", {n1, n1}));
  EXPECT_EQ(reg->root(), reg->null_hash(2));

  auto tall = MerkleRegistry::Create(Crh(), 28);
  ASSERT_TRUE(tall.ok());
  EXPECT_EQ(tall->root().bytes, oracle::SparseMerkleRoot(28, {}));
  EXPECT_EQ(tall->capacity(), uint64_t{1} << 28);

  EXPECT_FALSE(MerkleRegistry::Create(Crh(), 0).ok());
  EXPECT_FALSE(MerkleRegistry::Create(Crh(), 33).ok());
}

TEST(RegistryTest, LeafHashUsesItsOwnDomain) {
  PrimeDigest c = Commitment(0);
  EXPECT_EQ(LeafHash(Crh(), c).bytes,
            oracle::SiteHash("leaf", {oracle::FromInt(c.value)}));
  EXPECT_NE(LeafHash(Crh(), c).bytes,
            oracle::SiteHash("node", {oracle::FromInt(c.value)}));
}

TEST(RegistryTest, InsertAndCapacity) {
  auto reg = *MerkleRegistry::Create(Crh(), 2);
  auto one = reg.InsertBatch({Commitment(0)});
  ASSERT_TRUE(one.ok());
  ASSERT_EQ(one->second.size(), 1u);
  EXPECT_EQ(one->second[0].siblings.size(), 2u);
  EXPECT_TRUE(VerifyLeaf(Crh(), one->first, LeafHash(Crh(), Commitment(0)),
                         one->second[0], 2));
  EXPECT_EQ(reg.epoch(), 1u);
  ASSERT_TRUE(reg.InsertBatch({Commitment(1), Commitment(2), Commitment(3)}).ok());
  EXPECT_EQ(reg.epoch(), 2u);
  auto full = reg.InsertBatch({Commitment(4)});
  EXPECT_EQ(full.status().code(), absl::StatusCode::kResourceExhausted);
  EXPECT_EQ(reg.epoch(), 2u);
  EXPECT_FALSE(reg.InsertBatch({}).ok());
}

TEST(RegistryTest, DeleteRestoresRoots) {
  auto reg = *MerkleRegistry::Create(Crh(), 4, SlotReuse::kLowestFree);
  Digest empty = reg.root();
  ASSERT_TRUE(reg.InsertBatch({Commitment(0)}).ok());
  auto after = reg.DeleteLeaf(0);
  ASSERT_TRUE(after.ok());
  EXPECT_EQ(*after, empty);

  ASSERT_TRUE(reg.InsertBatch({Commitment(1), Commitment(2)}).ok());
  Digest both = reg.root();
  uint64_t slot_of_x = 0;  // lowest free slot was reused
  ASSERT_TRUE(reg.DeleteLeaf(slot_of_x).ok());
  EXPECT_NE(reg.root(), both);
  auto again = reg.InsertBatch({Commitment(1)});
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->second[0].leaf_index, slot_of_x);
  EXPECT_EQ(reg.root(), both);

  EXPECT_EQ(reg.DeleteLeaf(9).status().code(), absl::StatusCode::kNotFound);
  EXPECT_EQ(reg.DeleteLeaf(16).status().code(), absl::StatusCode::kOutOfRange);
}

TEST(RegistryTest, NeverReusePolicyLeavesHoles) {
  auto reg = *MerkleRegistry::Create(Crh(), 3);
  ASSERT_TRUE(reg.InsertBatch({Commitment(0), Commitment(1)}).ok());
  ASSERT_TRUE(reg.DeleteLeaf(0).ok());
  auto next = reg.InsertBatch({Commitment(2)});
  ASSERT_TRUE(next.ok());
  EXPECT_EQ(next->second[0].leaf_index, 2u);
  EXPECT_FALSE(reg.ProveLeaf(0).ok());
}

TEST(RegistryTest, DeleteRecomputesExactlyHeightNodes) {
  for (int height : {1, 4, 10, 28}) {
    auto reg = *MerkleRegistry::Create(Crh(), height);
    std::vector<PrimeDigest> batch;
    for (int i = 0; i < std::min(height, 2) + 1 && i < (1 << height); ++i) {
      batch.push_back(Commitment(i));
    }
    ASSERT_TRUE(reg.InsertBatch(batch).ok());
    uint64_t before = reg.node_hash_count();
    ASSERT_TRUE(reg.DeleteLeaf(0).ok());
    EXPECT_EQ(reg.node_hash_count() - before, static_cast<uint64_t>(height));
  }
}

TEST(RegistryTest, PathsBindRootAndPosition) {
  auto reg = *MerkleRegistry::Create(Crh(), 3);
  ASSERT_TRUE(reg.InsertBatch({Commitment(0), Commitment(1)}).ok());
  Digest leaf = LeafHash(Crh(), Commitment(1));
  MerklePath path = *reg.ProveLeaf(1);
  Digest old_root = reg.root();
  EXPECT_TRUE(VerifyLeaf(Crh(), old_root, leaf, path, 3));

  MerklePath flipped = path;
  flipped.siblings[1].first.bytes[0] ^= 1;
  EXPECT_FALSE(VerifyLeaf(Crh(), old_root, leaf, flipped, 3));
  MerklePath shorter = path;
  shorter.siblings.pop_back();
  EXPECT_FALSE(VerifyLeaf(Crh(), old_root, leaf, shorter, 3));
  EXPECT_FALSE(VerifyLeaf(Crh(), old_root, leaf, path, 4));

  ASSERT_TRUE(reg.InsertBatch({Commitment(2)}).ok());
  EXPECT_FALSE(VerifyLeaf(Crh(), reg.root(), leaf, path, 3));
  EXPECT_TRUE(VerifyLeaf(Crh(), reg.root(), leaf, *reg.ProveLeaf(1), 3));
  EXPECT_EQ(reg.ProveLeaf(8).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_EQ(reg.ProveLeaf(5).status().code(), absl::StatusCode::kNotFound);

  auto round = MerklePath::Deserialize(path.Serialize());
  ASSERT_TRUE(round.ok());
  EXPECT_EQ(*round, path);
}

TEST(RegistryTest, PathForOneLeafNeverVerifiesAnother) {
  for (int height = 1; height <= 4; ++height) {
    auto reg = *MerkleRegistry::Create(Crh(), height);
    int n = 1 << height;
    std::vector<PrimeDigest> batch;
    for (int i = 0; i < n; ++i) batch.push_back(Commitment(100 + i));
    ASSERT_TRUE(reg.InsertBatch(batch).ok());
    for (int i = 0; i < n; ++i) {
      MerklePath path = *reg.ProveLeaf(i);
      for (int j = 0; j < n; ++j) {
        Digest leaf_j = LeafHash(Crh(), batch[j]);
        EXPECT_EQ(VerifyLeaf(Crh(), reg.root(), leaf_j, path, height), i == j);
        MerklePath moved = path;
        moved.leaf_index = j;
        if (j != i) {
          EXPECT_FALSE(VerifyLeaf(Crh(), reg.root(), leaf_j, moved, height));
          EXPECT_FALSE(VerifyLeaf(Crh(), reg.root(), LeafHash(Crh(), batch[i]),
                                  moved, height));
        }
      }
    }
  }
}

TEST(RegistryTest, RandomOperationsMatchRebuildOracle) {
  for (SlotReuse reuse : {SlotReuse::kNever, SlotReuse::kLowestFree}) {
    SeededRandom rng(AsBytes("registry-fuzz"));
    auto reg = *MerkleRegistry::Create(Crh(), 10, reuse);
    int next_commitment = 0;
    for (int op = 0; op < 500; ++op) {
      bool insert = reg.size() == 0 || rng.UniformBelow(3) != 0;
      if (insert) {
        size_t n = rng.UniformBelow(4).get_ui() + 1;
        std::vector<PrimeDigest> batch;
        for (size_t i = 0; i < n; ++i) batch.push_back(Commitment(next_commitment++));
        auto res = reg.InsertBatch(batch);
        ASSERT_TRUE(res.ok()) << res.status();
        for (const MerklePath& p : res->second) {
          EXPECT_TRUE(VerifyLeaf(Crh(), res->first, reg.leaves().at(p.leaf_index),
                                 p, 10));
        }
      } else {
        auto it = reg.leaves().begin();
        std::advance(it, rng.UniformBelow(reg.size()).get_ui());
        uint64_t before = reg.node_hash_count();
        ASSERT_TRUE(reg.DeleteLeaf(it->first).ok());
        EXPECT_EQ(reg.node_hash_count() - before, 10u);
      }
      ASSERT_EQ(reg.root().bytes, oracle::MerkleRoot(10, OracleLeaves(reg)))
          << "op " << op;
    }
    EXPECT_EQ(reg.epoch(), 500u);
  }
}

TEST(RegistryTest, TallTreeBatchOf64) {
  auto start = std::chrono::steady_clock::now();
  auto reg = *MerkleRegistry::Create(Crh(), 28);
  Digest empty = reg.root();
  std::vector<PrimeDigest> batch;
  for (int i = 0; i < 64; ++i) batch.push_back(Commitment(1000 + i));
  auto res = reg.InsertBatch(batch);
  ASSERT_TRUE(res.ok());
  EXPECT_NE(res->first, empty);
  ASSERT_EQ(res->second.size(), 64u);
  for (size_t i = 0; i < 64; ++i) {
    EXPECT_TRUE(VerifyLeaf(Crh(), res->first, LeafHash(Crh(), batch[i]),
                           res->second[i], 28));
  }
  EXPECT_EQ(res->first.bytes, oracle::SparseMerkleRoot(28, OracleLeaves(reg)));
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 5.0);
}

TEST(RegistryTest, SnapshotRoundTripAndPrivacy) {
  std::vector<std::string> corpus = {"alice-liddell", "1987-03-14",
                                     "wonderland-nl", "passport-x9172"};
  auto reg = *MerkleRegistry::Create(Crh(), 6, SlotReuse::kLowestFree);
  Predicate pred = *Predicate::Parse(Predicate::Kind::kBirth, "name!=nobody");
  SeededRandom rng(AsBytes("registry-privacy"));
  std::vector<PrimeDigest> values;
  for (int i = 0; i < 8; ++i) {
    Attributes attrs = *Attributes::Create({{"name", ToBytes(corpus[0])},
                                            {"born", ToBytes(corpus[1])},
                                            {"region", ToBytes(corpus[2])},
                                            {"doc", ToBytes(corpus[3])}});
    auto c = Commit(Crh(), attrs, pred, rng.RandomBytes(32));
    ASSERT_TRUE(c.ok());
    values.push_back(c->value);
  }
  ASSERT_TRUE(reg.InsertBatch(values).ok());
  ASSERT_TRUE(reg.DeleteLeaf(3).ok());
  Bytes snap = reg.SerializeSnapshot();
  for (const std::string& s : corpus) {
    EXPECT_FALSE(ContainsSubsequence(snap, AsBytes(s))) << s;
  }
  for (const std::string& name : {"name", "born", "region"}) {
    EXPECT_FALSE(ContainsSubsequence(snap, AsBytes(name))) << name;
  }

  auto back = MerkleRegistry::DeserializeSnapshot(Crh(), snap);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->root(), reg.root());
  EXPECT_EQ(back->epoch(), reg.epoch());
  EXPECT_EQ(back->SerializeSnapshot(), snap);
  EXPECT_EQ(*back->NextSlots(2), *reg.NextSlots(2));
  Bytes cut(snap.begin(), snap.end() - 1);
  EXPECT_FALSE(MerkleRegistry::DeserializeSnapshot(Crh(), cut).ok());
}

TEST(RegistryTest, LedgerDigestRoundTrip) {
  auto reg = *MerkleRegistry::Create(Crh(), 5);
  ASSERT_TRUE(reg.InsertBatch({Commitment(7)}).ok());
  LedgerDigest d = reg.digest();
  EXPECT_EQ(d.epoch, 1u);
  auto back = LedgerDigest::Deserialize(d.Serialize());
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, d);
}

}  // namespace
}  // namespace pihvc
