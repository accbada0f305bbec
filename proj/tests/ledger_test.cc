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

#include "pihvc/ledger/ledger.h"

#include <chrono>

#include "gtest/gtest.h"
#include "oracle.h"
#include "pihvc/ledger/issuance.h"
#include "pihvc/util/strings.h"

namespace pihvc {
namespace {

const std::vector<std::string> kIssuers = {
    "did:web:birth-registry.example.nl",
    "did:ion:municipal-office-utrecht",
    "did:ethr:0xb9c5714089478a327f09197987f16f9e5d936e8a",
};

Did IssuerDid(const std::string& id) { return *Did::Create(id, Role::kIssuer); }
Did Holder(int i = 0) {
  return *Did::Create("did:example:holder-" + std::to_string(i), Role::kHolder);
}
Attributes Adult() { return *Attributes::Parse("age=30,name=alice-liddell"); }
Predicate Birth() { return *Predicate::Parse(Predicate::Kind::kBirth, "age>=18"); }

struct Deployment {
  PublicParams pp;
  KeyPair keys;
  IssuerSetState set;
  MerkleRegistry registry;
  Ledger ledger;

  static Deployment Make(std::string_view seed, int height = 10,
                         SlotReuse reuse = SlotReuse::kNever) {
    SeededRandom rng(AsBytes(seed));
    PublicParams pp = *pihvc::Setup(128, {}, rng);
    KeyPair keys = *Keygen(pp);
    IssuerSetState set = *CreateIssuerSet(pp, kIssuers, rng);
    return {pp, keys, set, *MerkleRegistry::Create(pp.crh, height, reuse),
            *Ledger::Genesis(pp, height, reuse, set.acc())};
  }

  absl::StatusOr<IssuanceResult> Issue(std::vector<std::string> ids,
                                       RandomSource& rng, int holder = 0,
                                       const Attributes& attrs = Adult()) {
    std::vector<Did> issuers;
    for (const std::string& id : ids) issuers.push_back(IssuerDid(id));
    return IssueVc(pp, keys.sk, set, issuers, Holder(holder), attrs, Birth(),
                   registry, ledger, rng);
  }
};

TEST(LedgerTest, GenesisState) {
  Deployment d = Deployment::Make("genesis");
  EXPECT_EQ(d.ledger.log().size(), 1u);
  EXPECT_EQ(d.ledger.head_digest().epoch, 0u);
  EXPECT_EQ(d.ledger.head_digest().root, d.registry.root());
  EXPECT_EQ(d.ledger.issuer_acc(), d.set.acc());
  EXPECT_EQ(d.ledger.vk(), d.keys.vk);
  EXPECT_FALSE(Ledger::Genesis(d.pp, 10, SlotReuse::kNever, 0).ok());
  EXPECT_FALSE(Ledger::Genesis(d.pp, 0, SlotReuse::kNever, d.set.acc()).ok());
}

TEST(LedgerTest, AppendIssuance) {
  Deployment d = Deployment::Make("append");
  SeededRandom rng(AsBytes("append-flow"));
  auto r = d.Issue({kIssuers[0]}, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(d.ledger.log().size(), 2u);
  EXPECT_EQ(d.ledger.head_digest().root, d.registry.root());
  EXPECT_EQ(d.ledger.head_digest().epoch, 1u);
  EXPECT_TRUE(VerifyVcOnLedger(d.ledger, r->record));
  EXPECT_TRUE(VerifyVc(d.pp, r->record, d.ledger.issuer_acc(),
                       d.ledger.head_digest().root, 10, d.keys.vk));
}

TEST(LedgerTest, StaleDigestRejectedStateUnchanged) {
  Deployment d = Deployment::Make("stale");
  SeededRandom rng(AsBytes("stale-flow"));
  auto first = *d.Issue({kIssuers[0]}, rng);
  ASSERT_TRUE(d.Issue({kIssuers[1]}, rng).ok());
  std::string before = d.ledger.Persist();
  LedgerDigest head = d.ledger.head_digest();
  // Re-appending an old record: wrong predecessor and stale digest.
  EXPECT_EQ(d.ledger.Append(first.tx).code(),
            absl::StatusCode::kFailedPrecondition);
  // Right predecessor, stale digest.
  Transaction tx = first.tx;
  tx.prev_record_hash = d.ledger.head_record_hash();
  EXPECT_FALSE(d.ledger.Append(tx).ok());
  tx.resulting_digest.epoch = head.epoch + 1;
  EXPECT_FALSE(d.ledger.Append(tx).ok());
  EXPECT_EQ(d.ledger.Persist(), before);
  EXPECT_EQ(d.ledger.head_digest(), head);
}

TEST(LedgerTest, FailingQualificationProofRejected) {
  Deployment d = Deployment::Make("bad-proof");
  SeededRandom rng(AsBytes("bad-proof-flow"));
  auto r = *d.Issue({kIssuers[0]}, rng);
  Deployment fresh = Deployment::Make("bad-proof");
  auto tx = *fresh.ledger.MakeIssueTx(r.tx.commitment_hashes, r.tx.qual_proofs);
  EXPECT_TRUE(fresh.ledger.Validate(tx).ok());
  Bytes& m = tx.qual_proofs[0].bundle.proof.membership_part;
  m[m.size() / 3] ^= 0x10;
  EXPECT_FALSE(fresh.ledger.Validate(tx).ok());
  EXPECT_FALSE(fresh.ledger.Append(tx).ok());
  EXPECT_EQ(fresh.ledger.log().size(), 1u);
  // A commitment no proof covers.
  auto uncovered = *fresh.ledger.MakeIssueTx(r.tx.commitment_hashes, {});
  EXPECT_FALSE(fresh.ledger.Validate(uncovered).ok());
  // A proof bound to another commitment.
  Digest other = r.tx.commitment_hashes[0];
  other.bytes[0] ^= 1;
  auto moved = *fresh.ledger.MakeIssueTx({other}, r.tx.qual_proofs);
  EXPECT_FALSE(fresh.ledger.Validate(moved).ok());
}

TEST(LedgerTest, ReorderedCommitmentsRejected) {
  Deployment d = Deployment::Make("reorder");
  SeededRandom rng(AsBytes("reorder-flow"));
  // Two credentials in one transaction, built by hand.
  auto a = *d.Issue({kIssuers[0]}, rng, 1);
  auto b = *d.Issue({kIssuers[1]}, rng, 2);
  Deployment e = Deployment::Make("reorder");
  std::vector<QualEntry> quals = {{0, a.record.bundles[0]},
                                  {1, b.record.bundles[0]}};
  Digest la = a.tx.commitment_hashes[0], lb = b.tx.commitment_hashes[0];
  auto tx = *e.ledger.MakeIssueTx({la, lb}, quals);
  EXPECT_TRUE(e.ledger.Validate(tx).ok());
  Transaction swapped = tx;
  std::swap(swapped.commitment_hashes[0], swapped.commitment_hashes[1]);
  std::swap(swapped.qual_proofs[0].commitment_index,
            swapped.qual_proofs[1].commitment_index);
  EXPECT_FALSE(e.ledger.Validate(swapped).ok());
  EXPECT_TRUE(e.ledger.Append(tx).ok());
}

TEST(LedgerTest, SwapChainBinding) {
  Deployment d = Deployment::Make("swap-chain");
  SeededRandom rng(AsBytes("swap-chain-flow"));
  auto upd = UpdateIssuerSet(d.pp, d.set, {kIssuers[2]}, {}, rng);
  ASSERT_TRUE(upd.ok());
  auto tx = *d.ledger.MakeIssuerUpdateTx({upd->statement, upd->proof});
  EXPECT_TRUE(d.ledger.Validate(tx).ok());
  // A swap that starts from another accumulator.
  IssuerSetState other = *CreateIssuerSet(d.pp, kIssuers, rng);
  auto wrong = *UpdateIssuerSet(d.pp, other, {kIssuers[2]}, {}, rng);
  auto bad = *d.ledger.MakeIssuerUpdateTx({wrong.statement, wrong.proof});
  EXPECT_FALSE(d.ledger.Validate(bad).ok());
  // A recorded accumulator that is not the swap result.
  Transaction off = tx;
  off.issuer_acc = d.set.acc();
  EXPECT_FALSE(d.ledger.Validate(off).ok());
  // A tampered proof.
  Transaction forged = tx;
  forged.swap->statement.acc_after =
      forged.swap->statement.acc_after * d.pp.rsa.g % d.pp.rsa.N;
  forged.issuer_acc = forged.swap->statement.acc_after;
  EXPECT_FALSE(d.ledger.Validate(forged).ok());
  ASSERT_TRUE(d.ledger.Append(tx).ok());
  EXPECT_EQ(d.ledger.issuer_acc_history().size(), 2u);
  EXPECT_EQ(d.ledger.issuer_acc(), upd->next.acc());
}

TEST(LedgerTest, PersistReplayRoundTrip) {
  Deployment d = Deployment::Make("persist");
  SeededRandom rng(AsBytes("persist-flow"));
  ASSERT_TRUE(d.Issue({kIssuers[0]}, rng).ok());
  ASSERT_TRUE(d.Issue({kIssuers[0], kIssuers[1]}, rng).ok());
  std::string file = d.ledger.Persist();
  for (ReplayMode mode : {ReplayMode::kVerifyAll, ReplayMode::kStructure}) {
    auto replayed = Ledger::Replay(file, mode);
    ASSERT_TRUE(replayed.ok()) << replayed.status();
    ASSERT_TRUE(replayed->has_value());
    EXPECT_EQ((*replayed)->head_digest(), d.ledger.head_digest());
    EXPECT_EQ((*replayed)->Persist(), file);
    EXPECT_EQ((*replayed)->issuer_acc(), d.ledger.issuer_acc());
  }
  auto empty = Ledger::Replay("");
  ASSERT_TRUE(empty.ok());
  EXPECT_FALSE(empty->has_value());
}

TEST(LedgerTest, CorruptionReportsRecordIndex) {
  Deployment d = Deployment::Make("corrupt");
  SeededRandom rng(AsBytes("corrupt-flow"));
  for (int i = 0; i < 5; ++i) ASSERT_TRUE(d.Issue({kIssuers[i % 3]}, rng, i).ok());
  std::string file = d.ledger.Persist();
  std::vector<size_t> starts = {0};
  for (size_t i = 0; i < file.size(); ++i) {
    if (file[i] == '\n' && i + 1 < file.size()) starts.push_back(i + 1);
  }
  ASSERT_EQ(starts.size(), 6u);
  SeededRandom pick(AsBytes("corrupt-positions"));
  for (int trial = 0; trial < 60; ++trial) {
    size_t pos = pick.UniformBelow(file.size()).get_ui();
    size_t k = std::upper_bound(starts.begin(), starts.end(), pos) -
               starts.begin() - 1;
    std::string bad = file;
    char replacement = bad[pos] == '0' ? '1' : '0';
    if (bad[pos] == '\n' || bad[pos] == ' ') replacement = 'a';
    bad[pos] = replacement;
    auto r = Ledger::Replay(bad);
    ASSERT_FALSE(r.ok()) << "pos " << pos;
    EXPECT_EQ(r.status().code(), absl::StatusCode::kDataLoss);
    EXPECT_NE(std::string(r.status().message())
                  .find("record " + std::to_string(k) + ":"),
              std::string::npos)
        << r.status() << " expected record " << k;
  }
  // Uppercase hex is rejected, not normalised.
  std::string upper = file;
  size_t letter = upper.find_first_of("abcdef", starts[3]);
  upper[letter] = static_cast<char>(upper[letter] - 'a' + 'A');
  EXPECT_NE(std::string(Ledger::Replay(upper).status().message()).find("record 3:"),
            std::string::npos);
  // A stray newline inside record 2 is reported there, not skipped.
  std::string split = file;
  split[starts[2] + 10] = '\n';
  EXPECT_NE(std::string(Ledger::Replay(split).status().message()).find("record 2:"),
            std::string::npos);
  std::string blank = file;
  blank.insert(starts[4], "\n");
  EXPECT_NE(std::string(Ledger::Replay(blank).status().message()).find("record 4:"),
            std::string::npos);
  // Truncation.
  EXPECT_EQ(Ledger::Replay(file.substr(0, file.size() - 5)).status().code(),
            absl::StatusCode::kDataLoss);
  // A dropped record breaks the chain at the next one.
  std::string dropped = file.substr(0, starts[2]) + file.substr(starts[3]);
  EXPECT_NE(std::string(Ledger::Replay(dropped).status().message()).find("record 2:"),
            std::string::npos);
}

TEST(LedgerTest, ThousandRecordLog) {
  auto start = std::chrono::steady_clock::now();
  Deployment d = Deployment::Make("thousand", 12, SlotReuse::kLowestFree);
  SeededRandom rng(AsBytes("thousand-flow"));
  std::vector<IssuanceResult> live;
  while (d.ledger.log().size() < 1000) {
    size_t n = d.ledger.log().size();
    if (n % 50 == 0 && n % 100 != 0) {
      std::string id = "did:web:rotating-" + std::to_string(n);
      auto next = UpdateIssuers(d.pp, d.set, {}, {id}, d.ledger, rng);
      ASSERT_TRUE(next.ok()) << next.status();
      d.set = *next;
      live.clear();  // older proofs are bound to the previous accumulator
    } else if (n % 7 == 0 && !live.empty()) {
      Predicate death = *Predicate::Parse(Predicate::Kind::kDeath, "age>=0");
      IssuanceResult victim = live.back();
      live.pop_back();
      ASSERT_TRUE(RevokeVc(d.pp, victim.record, victim.opening, death,
                           d.registry, d.ledger)
                      .ok());
    } else {
      auto r = d.Issue({kIssuers[n % 3]}, rng, static_cast<int>(n));
      ASSERT_TRUE(r.ok()) << r.status();
      live.push_back(std::move(*r));
    }
  }
  std::string file = d.ledger.Persist();
  auto replayed = Ledger::Replay(file);
  ASSERT_TRUE(replayed.ok()) << replayed.status();
  EXPECT_EQ((*replayed)->log().size(), 1000u);
  EXPECT_EQ((*replayed)->head_digest(), d.ledger.head_digest());
  EXPECT_EQ((*replayed)->Persist(), file);
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  EXPECT_LT(seconds, 30.0);
}

TEST(IssuanceTest, PredicateGateRunsBeforeMutation) {
  Deployment d = Deployment::Make("gate");
  SeededRandom rng(AsBytes("gate-flow"));
  std::string before = d.ledger.Persist();
  Digest root = d.registry.root();
  auto r = d.Issue({kIssuers[0]}, rng, 0, *Attributes::Parse("age=9,name=bob"));
  EXPECT_EQ(r.status().code(), absl::StatusCode::kPermissionDenied);
  EXPECT_EQ(d.ledger.Persist(), before);
  EXPECT_EQ(d.registry.root(), root);
  EXPECT_EQ(d.registry.epoch(), 0u);
}

TEST(IssuanceTest, FullRegistryLeavesLedgerUnchanged) {
  Deployment d = Deployment::Make("full", 1);
  SeededRandom rng(AsBytes("full-flow"));
  ASSERT_TRUE(d.Issue({kIssuers[0]}, rng).ok());
  ASSERT_TRUE(d.Issue({kIssuers[0]}, rng).ok());
  std::string before = d.ledger.Persist();
  auto r = d.Issue({kIssuers[0]}, rng);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
  EXPECT_EQ(d.ledger.Persist(), before);
  EXPECT_EQ(d.registry.root(), d.ledger.head_digest().root);
}

TEST(IssuanceTest, OutOfSyncRegistryRefused) {
  Deployment d = Deployment::Make("sync");
  SeededRandom rng(AsBytes("sync-flow"));
  MerkleRegistry stale = d.registry;
  ASSERT_TRUE(d.Issue({kIssuers[0]}, rng).ok());
  std::swap(stale, d.registry);
  EXPECT_EQ(d.Issue({kIssuers[0]}, rng).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(IssuanceTest, MultiIssuerAndStalePaths) {
  Deployment d = Deployment::Make("multi");
  SeededRandom rng(AsBytes("multi-flow"));
  auto first = *d.Issue(kIssuers, rng, 1);
  EXPECT_EQ(first.record.bundles.size(), 3u);
  EXPECT_EQ(first.tx.qual_proofs.size(), 3u);
  for (int i = 0; i < 4; ++i) ASSERT_TRUE(d.Issue({kIssuers[1]}, rng, 2 + i).ok());
  // The stored path predates later inserts; the ledger check refreshes it.
  EXPECT_FALSE(VerifyVc(d.pp, first.record, d.ledger.issuer_acc(),
                        d.ledger.head_digest().root, 10, d.keys.vk));
  EXPECT_TRUE(VerifyVcOnLedger(d.ledger, first.record));
}

TEST(IssuanceTest, RevokeRequiresOpeningAndDeathPredicate) {
  Deployment d = Deployment::Make("revoke");
  SeededRandom rng(AsBytes("revoke-flow"));
  auto r = *d.Issue({kIssuers[0]}, rng);
  ASSERT_TRUE(VerifyVcOnLedger(d.ledger, r.record));
  Predicate too_old = *Predicate::Parse(Predicate::Kind::kDeath, "age>=200");
  EXPECT_EQ(RevokeVc(d.pp, r.record, r.opening, too_old, d.registry, d.ledger)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  Predicate deceased = *Predicate::Parse(Predicate::Kind::kDeath, "status=deceased");
  EXPECT_EQ(RevokeVc(d.pp, r.record, r.opening, deceased, d.registry, d.ledger)
                .status()
                .code(),
            absl::StatusCode::kNotFound);
  Commitment forged = r.opening;
  forged.randomness[0] ^= 1;
  Predicate any = *Predicate::Parse(Predicate::Kind::kDeath, "age>=0");
  EXPECT_FALSE(RevokeVc(d.pp, r.record, forged, any, d.registry, d.ledger).ok());
  size_t size = d.ledger.log().size();
  auto tx = RevokeVc(d.pp, r.record, r.opening, any, d.registry, d.ledger);
  ASSERT_TRUE(tx.ok()) << tx.status();
  EXPECT_EQ(d.ledger.log().size(), size + 1);
  EXPECT_EQ(d.ledger.head_digest().root, d.registry.root());
  EXPECT_FALSE(VerifyVcOnLedger(d.ledger, r.record));
  EXPECT_EQ(RevokeVc(d.pp, r.record, r.opening, any, d.registry, d.ledger)
                .status()
                .code(),
            absl::StatusCode::kNotFound);
}

TEST(IssuanceTest, IssuerRemovalRevokesQualification) {
  Deployment d = Deployment::Make("removal");
  SeededRandom rng(AsBytes("removal-flow"));
  auto by0 = *d.Issue({kIssuers[0]}, rng, 1);
  ASSERT_TRUE(VerifyVcOnLedger(d.ledger, by0.record));
  auto next = UpdateIssuers(d.pp, d.set, {kIssuers[0]}, {}, d.ledger, rng);
  ASSERT_TRUE(next.ok()) << next.status();
  d.set = *next;
  EXPECT_FALSE(VerifyVcOnLedger(d.ledger, by0.record));
  EXPECT_FALSE(d.Issue({kIssuers[0]}, rng, 2).ok());
  auto by1 = d.Issue({kIssuers[1]}, rng, 3);
  ASSERT_TRUE(by1.ok());
  EXPECT_TRUE(VerifyVcOnLedger(d.ledger, by1->record));
  // Stale issuer-set state is refused.
  EXPECT_FALSE(UpdateIssuers(d.pp, *CreateIssuerSet(d.pp, kIssuers, rng), {},
                             {"did:web:x"}, d.ledger, rng)
                   .ok());
}

TEST(IssuanceTest, LedgerHidesIssuersAndHolderNonces) {
  Deployment d = Deployment::Make("ledger-hiding");
  SeededRandom rng(AsBytes("ledger-hiding-flow"));
  std::vector<Bytes> r_Hs;
  for (int i = 0; i < 6; ++i) {
    std::vector<std::string> ids(kIssuers.begin(), kIssuers.begin() + 1 + i % 3);
    auto r = *d.Issue(ids, rng, i);
    r_Hs.push_back(r.request.r_H);
  }
  std::string file = d.ledger.Persist();
  Bytes raw;
  for (const Transaction& tx : d.ledger.log()) Append(raw, tx.Serialize());
  for (const std::string& id : kIssuers) {
    EXPECT_FALSE(ContainsSubsequence(raw, AsBytes(id)));
    EXPECT_EQ(file.find(id), std::string::npos);
    EXPECT_EQ(file.find(HexEncode(AsBytes(id))), std::string::npos);
  }
  for (const Bytes& r_H : r_Hs) {
    EXPECT_FALSE(ContainsSubsequence(raw, r_H));
    EXPECT_EQ(file.find(HexEncode(r_H)), std::string::npos);
  }
}

}  // namespace
}  // namespace pihvc
