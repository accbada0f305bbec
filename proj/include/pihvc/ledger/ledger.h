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

#ifndef PIHVC_LEDGER_LEDGER_H_
#define PIHVC_LEDGER_LEDGER_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pihvc/multiswap/multiswap.h"
#include "pihvc/protocol/types.h"
#include "pihvc/registry/registry.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

enum class TxKind : uint32_t {
  kGenesis = 0,
  kIssue = 1,
  kRevoke = 2,
  kIssuerUpdate = 3,
};

// A qualification bundle for commitment_hashes[commitment_index].
struct QualEntry {
  uint32_t commitment_index = 0;
  QualificationBundle bundle;
};

struct SwapEntry {
  SwapStatement statement;
  SwapProof proof;
};

struct Transaction {
  TxKind kind = TxKind::kIssue;
  Digest prev_record_hash;  // empty for genesis

  // Genesis only.
  Bytes public_params;
  uint32_t tree_height = 0;
  SlotReuse reuse = SlotReuse::kNever;

  std::vector<Digest> commitment_hashes;  // kIssue: leaves, in slot order
  std::vector<QualEntry> qual_proofs;     // kIssue
  std::vector<uint64_t> deleted_indices;  // kRevoke
  std::optional<SwapEntry> swap;          // kIssuerUpdate

  mpz_class issuer_acc;  // issuer-set accumulator once this tx applies
  LedgerDigest resulting_digest;

  Bytes Serialize() const;
  static absl::StatusOr<Transaction> Deserialize(ByteView data);
};

enum class ReplayMode {
  kVerifyAll,   // re-verify every qualification and swap proof
  kStructure,   // digest chain and registry roots only
};

// Append-only log with the public state it implies: the registry replica,
// the head digest and the issuer accumulator history.
class Ledger {
 public:
  static absl::StatusOr<Ledger> Genesis(const PublicParams& pp, int tree_height,
                                        SlotReuse reuse,
                                        const mpz_class& issuer_acc);

  const PublicParams& pp() const { return pp_; }
  const VerificationKey& vk() const { return vk_; }
  const std::vector<Transaction>& log() const { return log_; }
  const LedgerDigest& head_digest() const { return head_; }
  const std::vector<mpz_class>& issuer_acc_history() const { return accs_; }
  const mpz_class& issuer_acc() const { return accs_.back(); }
  const MerkleRegistry& registry() const { return registry_; }
  int tree_height() const { return registry_.height(); }
  // Hash of the last record, which the next one must reference.
  const Digest& head_record_hash() const { return head_hash_; }

  // Transactions with prev_record_hash and resulting_digest filled in.
  absl::StatusOr<Transaction> MakeIssueTx(
      std::vector<Digest> commitment_hashes,
      std::vector<QualEntry> qual_proofs) const;
  absl::StatusOr<Transaction> MakeRevokeTx(
      std::vector<uint64_t> deleted_indices) const;
  absl::StatusOr<Transaction> MakeIssuerUpdateTx(SwapEntry swap) const;

  absl::Status Validate(const Transaction& tx) const;
  // Validates, then extends the log by one. The state is unchanged on error.
  absl::Status Append(const Transaction& tx);

  // One line per record: lowercase hex of the record bytes, a space, and a
  // 16-hex-digit checksum.
  std::string Persist() const;
  // An empty file yields an empty ledger (nullopt). Corruption is DataLoss
  // naming the record index.
  static absl::StatusOr<std::optional<Ledger>> Replay(
      std::string_view file, ReplayMode mode = ReplayMode::kVerifyAll);

 private:
  Ledger(PublicParams pp, VerificationKey vk, MerkleRegistry registry)
      : pp_(std::move(pp)), vk_(std::move(vk)), registry_(std::move(registry)) {}

  // Checks tx against the current state and returns the registry after it.
  absl::StatusOr<MerkleRegistry> Apply(const Transaction& tx,
                                       bool verify_proofs) const;
  absl::Status AppendChecked(const Transaction& tx, bool verify_proofs);

  PublicParams pp_;
  VerificationKey vk_;
  MerkleRegistry registry_;
  std::vector<Transaction> log_;
  std::vector<mpz_class> accs_;
  LedgerDigest head_;
  Digest head_hash_;
};

Digest RecordHash(const CrhParams& crh, const Transaction& tx);

// Verifies a credential against the ledger head: the current issuer
// accumulator and root, with the registry path refreshed from the replica
// (paths go stale as later leaves arrive).
bool VerifyVcOnLedger(const Ledger& ledger, const VcRecord& record);

}  // namespace pihvc

#endif  // PIHVC_LEDGER_LEDGER_H_
