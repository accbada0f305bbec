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


#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/protocol/protocol.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kTxTag = "pihvc/tx";
constexpr std::string_view kQualTag = "pihvc/tx-qual";
constexpr size_t kChecksumBytes = 8;

const CrhParams& ChecksumCrh() {
  static const CrhParams* crh = new CrhParams(*CrhSetup(128));
  return *crh;
}

std::string Checksum(ByteView record) {
  Bytes d = CrhHashFields(ChecksumCrh(), crh_site::kRecord,
                          {ToBytes("checksum"), Bytes(record.begin(), record.end())})
                .bytes;
  return HexEncode(ByteView(d.data(), kChecksumBytes));
}

absl::Status Reject(std::string_view why) {
  return absl::FailedPreconditionError(
      absl::StrCat("ledger: ", std::string(why)));
}

// Keeps empty pieces, so record k is always line k.
std::vector<std::string_view> SplitExact(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool IsLowerHex(std::string_view s) {
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

Bytes Transaction::Serialize() const {
  std::vector<Bytes> commitments;
  for (const Digest& d : commitment_hashes) commitments.push_back(d.bytes);
  std::vector<Bytes> quals;
  for (const QualEntry& q : qual_proofs) {
    quals.push_back(FieldWriter(kQualTag)
                        .AddU32(q.commitment_index)
                        .Add(q.bundle.Serialize())
                        .Finish());
  }
  std::vector<Bytes> deleted;
  for (uint64_t i : deleted_indices) deleted.push_back(EncodeNat(i));
  std::vector<Bytes> swap_fields;
  if (swap) {
    swap_fields = {swap->statement.Serialize(), swap->proof.Serialize()};
  }
  return FieldWriter(kTxTag)
      .AddU32(static_cast<uint32_t>(kind))
      .Add(prev_record_hash.bytes)
      .Add(public_params)
      .AddU32(tree_height)
      .AddU32(static_cast<uint32_t>(reuse))
      .AddList(commitments)
      .AddList(quals)
      .AddList(deleted)
      .AddList(swap_fields)
      .AddNat(issuer_acc)
      .Add(resulting_digest.Serialize())
      .Finish();
}

absl::StatusOr<Transaction> Transaction::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kTxTag));
  Transaction tx;
  ASSIGN_OR_RETURN(uint32_t kind, r.NextU32());
  if (kind > static_cast<uint32_t>(TxKind::kIssuerUpdate)) {
    return absl::InvalidArgumentError("tx: unknown kind");
  }
  tx.kind = static_cast<TxKind>(kind);
  ASSIGN_OR_RETURN(tx.prev_record_hash.bytes, r.Next());
  ASSIGN_OR_RETURN(tx.public_params, r.Next());
  ASSIGN_OR_RETURN(tx.tree_height, r.NextU32());
  ASSIGN_OR_RETURN(uint32_t reuse, r.NextU32());
  if (reuse > static_cast<uint32_t>(SlotReuse::kLowestFree)) {
    return absl::InvalidArgumentError("tx: unknown slot policy");
  }
  tx.reuse = static_cast<SlotReuse>(reuse);
  ASSIGN_OR_RETURN(std::vector<Bytes> commitments, r.NextList());
  ASSIGN_OR_RETURN(std::vector<Bytes> quals, r.NextList());
  ASSIGN_OR_RETURN(std::vector<Bytes> deleted, r.NextList());
  ASSIGN_OR_RETURN(std::vector<Bytes> swap_fields, r.NextList());
  ASSIGN_OR_RETURN(tx.issuer_acc, r.NextNat());
  ASSIGN_OR_RETURN(Bytes digest, r.Next());
  RETURN_IF_ERROR(r.Done());
  for (Bytes& c : commitments) tx.commitment_hashes.push_back({std::move(c)});
  for (const Bytes& q : quals) {
    ASSIGN_OR_RETURN(FieldReader qr, FieldReader::Open(q, kQualTag));
    QualEntry e;
    ASSIGN_OR_RETURN(e.commitment_index, qr.NextU32());
    ASSIGN_OR_RETURN(Bytes bundle, qr.Next());
    RETURN_IF_ERROR(qr.Done());
    ASSIGN_OR_RETURN(e.bundle, QualificationBundle::Deserialize(bundle));
    tx.qual_proofs.push_back(std::move(e));
  }
  for (const Bytes& d : deleted) {
    ASSIGN_OR_RETURN(mpz_class v, DecodeNat(d));
    if (!v.fits_ulong_p()) return absl::InvalidArgumentError("tx: bad index");
    tx.deleted_indices.push_back(v.get_ui());
  }
  if (swap_fields.size() == 2) {
    SwapEntry s;
    ASSIGN_OR_RETURN(s.statement, SwapStatement::Deserialize(swap_fields[0]));
    ASSIGN_OR_RETURN(s.proof, SwapProof::Deserialize(swap_fields[1]));
    tx.swap = std::move(s);
  } else if (!swap_fields.empty()) {
    return absl::InvalidArgumentError("tx: malformed swap entry");
  }
  ASSIGN_OR_RETURN(tx.resulting_digest, LedgerDigest::Deserialize(digest));
  return tx;
}

Digest RecordHash(const CrhParams& crh, const Transaction& tx) {
  return CrhHashFields(crh, crh_site::kRecord, {tx.Serialize()});
}

absl::StatusOr<Ledger> Ledger::Genesis(const PublicParams& pp, int tree_height,
                                       SlotReuse reuse,
                                       const mpz_class& issuer_acc) {
  ASSIGN_OR_RETURN(KeyPair keys, Keygen(pp));
  ASSIGN_OR_RETURN(MerkleRegistry registry,
                   MerkleRegistry::Create(pp.crh, tree_height, reuse));
  if (!IsGroupElement(pp.rsa, issuer_acc)) {
    return absl::InvalidArgumentError(
        "ledger: initial issuer accumulator is not a group element");
  }
  Ledger ledger(pp, keys.vk, std::move(registry));
  Transaction tx;
  tx.kind = TxKind::kGenesis;
  tx.public_params = pp.Serialize();
  tx.tree_height = static_cast<uint32_t>(tree_height);
  tx.reuse = reuse;
  tx.issuer_acc = issuer_acc;
  tx.resulting_digest = {ledger.registry_.root(), 0};
  ledger.head_ = tx.resulting_digest;
  ledger.head_hash_ = RecordHash(pp.crh, tx);
  ledger.accs_.push_back(issuer_acc);
  ledger.log_.push_back(std::move(tx));
  return ledger;
}

absl::StatusOr<Transaction> Ledger::MakeIssueTx(
    std::vector<Digest> commitment_hashes,
    std::vector<QualEntry> qual_proofs) const {
  Transaction tx;
  tx.kind = TxKind::kIssue;
  tx.prev_record_hash = head_hash_;
  tx.commitment_hashes = std::move(commitment_hashes);
  tx.qual_proofs = std::move(qual_proofs);
  tx.issuer_acc = issuer_acc();
  MerkleRegistry next = registry_;
  RETURN_IF_ERROR(next.InsertLeafHashes(tx.commitment_hashes).status());
  tx.resulting_digest = {next.root(), head_.epoch + 1};
  return tx;
}

absl::StatusOr<Transaction> Ledger::MakeRevokeTx(
    std::vector<uint64_t> deleted_indices) const {
  Transaction tx;
  tx.kind = TxKind::kRevoke;
  tx.prev_record_hash = head_hash_;
  tx.deleted_indices = std::move(deleted_indices);
  tx.issuer_acc = issuer_acc();
  MerkleRegistry next = registry_;
  for (uint64_t i : tx.deleted_indices) {
    RETURN_IF_ERROR(next.DeleteLeaf(i).status());
  }
  tx.resulting_digest = {next.root(), head_.epoch + 1};
  return tx;
}

absl::StatusOr<Transaction> Ledger::MakeIssuerUpdateTx(SwapEntry swap) const {
  Transaction tx;
  tx.kind = TxKind::kIssuerUpdate;
  tx.prev_record_hash = head_hash_;
  tx.issuer_acc = swap.statement.acc_after;
  tx.swap = std::move(swap);
  tx.resulting_digest = {registry_.root(), head_.epoch + 1};
  return tx;
}

absl::StatusOr<MerkleRegistry> Ledger::Apply(const Transaction& tx,
                                             bool verify_proofs) const {
  if (tx.prev_record_hash != head_hash_) {
    return Reject("record does not chain to the head");
  }
  if (tx.resulting_digest.epoch != head_.epoch + 1) {
    return Reject("epoch does not advance by one");
  }
  if (!tx.public_params.empty() || tx.tree_height != 0 ||
      tx.reuse != SlotReuse::kNever) {
    return Reject("genesis fields outside the genesis record");
  }
  MerkleRegistry next = registry_;
  switch (tx.kind) {
    case TxKind::kGenesis:
      return Reject("second genesis record");
    case TxKind::kIssue: {
      if (tx.commitment_hashes.empty()) return Reject("issue without commitments");
      if (!tx.deleted_indices.empty() || tx.swap) {
        return Reject("issue record carries foreign fields");
      }
      if (tx.issuer_acc != issuer_acc()) {
        return Reject("issue record changes the issuer accumulator");
      }
      std::vector<bool> covered(tx.commitment_hashes.size(), false);
      for (const QualEntry& q : tx.qual_proofs) {
        if (q.commitment_index >= tx.commitment_hashes.size()) {
          return Reject("qualification proof for a missing commitment");
        }
        covered[q.commitment_index] = true;
        if (verify_proofs &&
            !VeriQua(pp_, q.bundle.holder_did, q.bundle.pub_token,
                     q.bundle.r_I0, issuer_acc(), q.bundle.proof, vk_,
                     tx.commitment_hashes[q.commitment_index].bytes)) {
          return Reject(absl::StrCat("qualification proof ",
                                     q.commitment_index, " does not verify"));
        }
      }
      for (bool c : covered) {
        if (!c) return Reject("commitment without a qualification proof");
      }
      RETURN_IF_ERROR(next.InsertLeafHashes(tx.commitment_hashes).status());
      break;
    }
    case TxKind::kRevoke: {
      if (tx.deleted_indices.empty()) return Reject("revoke without indices");
      if (!tx.commitment_hashes.empty() || !tx.qual_proofs.empty() || tx.swap) {
        return Reject("revoke record carries foreign fields");
      }
      if (tx.issuer_acc != issuer_acc()) {
        return Reject("revoke record changes the issuer accumulator");
      }
      for (uint64_t i : tx.deleted_indices) {
        RETURN_IF_ERROR(next.DeleteLeaf(i).status());
      }
      break;
    }
    case TxKind::kIssuerUpdate: {
      if (!tx.swap) return Reject("issuer update without a swap proof");
      if (!tx.commitment_hashes.empty() || !tx.qual_proofs.empty() ||
          !tx.deleted_indices.empty()) {
        return Reject("issuer update carries foreign fields");
      }
      const SwapStatement& st = tx.swap->statement;
      if (st.acc_before != issuer_acc()) {
        return Reject("swap does not start from the current accumulator");
      }
      if (tx.issuer_acc != st.acc_after) {
        return Reject("recorded accumulator is not the swap result");
      }
      if (verify_proofs) {
        ASSIGN_OR_RETURN(SwapParams swap, SwapSetup(pp_.security_bits));
        if (!SwapVerify(pp_.rsa, swap, st, tx.swap->proof)) {
          return Reject("swap proof does not verify");
        }
      }
      break;
    }
  }
  if (next.root() != tx.resulting_digest.root) {
    return Reject("resulting root does not match the registry");
  }
  return next;
}

absl::Status Ledger::Validate(const Transaction& tx) const {
  return Apply(tx, /*verify_proofs=*/true).status();
}

absl::Status Ledger::AppendChecked(const Transaction& tx, bool verify_proofs) {
  ASSIGN_OR_RETURN(MerkleRegistry next, Apply(tx, verify_proofs));
  registry_ = std::move(next);
  head_ = tx.resulting_digest;
  head_hash_ = RecordHash(pp_.crh, tx);
  if (tx.kind == TxKind::kIssuerUpdate) accs_.push_back(tx.issuer_acc);
  log_.push_back(tx);
  return absl::OkStatus();
}

absl::Status Ledger::Append(const Transaction& tx) {
  return AppendChecked(tx, /*verify_proofs=*/true);
}

std::string Ledger::Persist() const {
  std::string out;
  for (const Transaction& tx : log_) {
    Bytes record = tx.Serialize();
    absl::StrAppend(&out, HexEncode(record), " ", Checksum(record), "\n");
  }
  return out;
}

absl::StatusOr<std::optional<Ledger>> Ledger::Replay(std::string_view file,
                                                     ReplayMode mode) {
  if (file.empty()) return std::optional<Ledger>();
  if (file.back() != '\n') {
    return absl::DataLossError(absl::StrCat(
        "ledger: record ", SplitExact(file, '\n').size() - 1, ": truncated"));
  }
  std::vector<std::string_view> lines =
      SplitExact(file.substr(0, file.size() - 1), '\n');
  std::optional<Ledger> ledger;
  for (size_t k = 0; k < lines.size(); ++k) {
    auto corrupt = [k](const std::string& why) {
      return absl::DataLossError(absl::StrCat("ledger: record ", k, ": ", why));
    };
    std::vector<std::string_view> parts = SplitExact(lines[k], ' ');
    if (parts.size() != 2 || parts[1].size() != 2 * kChecksumBytes ||
        parts[0].size() % 2 != 0 || !IsLowerHex(parts[0]) ||
        !IsLowerHex(parts[1])) {
      return corrupt("malformed line");
    }
    absl::StatusOr<Bytes> record = HexDecode(parts[0]);
    if (!record.ok()) return corrupt("malformed hex");
    if (Checksum(*record) != parts[1]) return corrupt("checksum mismatch");
    absl::StatusOr<Transaction> tx = Transaction::Deserialize(*record);
    if (!tx.ok()) return corrupt(std::string(tx.status().message()));
    if (k == 0) {
      if (tx->kind != TxKind::kGenesis) return corrupt("first record is not genesis");
      absl::StatusOr<PublicParams> pp =
          PublicParams::Deserialize(tx->public_params);
      if (!pp.ok()) return corrupt(std::string(pp.status().message()));
      absl::StatusOr<Ledger> g =
          Genesis(*pp, static_cast<int>(tx->tree_height), tx->reuse,
                  tx->issuer_acc);
      if (!g.ok()) return corrupt(std::string(g.status().message()));
      if (g->log_[0].Serialize() != *record) {
        return corrupt("genesis record is not canonical");
      }
      ledger = std::move(*g);
      continue;
    }
    absl::Status s =
        ledger->AppendChecked(*tx, mode == ReplayMode::kVerifyAll);
    if (!s.ok()) return corrupt(std::string(s.message()));
  }
  return ledger;
}

bool VerifyVcOnLedger(const Ledger& ledger, const VcRecord& record) {
  VcRecord fresh = record;
  absl::StatusOr<MerklePath> path =
      ledger.registry().ProveLeaf(record.registry_path.leaf_index);
  if (!path.ok()) return false;
  fresh.registry_path = *path;
  return VerifyVc(ledger.pp(), fresh, ledger.issuer_acc(),
                  ledger.head_digest().root, ledger.tree_height(), ledger.vk());
}

}  // namespace pihvc
