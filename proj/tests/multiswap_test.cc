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

#include "pihvc/multiswap/multiswap.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "oracle.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"

namespace pihvc {
namespace {

PrimeDigest P(unsigned long v) { return *PrimeFromValue(v); }

class MultiSwapTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SeededRandom rng(AsBytes("multiswap-group"));
    rsa_ = new RsaParams(*RsaSetup(128, {RsaMode::kToy, 64}, rng));
    params_ = new SwapParams(*SwapSetup(128));
    pool_ = new std::vector<PrimeDigest>();
    for (int i = 0; i < 64; ++i) {
      pool_->push_back(
          *HashToPrime(params_->crh, AsBytes("did:pool:" + std::to_string(i))));
    }
  }

  // Draws |X| <= 32 from the pool, then W from X and Y from the rest.
  void RandomCase(SeededRandom& rng, std::vector<PrimeDigest>& X,
                  std::vector<PrimeDigest>& W, std::vector<PrimeDigest>& Y) {
    std::vector<PrimeDigest> pool = *pool_;
    for (size_t i = pool.size() - 1; i > 0; --i) {
      size_t j = rng.UniformBelow(i + 1).get_ui();
      std::swap(pool[i], pool[j]);
    }
    size_t nx = rng.UniformBelow(33).get_ui();
    size_t nw = nx == 0 ? 0 : rng.UniformBelow(nx + 1).get_ui();
    size_t ny = rng.UniformBelow(9).get_ui();
    X.assign(pool.begin(), pool.begin() + nx);
    W.assign(pool.begin(), pool.begin() + nw);
    Y.assign(pool.begin() + nx, pool.begin() + nx + ny);
  }

  static RsaParams* rsa_;
  static SwapParams* params_;
  static std::vector<PrimeDigest>* pool_;
};

RsaParams* MultiSwapTest::rsa_ = nullptr;
SwapParams* MultiSwapTest::params_ = nullptr;
std::vector<PrimeDigest>* MultiSwapTest::pool_ = nullptr;

TEST(SwapSetupTest, DeterministicAndChecked) {
  auto a = SwapSetup(128);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->crh.digest_bits, 256u);
  EXPECT_EQ(*a, *SwapSetup(128));
  EXPECT_FALSE(SwapSetup(100).ok());
}

TEST(ApplySwapTest, ToyGroupExamples) {
  RsaParams rsa = *RsaSetupFromPrimes(11, 23, 2, 3);
  auto state = *ComAcc(rsa, {P(3), P(5), P(7)}, 29);
  auto next = ApplySwap(rsa, state, {P(5)}, {P(13)}, 31);
  ASSERT_TRUE(next.ok());
  std::vector<mpz_class> values;
  for (const auto& e : next->elements) values.push_back(e.value);
  EXPECT_EQ(values, (std::vector<mpz_class>{3, 7, 13}));
  EXPECT_EQ(next->acc, oracle::PowMod(4, 3 * 7 * 13 * 31, 1081));

  auto same = ApplySwap(rsa, state, {}, {}, state.t);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(same->acc, state.acc);
  EXPECT_EQ(same->u, state.u);

  EXPECT_EQ(ApplySwap(rsa, state, {P(17)}, {}, 31).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_FALSE(ApplySwap(rsa, state, {}, {P(7)}, 31).ok());
  EXPECT_FALSE(ApplySwap(rsa, state, {}, {P(13)}, 13).ok());
  // Removing and reinserting the same element in one swap is allowed.
  EXPECT_TRUE(ApplySwap(rsa, state, {P(5)}, {P(5)}, 31).ok());
}

TEST_F(MultiSwapTest, TransitionEquivalenceAndProofs) {
  SeededRandom rng(AsBytes("multiswap-cases"));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PrimeDigest> X, W, Y;
    RandomCase(rng, X, W, Y);
    mpz_class carried = SampleBlindFactor(rng, 1);
    mpz_class u;
    {
      std::vector<mpz_class> v;
      for (const auto& e : X) v.push_back(e.value);
      u = Product(v);
    }
    mpz_class t = carried * SampleBlindFactor(rng, u);
    while (gcd(t, u) != 1) t = carried * SampleBlindFactor(rng, u);
    auto state = ComAcc(*rsa_, X, t);
    ASSERT_TRUE(state.ok());
    auto tr = PrepareSwap(*rsa_, *params_, *state, carried, W, Y, rng);
    ASSERT_TRUE(tr.ok()) << tr.status();

    // Fresh accumulation of (X \ W) u Y under the new blind, via the oracle.
    mpz_class expected_u = 1;
    for (const auto& x : X) {
      bool removed = std::any_of(W.begin(), W.end(),
                                 [&](const auto& w) { return w == x; });
      if (!removed) expected_u *= x.value;
    }
    for (const auto& y : Y) expected_u *= y.value;
    EXPECT_EQ(tr->after.u, expected_u);
    EXPECT_EQ(tr->after.acc,
              oracle::PowMod(rsa_->g, expected_u * tr->witness.t_after, rsa_->N));
    EXPECT_EQ(tr->after.acc,
              ComAcc(*rsa_, tr->after.elements, tr->witness.t_after)->acc);

    // acc_mid^(prod W * t_before / tau) = acc_before.
    mpz_class tau = gcd(t, tr->witness.t_after);
    EXPECT_GE(tau, carried);
    mpz_class prod_w = 1;
    for (const auto& w : W) prod_w *= w.value;
    EXPECT_EQ(oracle::PowMod(tr->statement.acc_mid, prod_w * (t / tau),
                             rsa_->N),
              state->acc);

    auto proof = SwapProve(*rsa_, *params_, tr->statement, tr->witness, rng);
    ASSERT_TRUE(proof.ok()) << proof.status();
    EXPECT_TRUE(SwapVerify(*rsa_, *params_, tr->statement, *proof));

    SwapStatement tampered = tr->statement;
    tampered.acc_after = tampered.acc_before;
    if (tampered.acc_after != tr->statement.acc_after) {
      EXPECT_FALSE(SwapVerify(*rsa_, *params_, tampered, *proof));
    }
    tampered = tr->statement;
    tampered.acc_mid = tampered.acc_mid * rsa_->g % rsa_->N;
    EXPECT_FALSE(SwapVerify(*rsa_, *params_, tampered, *proof));
    tampered = tr->statement;
    tampered.d1 = tampered.d0;
    EXPECT_FALSE(SwapVerify(*rsa_, *params_, tampered, *proof));

    // Hiding: no serialized element of W or Y appears in public bytes.
    Bytes pub = tr->statement.Serialize();
    Append(pub, proof->Serialize());
    for (const auto* set : {&W, &Y}) {
      for (const PrimeDigest& e : *set) {
        EXPECT_FALSE(ContainsSubsequence(pub, NatToBytes(e.value)));
        EXPECT_FALSE(ContainsSubsequence(pub, EncodeNat(e.value)));
      }
    }
  }
}

TEST_F(MultiSwapTest, ProofRejectsWrongBetaAndMalformedBytes) {
  SeededRandom rng(AsBytes("multiswap-beta"));
  std::vector<PrimeDigest> X((*pool_).begin(), (*pool_).begin() + 6);
  mpz_class carried = SampleBlindFactor(rng, 1);
  mpz_class t = carried * 3;
  auto state = *ComAcc(*rsa_, X, t);
  std::vector<PrimeDigest> W = {X[1], X[4]};
  std::vector<PrimeDigest> Y = {(*pool_)[10]};
  auto tr = *PrepareSwap(*rsa_, *params_, state, carried, W, Y, rng);

  SwapWitness bad = tr.witness;
  bad.beta0[0] ^= 1;
  auto err = SwapProve(*rsa_, *params_, tr.statement, bad, rng);
  EXPECT_EQ(err.status().code(), absl::StatusCode::kFailedPrecondition);
  bad = tr.witness;
  bad.removed = {X[1]};
  EXPECT_FALSE(SwapProve(*rsa_, *params_, tr.statement, bad, rng).ok());

  auto proof = *SwapProve(*rsa_, *params_, tr.statement, tr.witness, rng);
  Bytes bytes = proof.Serialize();
  auto round = SwapProof::Deserialize(bytes);
  ASSERT_TRUE(round.ok());
  EXPECT_TRUE(SwapVerify(*rsa_, *params_, tr.statement, *round));
  for (size_t cut : {size_t{1}, size_t{7}, bytes.size() / 2}) {
    Bytes truncated(bytes.begin(), bytes.end() - cut);
    EXPECT_FALSE(SwapProof::Deserialize(truncated).ok());
  }
  auto stmt_round = SwapStatement::Deserialize(tr.statement.Serialize());
  ASSERT_TRUE(stmt_round.ok());
  EXPECT_EQ(*stmt_round, tr.statement);

  // The four parts must agree on the shared challenge and responses.
  SwapProof split = proof;
  split.pi_remove.responses[0] += 1;
  EXPECT_FALSE(SwapVerify(*rsa_, *params_, tr.statement, split));
  split = proof;
  split.commitment_openproofs[1].challenge += 1;
  EXPECT_FALSE(SwapVerify(*rsa_, *params_, tr.statement, split));
  split = proof;
  std::swap(split.exponent_commitments[0], split.exponent_commitments[1]);
  EXPECT_FALSE(SwapVerify(*rsa_, *params_, tr.statement, split));
}

TEST_F(MultiSwapTest, EmptySwapVerifies) {
  SeededRandom rng(AsBytes("multiswap-empty"));
  std::vector<PrimeDigest> X((*pool_).begin(), (*pool_).begin() + 3);
  mpz_class carried = SampleBlindFactor(rng, 1);
  auto state = *ComAcc(*rsa_, X, carried * 5);
  auto tr = PrepareSwap(*rsa_, *params_, state, carried, {}, {}, rng);
  ASSERT_TRUE(tr.ok());
  auto proof = SwapProve(*rsa_, *params_, tr->statement, tr->witness, rng);
  ASSERT_TRUE(proof.ok());
  EXPECT_TRUE(SwapVerify(*rsa_, *params_, tr->statement, *proof));
  EXPECT_EQ(tr->after.u, state.u);

  // Identity blind: acc_mid = acc_before = acc_after.
  SwapWitness same = tr->witness;
  same.t_after = state.t;
  SwapStatement stmt = tr->statement;
  stmt.acc_after = state.acc;
  stmt.acc_mid = state.acc;
  auto identity = SwapProve(*rsa_, *params_, stmt, same, rng);
  ASSERT_TRUE(identity.ok()) << identity.status();
  EXPECT_TRUE(SwapVerify(*rsa_, *params_, stmt, *identity));
}

TEST_F(MultiSwapTest, PrepareRequiresCarriedFactorOfBlind) {
  SeededRandom rng(AsBytes("multiswap-carry"));
  std::vector<PrimeDigest> X((*pool_).begin(), (*pool_).begin() + 2);
  auto state = *ComAcc(*rsa_, X, 15);
  EXPECT_FALSE(PrepareSwap(*rsa_, *params_, state, 7, {}, {}, rng).ok());
  EXPECT_FALSE(PrepareSwap(*rsa_, *params_, state, 1, {}, {}, rng).ok());
  EXPECT_TRUE(PrepareSwap(*rsa_, *params_, state, 5, {}, {}, rng).ok());
}

}  // namespace
}  // namespace pihvc
