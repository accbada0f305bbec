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

#include <set>

#include "gtest/gtest.h"
#include "oracle.h"
#include "pihvc/crypto/commitment.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/random.h"

namespace pihvc {
namespace {

CrhParams Crh128() { return *CrhSetup(128); }

TEST(EncodingTest, RoundTripsEveryFieldKind) {
  Bytes enc = FieldWriter("t")
                  .AddString("abc")
                  .AddU32(7)
                  .AddU64(1ull << 40)
                  .AddNat(mpz_class("123456789012345678901234567890"))
                  .AddInt(-5)
                  .AddNatList({1, 2, 3})
                  .Finish();
  auto r = FieldReader::Open(enc, "t");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r->NextString(), "abc");
  EXPECT_EQ(*r->NextU32(), 7u);
  EXPECT_EQ(*r->NextU64(), 1ull << 40);
  EXPECT_EQ(*r->NextNat(), mpz_class("123456789012345678901234567890"));
  EXPECT_EQ(*r->NextInt(), -5);
  EXPECT_EQ(r->NextNatList()->size(), 3u);
  EXPECT_TRUE(r->Done().ok());
}

TEST(EncodingTest, LayoutMatchesHandFraming) {
  Bytes enc = FieldWriter("tag").AddString("ab").Add(Bytes{}).Finish();
  oracle::Buf expected = oracle::Frame("tag", {oracle::Str("ab"), {}});
  EXPECT_EQ(enc, expected);
}

TEST(EncodingTest, RejectsMalformedInput) {
  Bytes enc = FieldWriter("t").AddString("abc").Finish();
  EXPECT_FALSE(FieldReader::Open(enc, "u").ok());
  Bytes truncated(enc.begin(), enc.end() - 1);
  EXPECT_FALSE(FieldReader::Open(truncated, "t").ok());
  Bytes trailing = enc;
  trailing.push_back(0);
  EXPECT_FALSE(FieldReader::Open(trailing, "t").ok());
  EXPECT_FALSE(DecodeNat(Bytes{0, 1}).ok());
  EXPECT_FALSE(DecodeInt(Bytes{1}).ok());
}

TEST(RandomTest, SeededStreamsAreReproducible) {
  SeededRandom a(AsBytes("seed"));
  SeededRandom b(AsBytes("seed"));
  SeededRandom c(AsBytes("other"));
  Bytes x = a.RandomBytes(100);
  EXPECT_EQ(x, b.RandomBytes(100));
  EXPECT_NE(x, c.RandomBytes(100));
  for (int i = 0; i < 1000; ++i) {
    mpz_class v = a.UniformBelow(1000);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 1000);
  }
}

TEST(CrhTest, SetupPicksTwiceTheSecurityLevel) {
  auto p = CrhSetup(128);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->digest_bits, 256u);
  EXPECT_EQ(*p, *CrhSetup(128));
  EXPECT_EQ(CrhSetup(112)->digest_bits, 224u);
  EXPECT_EQ(CrhSetup(256)->digest_bits, 512u);
  EXPECT_FALSE(CrhSetup(100).ok());
}

TEST(CrhTest, MatchesIndependentSha256Framing) {
  CrhParams p = Crh128();
  EXPECT_EQ(HexEncode(CrhHash(p, AsBytes("abc")).bytes),
            "96d5008dea863433c2e64c68238ea3ee5dea5067a1bec7596917d7f4f02ba8c9");
  EXPECT_EQ(HexEncode(CrhHash(p, {}).bytes),
            "bf96e264aa10a4f84f257053e583c77dfa5697039fb0d1538a686e4207a22b5c");
  EXPECT_EQ(CrhHash(p, AsBytes("abc")).bytes,
            oracle::Sha256(oracle::Frame("pihvc/v1", {oracle::Str("abc")})));
  EXPECT_EQ(CrhHashFields(p, "leaf", {ToBytes("x")}).bytes,
            oracle::SiteHash("leaf", {oracle::Str("x")}));
}

TEST(CrhTest, DeterministicAndFullWidth) {
  for (int bits : {112, 128, 192, 256}) {
    CrhParams p = *CrhSetup(bits);
    EXPECT_EQ(CrhHash(p, {}).bytes.size(), p.digest_bits / 8);
    EXPECT_EQ(CrhHash(p, AsBytes("m")), CrhHash(p, AsBytes("m")));
  }
}

TEST(CrhTest, DistinctMessagesGiveDistinctDigests) {
  CrhParams p = Crh128();
  SeededRandom rng(AsBytes("crh-pairs"));
  for (int i = 0; i < 10000; ++i) {
    Bytes m1 = rng.RandomBytes(1 + rng.NextU64() % 64);
    Bytes m2 = rng.RandomBytes(1 + rng.NextU64() % 64);
    if (m1 == m2) continue;
    ASSERT_NE(CrhHash(p, m1), CrhHash(p, m2));
  }
}

TEST(CrhTest, SitesAreDomainSeparated) {
  CrhParams p = Crh128();
  EXPECT_NE(CrhHashFields(p, "leaf", {ToBytes("x")}),
            CrhHashFields(p, "node", {ToBytes("x")}));
}

TEST(HashToPrimeTest, FrozenValuesFromIndependentSearch) {
  CrhParams p = Crh128();
  auto v = HashToPrime(p, AsBytes("issuer-1"));
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v->nonce, 145u);
  EXPECT_EQ(v->value,
            mpz_class("0xa199790da19dcd6ab48f9e232163958f745db2b32e7facda9ffb574"
                      "fb0935dc3"));
  auto e = HashToPrime(p, {});
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e->nonce, 61u);
}

TEST(HashToPrimeTest, OutputIsOddPrimeAndNonceIsMinimal) {
  CrhParams p = Crh128();
  for (std::string msg : {"issuer-1", "issuer-2", "did:example:abc"}) {
    auto v = HashToPrime(p, AsBytes(msg));
    ASSERT_TRUE(v.ok());
    EXPECT_TRUE(oracle::MillerRabin(v->value, 64));
    EXPECT_TRUE(mpz_odd_p(v->value.get_mpz_t()));
    EXPECT_EQ(BitLength(v->value), 256u);
    for (uint32_t c = 0; c < v->nonce; ++c) {
      oracle::Buf d = oracle::SiteHash("h2p", {oracle::Str(msg), oracle::Be32(c)});
      d.front() |= 0x80;
      d.back() |= 0x01;
      ASSERT_FALSE(oracle::MillerRabin(oracle::ToInt(d), 16)) << c;
    }
    EXPECT_EQ(*v, *HashToPrime(p, AsBytes(msg)));
  }
}

TEST(HashToPrimeTest, DistinctMessagesAreCoprime) {
  CrhParams p = Crh128();
  std::vector<mpz_class> values;
  for (int i = 0; i < 1000; ++i) {
    values.push_back(HashToPrime(p, AsBytes("m" + std::to_string(i)))->value);
  }
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = i + 1; j < values.size(); ++j) {
      ASSERT_EQ(gcd(values[i], values[j]), 1);
    }
  }
}

TEST(PadTest, LengthRule) {
  Digest d{Bytes(32, 0xab)};
  auto same = Pad(Bytes(32, 'd'), d);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(*same, d.bytes);
  EXPECT_EQ(Pad(Bytes(40, 'd'), d)->size(), 64u);
  EXPECT_EQ(Pad(Bytes(1, 'd'), Digest{Bytes(28, 1)})->size(), 32u);
  EXPECT_FALSE(Pad({}, d).ok());
}

TEST(PadTest, InjectiveForFixedHolder) {
  SeededRandom rng(AsBytes("pad"));
  Bytes did = ToBytes("did:example:holder-with-a-long-identifier-0001");
  for (int i = 0; i < 1000; ++i) {
    Digest x{rng.RandomBytes(32)};
    Digest y{rng.RandomBytes(32)};
    if (x == y) continue;
    ASSERT_NE(*Pad(did, x), *Pad(did, y));
  }
}

TEST(PredicateTest, ThresholdExamples) {
  auto pred = Predicate::Parse(Predicate::Kind::kBirth, "age>=18");
  ASSERT_TRUE(pred.ok());
  EXPECT_TRUE(*EvalPredicate(*Attributes::Parse("age=25"), *pred));
  EXPECT_FALSE(*EvalPredicate(*Attributes::Parse("age=16"), *pred));
  EXPECT_FALSE(EvalPredicate(Attributes(), *pred).ok());
}

TEST(PredicateTest, ParsesAllOperators) {
  auto attrs = *Attributes::Parse("age=30,country=NL,score=7");
  auto eval = [&](std::string_view text) {
    return *EvalPredicate(attrs,
                          *Predicate::Parse(Predicate::Kind::kDeath, text));
  };
  EXPECT_TRUE(eval("country=NL"));
  EXPECT_TRUE(eval("country!=DE"));
  EXPECT_TRUE(eval("age<31,age<=30,age>29,age>=30"));
  EXPECT_FALSE(eval("age>=18,country=DE"));
  // Numeric rather than bytewise: "7" < "10".
  EXPECT_TRUE(eval("score<10"));
  EXPECT_FALSE(Predicate::Parse(Predicate::Kind::kBirth, "").ok());
  EXPECT_FALSE(Predicate::Parse(Predicate::Kind::kBirth, "age").ok());
}

TEST(AttributesTest, SortedAndUnique) {
  auto a = Attributes::Parse("b=2,a=1");
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->entries()[0].first, "a");
  EXPECT_FALSE(Attributes::Parse("a=1,a=2").ok());
}

class CommitTest : public ::testing::Test {
 protected:
  CrhParams crh_ = Crh128();
  Attributes attrs_ = *Attributes::Parse("age=25,name=alice");
  Predicate pred_ = *Predicate::Parse(Predicate::Kind::kBirth, "age>=18");
  Bytes rand_ = Bytes(32, 0x42);
};

TEST_F(CommitTest, DeterministicAndVerifies) {
  auto c1 = Commit(crh_, attrs_, pred_, rand_);
  auto c2 = Commit(crh_, attrs_, pred_, rand_);
  ASSERT_TRUE(c1.ok());
  EXPECT_EQ(c1->value, c2->value);
  EXPECT_TRUE(VerifyCommit(crh_, c1->value, attrs_, rand_));
  Bytes flipped = rand_;
  flipped[3] ^= 1;
  EXPECT_FALSE(VerifyCommit(crh_, c1->value, attrs_, flipped));
  EXPECT_FALSE(
      VerifyCommit(crh_, c1->value, *Attributes::Parse("age=26,name=alice"),
                   rand_));
}

TEST_F(CommitTest, GatedByPredicateAndRandomnessLength) {
  auto young = *Attributes::Parse("age=16");
  EXPECT_FALSE(Commit(crh_, young, pred_, rand_).ok());
  EXPECT_FALSE(Commit(crh_, attrs_, pred_, Bytes(31, 1)).ok());
}

TEST_F(CommitTest, FreshOpeningsGiveDistinctValues) {
  SeededRandom rng(AsBytes("commit"));
  std::set<std::string> seen;
  for (int i = 0; i < 1000; ++i) {
    auto c = Commit(crh_, attrs_, pred_, rng.RandomBytes(32));
    ASSERT_TRUE(c.ok());
    ASSERT_TRUE(seen.insert(c->value.value.get_str(16)).second);
  }
}

TEST_F(CommitTest, BindingOverSmallAttributeSpace) {
  const char* values[] = {"18", "19", "20", "21"};
  auto make = [&](int i, int j) {
    return *Attributes::Parse(std::string("age=") + values[i] +
                              ",level=" + values[j]);
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      auto c = Commit(crh_, make(i, j), pred_, rand_);
      ASSERT_TRUE(c.ok());
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          EXPECT_EQ(VerifyCommit(crh_, c->value, make(k, l), rand_),
                    i == k && j == l);
        }
      }
    }
  }
}

}  // namespace
}  // namespace pihvc
