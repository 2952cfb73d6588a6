// Copyright 2026 The ClaimRank Authors.
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

#include "claimrank/features.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"
#include "synthetic.hpp"

namespace claimrank {
namespace {

using Entries = std::vector<std::pair<std::uint32_t, double>>;

TEST(Vocabulary, Examples) {
  const std::vector<std::string> texts = {"a b", "b c"};
  const auto v1 = Vocabulary::Build(texts, 1);
  EXPECT_EQ(v1.tokens(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(*v1.Find("c"), 2u);
  const auto v2 = Vocabulary::Build(texts, 2);
  EXPECT_EQ(v2.tokens(), (std::vector<std::string>{"b"}));
  EXPECT_EQ(Vocabulary::Build(std::vector<std::string>{}, 1).size(), 0u);
}

TEST(Vocabulary, DocumentFrequencyNotTermFrequency) {
  const std::vector<std::string> texts = {"x x x", "y"};
  EXPECT_EQ(Vocabulary::Build(texts, 2).size(), 0u);
}

TEST(Vocabulary, HashTracksTokens) {
  const std::vector<std::string> a = {"a b", "b c"};
  const std::vector<std::string> b = {"b a", "b c"};
  EXPECT_EQ(Vocabulary::Build(a, 1).Hash(), Vocabulary::Build(a, 1).Hash());
  EXPECT_NE(Vocabulary::Build(a, 1).Hash(), Vocabulary::Build(b, 1).Hash());
  const auto v = Vocabulary::Build(a, 1);
  EXPECT_EQ(Vocabulary::FromTokens(v.tokens(), 1).Hash(), v.Hash());
}

TEST(BowVector, Examples) {
  const auto vocab = Vocabulary::FromTokens({"a", "b"}, 1);
  const auto x = BowVector("a a b", vocab);
  EXPECT_EQ(x.entries, (Entries{{0, 2.0}, {1, 1.0}}));
  EXPECT_EQ(x.dimension, 2u);
  std::size_t oov = 0;
  EXPECT_TRUE(BowVector("zzz qqq", vocab, &oov).entries.empty());
  EXPECT_EQ(oov, 2u);
  EXPECT_TRUE(BowVector("", vocab).entries.empty());
}

TEST(BowVector, PermutationInvariantAndAdditive) {
  const auto& words = testing::Words();
  const auto vocab = Vocabulary::FromTokens(std::vector<std::string>(words.begin(), words.begin() + 12), 1);
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> tokens;
    for (std::uint64_t k = rng.Below(10); k > 0; --k) tokens.push_back(words[rng.Below(words.size())]);
    std::vector<std::string> other;
    for (std::uint64_t k = rng.Below(10); k > 0; --k) other.push_back(words[rng.Below(words.size())]);
    auto join = [](const std::vector<std::string>& t) {
      std::string s;
      for (const auto& w : t) s += w + " ";
      return s;
    };
    auto shuffled = tokens;
    rng.Shuffle(std::span<std::string>(shuffled));
    EXPECT_EQ(BowVector(join(tokens), vocab).entries, BowVector(join(shuffled), vocab).entries);
    const auto a = BowVector(join(tokens), vocab).ToDense();
    const auto b = BowVector(join(other), vocab).ToDense();
    const auto ab = BowVector(join(tokens) + " " + join(other), vocab).ToDense();
    for (std::size_t i = 0; i < ab.size(); ++i) EXPECT_EQ(ab[i], a[i] + b[i]);
  }
}

TEST(BowVector, TrainVocabularyNeverGrows) {
  const Corpus corpus = testing::SyntheticCorpus(6, {.chains = 40});
  std::vector<std::string> train;
  for (std::size_t c = 0; c < 20; ++c) {
    for (const auto& v : corpus.chains[c].versions) train.push_back(v.text);
  }
  const auto vocab = Vocabulary::Build(train, 2);
  const auto size = vocab.size();
  std::size_t oov = 0;
  for (std::size_t c = 20; c < 40; ++c) {
    for (const auto& v : corpus.chains[c].versions) {
      const auto x = BowVector(v.text + " unseenword", vocab, &oov);
      for (const auto& [i, value] : x.entries) EXPECT_LT(i, size);
    }
  }
  EXPECT_GT(oov, 0u);
  EXPECT_EQ(vocab.size(), size);
}

TEST(LengthFeature, Examples) {
  EXPECT_EQ(LengthFeature("Dogs"), 4.0);
  EXPECT_EQ(LengthFeature(""), 0.0);
  EXPECT_EQ(LengthFeature("é"), 1.0);
  EXPECT_EQ(LengthFeature("日本語"), 3.0);
}

TEST(LengthScaler, Standardizes) {
  const std::vector<double> lengths = {2, 4, 4, 4, 5, 5, 7, 9};
  const auto s = LengthScaler::Fit(lengths);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.stddev, 2.0);
  EXPECT_DOUBLE_EQ(s.Apply(9.0), 2.0);
  const std::vector<double> constant = {3, 3};
  EXPECT_EQ(LengthScaler::Fit(constant).Apply(10.0), 0.0);
}

TEST(PairFeatures, DimensionsAndSwap) {
  SparseVector a{{{0, 1.0}, {2, 3.0}}, 3};
  SparseVector b{{{1, 2.0}}, 3};
  LengthScaler scaler{10.0, 5.0};
  EXPECT_EQ(PairFeatures(a, b, false, 0, 0, scaler).dimension, 6u);
  const auto ab = PairFeatures(a, b, true, 20, 5, scaler);
  EXPECT_EQ(ab.dimension, 8u);
  EXPECT_EQ(ab.entries, (Entries{{0, 1.0}, {2, 3.0}, {4, 2.0}, {6, 2.0}, {7, -1.0}}));
  const auto ba = PairFeatures(b, a, true, 5, 20, scaler);
  const auto dab = ab.ToDense();
  const auto dba = ba.ToDense();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(dab[i], dba[i + 3]);
    EXPECT_EQ(dab[i + 3], dba[i]);
  }
  EXPECT_EQ(dab[6], dba[7]);
  EXPECT_EQ(dab[7], dba[6]);
  SparseVector c{{}, 4};
  try {
    PairFeatures(a, c, false, 0, 0, scaler);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(SparseVector, DenseRoundTrip) {
  const std::vector<double> dense = {0.0, 1.5, 0.0, -2.0};
  const auto s = SparseVector::FromDense(dense);
  EXPECT_EQ(s.entries, (Entries{{1, 1.5}, {3, -2.0}}));
  EXPECT_EQ(s.ToDense(), dense);
  const std::vector<double> w = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(s.Dot(w), 3.0 - 8.0);
}

TEST(EmbeddingStore, LoadExamples) {
  std::istringstream in("#dim=4 normalized=false\nv1\t3\t0\t4\t0\nv2\t1\t1\t1\t1\n");
  const auto store = EmbeddingStore::Load(in);
  EXPECT_EQ(store.dimension(), 4u);
  EXPECT_EQ(store.size(), 2u);
  const auto& v1 = store.Lookup("v1");
  EXPECT_NEAR(v1[0], 0.6, 1e-12);
  EXPECT_NEAR(v1[2], 0.8, 1e-12);
  try {
    store.Lookup("absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(EmbeddingStore, WrongDimensionIsParseErrorWithRow) {
  std::istringstream in("#dim=4 normalized=true\nv1\t1\t0\t0\t0\nv2\t1\t0\t0\n");
  try {
    EmbeddingStore::Load(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EmbeddingStore, NormalizedHeaderKeepsValues) {
  std::istringstream in("#dim=2 normalized=true\nv\t3\t4\n");
  const auto store = EmbeddingStore::Load(in);
  EXPECT_EQ(store.Lookup("v"), (std::vector<double>{3.0, 4.0}));
}

TEST(EmbeddingStore, WriteLoadRoundTrip) {
  EmbeddingStore store(3);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    store.Insert("id" + std::to_string(i), {rng.Uniform() - 0.5, rng.Uniform(), rng.Uniform()});
  }
  std::ostringstream out;
  store.Write(out);
  EXPECT_EQ(out.str().rfind("#dim=3 normalized=true\n", 0), 0u);
  std::istringstream in(out.str());
  const auto back = EmbeddingStore::Load(in);
  ASSERT_EQ(back.size(), store.size());
  for (int i = 0; i < 20; ++i) {
    const auto& v = back.Lookup("id" + std::to_string(i));
    double norm = 0.0;
    for (double x : v) norm += x * x;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-5);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(v[k], store.Lookup("id" + std::to_string(i))[k], 5e-7);
    }
  }
  std::ostringstream again;
  back.Write(again);
  EXPECT_EQ(again.str(), out.str());
}

}  // namespace
}  // namespace claimrank
