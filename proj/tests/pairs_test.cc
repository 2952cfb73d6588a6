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

#include "claimrank/pairs.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "claimrank/error.hpp"
#include "synthetic.hpp"

namespace claimrank {
namespace {

using testing::ChainOfLength;
using testing::MakeChain;

using Key = std::tuple<std::string, std::string, bool>;

Key KeyOf(const ClaimPair& p) { return {p.first.version_id, p.second.version_id, p.label}; }

TEST(ConsecutivePairs, FourVersionChain) {
  const auto chain = ChainOfLength("c", 4);
  const auto pairs = ConsecutivePairs(chain);
  ASSERT_EQ(pairs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pairs[i].first.index, i);
    EXPECT_EQ(pairs[i].second.index, i + 1);
    EXPECT_TRUE(pairs[i].label);
    EXPECT_EQ(pairs[i].distance, 1u);
    EXPECT_EQ(pairs[i].revision_type, chain.versions[i + 1].revision_type);
    EXPECT_EQ(pairs[i].categories, chain.categories);
  }
  EXPECT_TRUE(ConsecutivePairs(ChainOfLength("s", 1)).empty());
}

TEST(TransitivePairs, FourVersionChain) {
  const auto pairs = TransitivePairs(ChainOfLength("c", 4));
  ASSERT_EQ(pairs.size(), 6u);
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& p : pairs) {
    got.insert({p.first.index, p.second.index});
    EXPECT_EQ(p.distance, p.second.index - p.first.index);
    EXPECT_TRUE(p.label);
    if (p.distance > 1) {
      EXPECT_EQ(p.revision_type.raw, kMultiRevision);
      EXPECT_EQ(RevisionGroupName(p.revision_type), "multi");
    }
  }
  const std::set<std::pair<std::size_t, std::size_t>> want = {{0, 1}, {1, 2}, {2, 3},
                                                              {0, 2}, {0, 3}, {1, 3}};
  EXPECT_EQ(got, want);
}

TEST(TransitivePairs, DistanceOfV1V3IsTwo) {
  for (const auto& p : TransitivePairs(ChainOfLength("c", 3))) {
    if (p.first.index == 0 && p.second.index == 2) EXPECT_EQ(p.distance, 2u);
  }
}

TEST(TransitivePairs, TwoVersionsMatchConsecutive) {
  const auto chain = ChainOfLength("c", 2);
  const auto a = TransitivePairs(chain);
  const auto b = ConsecutivePairs(chain);
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(KeyOf(a[0]), KeyOf(b[0]));
  EXPECT_EQ(a[0].revision_type, b[0].revision_type);
}

TEST(TransitivePairs, CountAndSupersetBruteForce) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto chain = ChainOfLength("c", n);
    const auto ext = TransitivePairs(chain);
    EXPECT_EQ(ext.size(), n * (n - 1) / 2);
    std::set<Key> ext_keys;
    for (const auto& p : ext) ext_keys.insert(KeyOf(p));
    for (const auto& p : ConsecutivePairs(chain)) EXPECT_TRUE(ext_keys.count(KeyOf(p)));
    std::map<std::size_t, std::size_t> brute;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) ++brute[j - i];
    }
    PairDataset ds;
    ds.pairs = ext;
    EXPECT_EQ(DistanceHistogram(ds), brute);
  }
}

TEST(DistanceHistogram, Examples) {
  PairDataset ext;
  ext.pairs = TransitivePairs(ChainOfLength("c", 4));
  EXPECT_EQ(DistanceHistogram(ext), (std::map<std::size_t, std::size_t>{{1, 3}, {2, 2}, {3, 1}}));
  Corpus corpus = testing::SyntheticCorpus(4);
  const auto base = GeneratePairs(corpus, PairKind::kBase);
  const auto hist = DistanceHistogram(base);
  ASSERT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.begin()->first, 1u);
}

TEST(ChainDistanceHistogram, MaxDistancePerChain) {
  Corpus corpus;
  corpus.chains = {ChainOfLength("a", 1), ChainOfLength("b", 2), ChainOfLength("c", 4),
                   ChainOfLength("d", 4)};
  EXPECT_EQ(ChainDistanceHistogram(corpus),
            (std::map<std::size_t, std::size_t>{{1, 1}, {3, 2}}));
}

TEST(BalancePairs, OneTruePair) {
  PairDataset ds;
  ds.pairs = ConsecutivePairs(ChainOfLength("c", 2));
  const auto out = BalancePairs(ds, 7);
  ASSERT_EQ(out.pairs.size(), 2u);
  EXPECT_EQ(out.TrueCount(), 1u);
  EXPECT_TRUE(out.balanced);
}

TEST(BalancePairs, EmptyStaysEmpty) {
  const auto out = BalancePairs(PairDataset{}, 1);
  EXPECT_TRUE(out.pairs.empty());
}

TEST(BalancePairs, RejectsFalseInput) {
  PairDataset ds;
  ds.pairs = ConsecutivePairs(ChainOfLength("c", 2));
  ds.pairs.push_back(Swapped(ds.pairs[0]));
  try {
    BalancePairs(ds, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(BalancePairs, InvolutionAndDeterminism) {
  const Corpus corpus = testing::SyntheticCorpus(11);
  for (PairKind kind : {PairKind::kBase, PairKind::kExt}) {
    const auto raw = GeneratePairs(corpus, kind);
    const auto a = BalancePairs(raw, 5);
    const auto b = BalancePairs(raw, 5);
    const auto c = BalancePairs(raw, 6);
    ASSERT_EQ(a.pairs.size(), 2 * raw.pairs.size());
    EXPECT_EQ(a.TrueCount(), raw.pairs.size());
    std::multiset<Key> keys, swapped;
    bool same = true, differs = false;
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      keys.insert(KeyOf(a.pairs[i]));
      swapped.insert(KeyOf(Swapped(a.pairs[i])));
      same = same && KeyOf(a.pairs[i]) == KeyOf(b.pairs[i]);
      differs = differs || KeyOf(a.pairs[i]) != KeyOf(c.pairs[i]);
    }
    EXPECT_EQ(keys, swapped);
    EXPECT_TRUE(same);
    EXPECT_TRUE(differs);
    for (const auto& p : a.pairs) {
      EXPECT_EQ(p.label, p.second.index > p.first.index);
      EXPECT_EQ(p.distance, p.second.index > p.first.index ? p.second.index - p.first.index
                                                           : p.first.index - p.second.index);
    }
  }
}

TEST(PairFile, RoundTrip) {
  Corpus corpus = testing::SyntheticCorpus(2, {.chains = 20});
  corpus.chains.push_back(MakeChain("odd", {"tab\there", "back\\slash\nnewline"}, {"X|Y", "Z"},
                                    {"Typo fix"}));
  const auto ds = BalancePairs(GeneratePairs(corpus, PairKind::kExt), 3);
  std::ostringstream out;
  out << "# claimrank pairs config=0 seeds=3\n";
  WritePairs(ds, out);
  EXPECT_NE(out.str().find("chain_id\tfirst_id\tsecond_id\tfirst_text\tsecond_text\tlabel\t"
                           "distance\trevision_type\tcategories\n"),
            std::string::npos);
  std::istringstream in(out.str());
  const auto back = ReadPairs(in);
  ASSERT_EQ(back.pairs.size(), ds.pairs.size());
  for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
    const auto& a = ds.pairs[i];
    const auto& b = back.pairs[i];
    EXPECT_EQ(KeyOf(a), KeyOf(b));
    EXPECT_EQ(a.first.text, b.first.text);
    EXPECT_EQ(a.second.text, b.second.text);
    EXPECT_EQ(a.distance, b.distance);
    EXPECT_EQ(RevisionGroupName(a.revision_type), RevisionGroupName(b.revision_type));
    EXPECT_EQ(a.categories, b.categories);
    EXPECT_EQ(a.chain_id, b.chain_id);
  }
  std::ostringstream again;
  again << "# claimrank pairs config=0 seeds=3\n";
  WritePairs(back, again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(PairFile, BadRowReportsLine) {
  std::istringstream in(
      "chain_id\tfirst_id\tsecond_id\tfirst_text\tsecond_text\tlabel\tdistance\trevision_type\t"
      "categories\nc\ta\tb\tx\ty\t2\t1\tMisc\tA\n");
  try {
    ReadPairs(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace claimrank
