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

#include "claimrank/splits.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"
#include "synthetic.hpp"

namespace claimrank {
namespace {

using testing::ChainOfLength;

std::set<std::string> Ids(const Corpus& c) {
  std::set<std::string> ids;
  for (const auto& chain : c.chains) ids.insert(chain.chain_id);
  return ids;
}

bool Lists(const RevisionChain& chain, const std::string& category) {
  return std::find(chain.categories.begin(), chain.categories.end(), category) !=
         chain.categories.end();
}

TEST(RandomSplit, TenChains) {
  Corpus corpus;
  for (int i = 0; i < 10; ++i) corpus.chains.push_back(ChainOfLength("c" + std::to_string(i), 2));
  const auto split = RandomSplit(corpus, 0.8, 1);
  EXPECT_EQ(split.train.chains.size(), 8u);
  EXPECT_EQ(split.test.chains.size(), 2u);
}

TEST(RandomSplit, DeterministicPerSeed) {
  const Corpus corpus = testing::SyntheticCorpus(3);
  const auto a = RandomSplit(corpus, 0.8, 42);
  const auto b = RandomSplit(corpus, 0.8, 42);
  const auto c = RandomSplit(corpus, 0.8, 43);
  EXPECT_EQ(a.train.chains, b.train.chains);
  EXPECT_EQ(a.test.chains, b.test.chains);
  EXPECT_NE(a.train.chains, c.train.chains);
}

TEST(RandomSplit, PartitionForManySeeds) {
  const Corpus corpus = testing::SyntheticCorpus(5, {.chains = 37});
  const auto all = Ids(corpus);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto split = RandomSplit(corpus, 0.7, seed);
    const auto train = Ids(split.train);
    const auto test = Ids(split.test);
    std::set<std::string> both;
    std::set_intersection(train.begin(), train.end(), test.begin(), test.end(),
                          std::inserter(both, both.end()));
    EXPECT_TRUE(both.empty());
    std::set<std::string> all_out = train;
    all_out.insert(test.begin(), test.end());
    EXPECT_EQ(all_out, all);
    EXPECT_EQ(split.train.chains.size(), 25u);
  }
}

TEST(RandomSplit, RejectsBadInput) {
  const Corpus corpus = testing::SyntheticCorpus(5, {.chains = 3});
  EXPECT_THROW(RandomSplit(corpus, 0.0, 1), Error);
  EXPECT_THROW(RandomSplit(corpus, 1.0, 1), Error);
  EXPECT_THROW(RandomSplit(Corpus{}, 0.5, 1), Error);
}

Corpus CategoryCorpus(const std::vector<std::vector<std::string>>& categories) {
  Corpus corpus;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    corpus.chains.push_back(ChainOfLength("c" + std::to_string(i), 2, categories[i]));
  }
  return corpus;
}

TEST(TopCategories, Examples) {
  EXPECT_EQ(TopCategories(CategoryCorpus({{"A"}, {"A"}, {"A"}, {"B"}}), 2),
            (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(TopCategories(CategoryCorpus({{"B"}, {"B"}, {"A"}, {"A"}}), 2),
            (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(TopCategories(CategoryCorpus({{"B"}, {"A"}}), 10),
            (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(TopCategories(CategoryCorpus({{"C"}, {"C", "A"}, {"B"}, {"A"}, {"C"}}), 1),
            (std::vector<std::string>{"C"}));
}

TEST(CrossCategorySplits, Examples) {
  const Corpus corpus = CategoryCorpus({{"A"}, {"A"}, {"A"}, {"B"}, {"B"}, {"C"}, {"B", "A"},
                                        {"D"}});
  const auto folds = CrossCategorySplits(corpus, 3);
  ASSERT_EQ(folds.size(), 3u);
  EXPECT_EQ(folds[0].held_out, "A");
  // [B, A] with A ranked above B: primary category A.
  EXPECT_EQ(PrimaryCategory(corpus.chains[6], TopCategories(corpus, 3)), "A");
  EXPECT_EQ(Ids(folds[0].test), (std::set<std::string>{"c0", "c1", "c2", "c6"}));
  // The B fold keeps c6 out of both sides: it lists B but its primary is A.
  EXPECT_EQ(Ids(folds[1].test), (std::set<std::string>{"c3", "c4"}));
  EXPECT_FALSE(Ids(folds[1].train).count("c6"));
  // c7 (category D) is outside the top 3 and never tested.
  for (const auto& fold : folds) EXPECT_FALSE(Ids(fold.test).count("c7"));
  EXPECT_EQ(PrimaryCategory(corpus.chains[7], TopCategories(corpus, 3)), kOtherCategory);
}

TEST(CrossCategorySplits, NoLeakageOnRandomCorpora) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::SyntheticOptions options;
    options.chains = 60;
    options.categories = {"a", "b", "c", "d", "e", "f", "g"};
    const Corpus corpus = testing::SyntheticCorpus(seed, options);
    const std::size_t k = 1 + seed % 6;
    const auto top = TopCategories(corpus, k);
    const auto folds = CrossCategorySplits(corpus, k);
    ASSERT_EQ(folds.size(), top.size());
    std::set<std::string> tested;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      EXPECT_EQ(folds[f].held_out, top[f]);
      for (const auto& chain : folds[f].train.chains) EXPECT_FALSE(Lists(chain, top[f]));
      for (const auto& chain : folds[f].test.chains) {
        EXPECT_EQ(PrimaryCategory(chain, top), top[f]);
        EXPECT_TRUE(tested.insert(chain.chain_id).second);
      }
    }
  }
}

TEST(Manifest, RoundTripAndSelect) {
  const Corpus corpus = testing::SyntheticCorpus(8, {.chains = 30});
  const auto split = RandomSplit(corpus, 0.8, 3);
  std::vector<ManifestRow> rows = ManifestFor(split);
  const auto folds = CrossCategorySplits(corpus, 3);
  const auto fold_rows = ManifestFor(folds);
  rows.insert(rows.end(), fold_rows.begin(), fold_rows.end());
  std::ostringstream out;
  out << "# claimrank split config=0 seeds=3\n";
  WriteManifest(rows, out);
  std::istringstream in(out.str());
  const auto back = ReadManifest(in);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(Ids(SelectFromManifest(corpus, back, "random", "train")), Ids(split.train));
  EXPECT_EQ(Ids(SelectFromManifest(corpus, back, "random", "test")), Ids(split.test));
  EXPECT_EQ(Ids(SelectFromManifest(corpus, back, folds[1].held_out, "test")),
            Ids(folds[1].test));
  EXPECT_EQ(Ids(SelectFromManifest(corpus, back, folds[1].held_out, "train")),
            Ids(folds[1].train));
}

TEST(Manifest, UnknownChainIsNotFound) {
  const Corpus corpus = testing::SyntheticCorpus(8, {.chains = 3});
  const std::vector<ManifestRow> rows = {{"nope", "random", "train"}};
  try {
    SelectFromManifest(corpus, rows, "random", "train");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(Manifest, BadRoleIsParseError) {
  std::istringstream in("chain_id\tfold\trole\nc1\trandom\tvalidate\n");
  EXPECT_THROW(ReadManifest(in), Error);
}

}  // namespace
}  // namespace claimrank
