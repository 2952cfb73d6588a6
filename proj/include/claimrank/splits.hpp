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

// Chain-grouped train/test partitions. Every split works on whole revision
// chains so no claim contributes versions to both sides.

#ifndef CLAIMRANK_SPLITS_HPP_
#define CLAIMRANK_SPLITS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/corpus.hpp"

namespace claimrank {

enum class SplitKind { kRandom, kCrossCategory };

std::string_view SplitKindName(SplitKind kind);
SplitKind SplitKindFromName(std::string_view name);

struct SplitSpec {
  SplitKind kind = SplitKind::kRandom;
  double train_ratio = 0.8;
  std::string held_out_category;
  std::uint64_t seed = 1;
};

struct TrainTest {
  Corpus train;
  Corpus test;
};

struct CategoryFold {
  std::string held_out;
  Corpus train;
  Corpus test;
};

inline constexpr std::string_view kOtherCategory = "other";

// Permutes the chains with the seeded generator; the first
// floor(ratio * N) go to train.
TrainTest RandomSplit(const Corpus& corpus, double ratio, std::uint64_t seed);

// Categories by number of chains listing them, descending, ties
// lexicographic; at most k.
std::vector<std::string> TopCategories(const Corpus& corpus, std::size_t k = 20);

// The highest-ranked entry of `top` that the chain lists, or "other".
std::string PrimaryCategory(const RevisionChain& chain,
                            const std::vector<std::string>& top);

// One fold per top-k category. Test holds the chains whose primary category
// is the held-out one; train holds every chain that does not list it at all.
std::vector<CategoryFold> CrossCategorySplits(const Corpus& corpus,
                                              std::size_t k = 20);

struct ManifestRow {
  std::string chain_id;
  std::string fold;  // "random" or a category name
  std::string role;  // "train" or "test"
};

std::vector<ManifestRow> ManifestFor(const TrainTest& split);
std::vector<ManifestRow> ManifestFor(const std::vector<CategoryFold>& folds);
void WriteManifest(const std::vector<ManifestRow>& rows, std::ostream& out);
std::vector<ManifestRow> ReadManifest(std::istream& in);

// The chains of `corpus` listed in `rows` under (fold, role), in corpus order.
Corpus SelectFromManifest(const Corpus& corpus,
                          const std::vector<ManifestRow>& rows,
                          std::string_view fold, std::string_view role);

}  // namespace claimrank

#endif  // CLAIMRANK_SPLITS_HPP_
