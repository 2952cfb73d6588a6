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

#ifndef CLAIMRANK_PAIRS_HPP_
#define CLAIMRANK_PAIRS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/corpus.hpp"

namespace claimrank {

// Raw label given to pairs spanning more than one revision.
inline constexpr std::string_view kMultiRevision = "multi";

// `label` is true iff `second` is the later (presumed better) version.
struct ClaimPair {
  std::string chain_id;
  ClaimVersion first;
  ClaimVersion second;
  bool label = true;
  std::size_t distance = 1;
  RevisionTypeLabel revision_type;
  std::vector<std::string> categories;
};

enum class PairKind { kBase, kExt };

std::string_view PairKindName(PairKind kind);
PairKind PairKindFromName(std::string_view name);

struct PairDataset {
  std::vector<ClaimPair> pairs;
  PairKind kind = PairKind::kBase;
  bool balanced = false;

  std::size_t TrueCount() const;
};

// Group name used in breakdowns: the canonical type name, or "multi".
std::string RevisionGroupName(const RevisionTypeLabel& label);

std::vector<ClaimPair> ConsecutivePairs(const RevisionChain& chain);
std::vector<ClaimPair> TransitivePairs(const RevisionChain& chain);
PairDataset GeneratePairs(const Corpus& corpus, PairKind kind);

// The order-swapped pair with the label negated.
ClaimPair Swapped(const ClaimPair& pair);

// Adds the swapped, false-labeled copy of every pair and shuffles the result
// with a generator seeded by `seed`. Throws Error(kContract) if the input
// already holds a false pair.
PairDataset BalancePairs(const PairDataset& dataset, std::uint64_t seed);

std::map<std::size_t, std::size_t> DistanceHistogram(const PairDataset& dataset);

// Number of chains by their maximum revision distance (length - 1); chains
// of a single version are not counted.
std::map<std::size_t, std::size_t> ChainDistanceHistogram(const Corpus& corpus);

// Tab-separated, one pair per row after the column header. Tabs, newlines
// and backslashes in text fields are backslash-escaped, and a '|' inside a
// category name is written as \p. Reading recovers version indices only up
// to the relative order implied by label/distance.
void WritePairs(const PairDataset& dataset, std::ostream& out);
PairDataset ReadPairs(std::istream& in);

}  // namespace claimrank

#endif  // CLAIMRANK_PAIRS_HPP_
