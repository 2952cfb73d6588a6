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

// Config-driven pipeline runs: ingest filters, pair generation and the
// split -> train -> evaluate loop over seeds or category folds.

#ifndef CLAIMRANK_EXPERIMENT_HPP_
#define CLAIMRANK_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/eval.hpp"
#include "claimrank/features.hpp"
#include "claimrank/models.hpp"
#include "claimrank/pairs.hpp"
#include "claimrank/ranking.hpp"
#include "claimrank/splits.hpp"

namespace claimrank {

enum class RankerKind { kNone, kBtl, kSvmRank, kRandom };

std::string_view RankerKindName(RankerKind kind);
RankerKind RankerKindFromName(std::string_view name);

// Flat key=value settings. Defaults follow the reference protocol: 80/20
// chain split, similarity threshold 0.8, minimum 4 characters, top 20
// categories, five seeded runs.
struct RunConfig {
  std::string corpus;
  std::string embeddings;
  std::string out_dir = ".";

  std::string language = "en";
  std::size_t min_chars = 4;
  double threshold = 0.8;

  PairKind kind = PairKind::kBase;
  std::optional<PairKind> test_kind;  // defaults to `kind`

  SplitKind split = SplitKind::kRandom;
  double ratio = 0.8;
  std::size_t top_k = 20;

  ModelKind model = ModelKind::kLength;
  std::optional<double> learning_rate;  // defaults per model kind
  std::size_t epochs = 10;
  double l2 = 1e-4;
  std::size_t batch_size = 64;
  std::size_t min_freq = 2;

  RankerKind ranker = RankerKind::kNone;
  double ranker_c = 1.0;
  std::size_t ranker_epochs = 20;
  double ranker_learning_rate = 0.1;

  GainScheme gains = GainScheme::kLinear;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  // Throws Error(kInvalidArgument) for unknown keys or bad values.
  void Set(std::string_view key, std::string_view value);
  // Lines `key = value`; '#' starts a comment.
  static RunConfig LoadFile(const std::string& path);
  static RunConfig Parse(std::string_view text);

  // `runs=N` shorthand: seeds 1..N.
  void SetRuns(std::size_t runs);

  TrainConfig TrainConfigFor(std::uint64_t seed) const;
  RankerConfig RankerConfigFor(std::uint64_t seed) const;
  PairKind EffectiveTestKind() const { return test_kind.value_or(kind); }

  // Every setting as sorted key=value lines.
  std::string Canonical() const;
  // 16 hex digits of FNV-1a over Canonical().
  std::string Hash() const;
  // "# claimrank <command> config=<hash> seeds=<s1,s2,...>"
  std::string HeaderLine(std::string_view command) const;
};

// Language filter, short-claim filter, meaning-change filter.
Corpus Ingest(Corpus raw, const RunConfig& config);

// BASE or EXT pairs, balanced with `seed`.
PairDataset MakeBalancedPairs(const Corpus& corpus, PairKind kind,
                              std::uint64_t seed);

struct ExperimentResult {
  std::vector<EvaluationReport> classification_runs;
  EvaluationReport classification;
  std::vector<EvaluationReport> ranking_runs;
  EvaluationReport ranking;
};

// Random split: one run per seed, averaged. Cross-category: one run per
// fold (seeded with the first seed), macro-averaged over folds. Errors are
// rethrown with the failing stage in the message.
ExperimentResult RunExperiment(const Corpus& corpus, const RunConfig& config,
                               std::shared_ptr<const EmbeddingStore> embeddings = nullptr);

// classification_runs.jsonl, classification.jsonl, ranking_runs.jsonl,
// ranking.jsonl (when ranking ran) and report.txt under `dir`.
void WriteExperiment(const ExperimentResult& result, const RunConfig& config,
                     const std::string& dir);

}  // namespace claimrank

#endif  // CLAIMRANK_EXPERIMENT_HPP_
