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

#ifndef CLAIMRANK_EVAL_HPP_
#define CLAIMRANK_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/models.hpp"
#include "claimrank/pairs.hpp"
#include "claimrank/ranking.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  void Add(bool truth, bool predicted);
};

// A metric value plus whether a zero-denominator convention produced it.
struct MetricValue {
  double value = 0.0;
  bool degenerate = false;
};

// Throws Error(kUndefinedInput) on empty counts.
double Accuracy(const ConfusionCounts& counts);
MetricValue Mcc(const ConfusionCounts& counts);

// Throw Error(kContract) on length mismatch or fewer than two values.
// A constant input yields 0 with the degenerate flag set.
MetricValue PearsonR(std::span<const double> x, std::span<const double> y);
MetricValue SpearmanRho(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties get the mean of the ranks they span.
std::vector<double> FractionalRanks(std::span<const double> values);

// DCG/IDCG with gains relevance[item] and discount log2(rank + 1).
// Throws Error(kUndefinedInput) when every gain is zero.
double Ndcg(const Ranking& predicted, std::span<const double> relevance);

double Mrr(const Ranking& predicted, std::size_t target);
int Top1(const Ranking& predicted, std::size_t target);

// Labels are compared as strings. p_e == 1 yields 1 (if p_o == 1) or 0,
// with the degenerate flag set.
MetricValue CohensKappa(std::span<const std::string> a,
                        std::span<const std::string> b);

enum class GainScheme {
  kLinear,       // gain(v_i) = i, versions numbered from 1
  kExponential,  // 2^i - 1
};

std::vector<double> VersionGains(std::size_t n, GainScheme scheme);

struct MetricRow {
  std::string metric;
  std::string group;
  double value = 0.0;
  std::size_t n = 0;
  std::string seed;
  std::string fold;
  bool degenerate = false;
};

class EvaluationReport {
 public:
  void Add(MetricRow row) { rows_.push_back(std::move(row)); }
  void Append(const EvaluationReport& other);

  // First row matching metric and group, or nullptr.
  const MetricRow* Find(std::string_view metric, std::string_view group) const;
  double Value(std::string_view metric, std::string_view group = "overall") const;

  const std::vector<MetricRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Stamps seed and fold on every row.
  void SetProvenance(std::string_view seed, std::string_view fold);

  // One JSON record per line with keys metric, group, value, n, seed, fold
  // (and degenerate when set).
  void WriteRecords(std::ostream& out) const;
  static EvaluationReport ReadRecords(std::istream& in);

  // Aligned-column text.
  std::string Render(std::string_view title = "") const;

 private:
  std::vector<MetricRow> rows_;
};

// Unweighted mean over reports of every (metric, group) present in the first
// one; n is summed, seed/fold are set to `seed` and `fold`.
EvaluationReport AverageReports(std::span<const EvaluationReport> reports,
                                std::string_view seed, std::string_view fold);

using PairPredictor = std::function<Prediction(const ClaimPair&)>;

struct ClassificationOptions {
  bool per_revision_type = true;
  bool per_distance = true;
  // Per-category rows for these categories (pairs count once per listed one).
  std::vector<std::string> categories;
};

// Accuracy and MCC overall, and by revision type and distance bucket
// (1..5 and "6+").
EvaluationReport EvaluateClassification(const PairPredictor& predict,
                                        const PairDataset& test,
                                        const ClassificationOptions& options = {});
EvaluationReport EvaluateClassification(const PairModel& model,
                                        const PairDataset& test,
                                        const ClassificationOptions& options = {});

using ChainRanker = std::function<Ranking(const RevisionChain&)>;

// Per chain: Pearson and Spearman between predicted and true ranks, NDCG
// with version gains, MRR and Top-1 for the latest version. Reports means
// over chains of length >= 2 (shorter chains are skipped).
EvaluationReport EvaluateRanking(const ChainRanker& rank,
                                 std::span<const RevisionChain> chains,
                                 GainScheme gains = GainScheme::kLinear);

// Uniformly random permutation.
Ranking RandomRanking(std::size_t n, Rng& rng);

}  // namespace claimrank

#endif  // CLAIMRANK_EVAL_HPP_
