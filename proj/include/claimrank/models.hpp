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

// Pairwise quality scorers. Every model answers the same question for a
// ClaimPair: the probability that `second` is the better version.
//
// Rule baselines (length, random) need no training. The learned kinds are
// L2-regularized logistic regressions over
//
//   single    BOW(second)
//   sbow      [BOW(first) | BOW(second)]
//   sbow-len  [BOW(first) | BOW(second) | z(len first) | z(len second)]
//   emb       [E(first) | E(second)]     (frozen sentence embeddings)
//
// trained by seeded mini-batch gradient descent on
//
//   L(w, b) = 1/N sum_k log(1 + exp(-s_k (w.x_k + b))) + l2/2 |w|^2
//
// with s_k = +1 for true pairs and -1 for false pairs; the bias is not
// regularized.

#ifndef CLAIMRANK_MODELS_HPP_
#define CLAIMRANK_MODELS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "claimrank/features.hpp"
#include "claimrank/pairs.hpp"

namespace claimrank {

enum class ModelKind {
  kLength,
  kRandom,
  kSingleClaim,
  kLogRegBow,
  kLogRegBowLen,
  kLogRegEmb,
};

std::string_view ModelKindName(ModelKind kind);
ModelKind ModelKindFromName(std::string_view name);
bool IsLearned(ModelKind kind);

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 10;
  double l2 = 1e-4;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  std::size_t min_freq = 2;

  // 0.1 for bag-of-words kinds, 0.01 for embeddings.
  static TrainConfig DefaultsFor(ModelKind kind);
  void Validate() const;
};

struct Prediction {
  bool label = false;
  double prob = 0.5;
};

// Longer second claim wins; an exact tie predicts false with prob 0.5.
Prediction LengthPredict(const ClaimPair& pair);

// Fair coin keyed by (seed, first id, second id).
bool RandomPredict(const ClaimPair& pair, std::uint64_t seed);

// Turns pairs into model inputs. Fitted on the unique versions of a
// training set; immutable afterwards.
class FeaturePlan {
 public:
  static FeaturePlan Fit(ModelKind kind, const PairDataset& train,
                         std::size_t min_freq,
                         std::shared_ptr<const EmbeddingStore> embeddings);
  static FeaturePlan FromParts(ModelKind kind, Vocabulary vocab,
                               LengthScaler scaler,
                               std::shared_ptr<const EmbeddingStore> embeddings);

  SparseVector Features(const ClaimPair& pair) const;
  std::size_t dimension() const;

  ModelKind kind() const { return kind_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const LengthScaler& scaler() const { return scaler_; }
  const EmbeddingStore* embeddings() const { return embeddings_.get(); }

 private:
  ModelKind kind_ = ModelKind::kLogRegBow;
  Vocabulary vocab_;
  LengthScaler scaler_;
  std::shared_ptr<const EmbeddingStore> embeddings_;
};

// BOW of the second claim only.
SparseVector SingleClaimFeatures(const ClaimPair& pair, const Vocabulary& vocab);

struct LabeledExample {
  SparseVector x;
  bool label = false;
};

double LogisticObjective(std::span<const LabeledExample> examples,
                         std::span<const double> weights, double bias,
                         double l2);

// Analytic gradient of LogisticObjective.
void LogisticGradient(std::span<const LabeledExample> examples,
                      std::span<const double> weights, double bias, double l2,
                      std::vector<double>& grad_weights, double& grad_bias);

class PairModel {
 public:
  // Length or Random baseline.
  static PairModel Rule(ModelKind kind, std::uint64_t seed = 1);

  // Throws Error(kContract) for an empty or unbalanced training set.
  // `epoch_objective`, when given, receives the full-data objective after
  // every epoch.
  static PairModel Train(const PairDataset& train, ModelKind kind,
                         const TrainConfig& config,
                         std::shared_ptr<const EmbeddingStore> embeddings = nullptr,
                         std::vector<double>* epoch_objective = nullptr);

  // Logistic regression with given parameters; used by tests and loaders.
  static PairModel FromParameters(FeaturePlan plan, std::vector<double> weights,
                                  double bias, TrainConfig config);

  double PredictProb(const ClaimPair& pair) const;
  Prediction Predict(const ClaimPair& pair) const;

  ModelKind kind() const { return kind_; }
  std::uint64_t seed() const { return config_.seed; }
  const TrainConfig& config() const { return config_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const FeaturePlan* plan() const { return plan_.get(); }

  // Text dump. Load recomputes the vocabulary hash and rejects the file
  // when it disagrees with the recorded one.
  void Save(std::ostream& out) const;
  static PairModel Load(std::istream& in,
                        std::shared_ptr<const EmbeddingStore> embeddings = nullptr);

 private:
  ModelKind kind_ = ModelKind::kLength;
  TrainConfig config_;
  std::shared_ptr<const FeaturePlan> plan_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

}  // namespace claimrank

#endif  // CLAIMRANK_MODELS_HPP_
