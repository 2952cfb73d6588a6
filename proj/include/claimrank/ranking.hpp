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

#ifndef CLAIMRANK_RANKING_HPP_
#define CLAIMRANK_RANKING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/features.hpp"
#include "claimrank/pairs.hpp"

namespace claimrank {

// Pairwise win probabilities for the versions of one chain: entry (i, j) is
// the probability that version i beats version j. Zero diagonal and
// complementary off-diagonal entries.
class ScoreMatrix {
 public:
  explicit ScoreMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}
  static ScoreMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

  // Throws Error(kContract) unless n >= 2, the diagonal is zero, entries lie
  // in [0, 1] and M(i,j) + M(j,i) = 1 within `tol`.
  void Validate(double tol = 1e-9) const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

using PairProbability = std::function<double(const ClaimPair&)>;

// M(i,j) = (p + 1 - q) / 2 with p = prob(first=v_j, second=v_i) and
// q = prob(first=v_i, second=v_j).
ScoreMatrix BuildScoreMatrix(const RevisionChain& chain,
                             const PairProbability& prob);

struct BtlOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  double epsilon = 1e-6;
};

struct BtlStrengths {
  std::vector<double> strengths;  // positive, sums to 1
  bool converged = false;
  std::size_t iterations = 0;
};

// Bradley-Terry-Luce maximum likelihood by minorization-maximization, with
// w_ij = M(i,j) + epsilon treated as fractional wins of i over j.
BtlStrengths BtlFit(const ScoreMatrix& matrix, const BtlOptions& options = {});

// Best first.
struct Ranking {
  std::vector<std::size_t> order;
};

// Indices by descending score; exact ties put the higher index first.
Ranking RankByScore(std::span<const double> scores);
Ranking BtlRank(const BtlStrengths& strengths);

// Per-version inputs for the linear ranker: BOW plus standardized length,
// or the version's sentence embedding.
class VersionFeaturizer {
 public:
  static VersionFeaturizer FitBow(const Corpus& train, std::size_t min_freq);
  static VersionFeaturizer ForEmbeddings(std::shared_ptr<const EmbeddingStore> store);
  static VersionFeaturizer FromParts(Vocabulary vocab, LengthScaler scaler);

  SparseVector operator()(const ClaimVersion& version) const;
  std::size_t dimension() const;

  bool uses_embeddings() const { return embeddings_ != nullptr; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const LengthScaler& scaler() const { return scaler_; }

 private:
  Vocabulary vocab_;
  LengthScaler scaler_;
  std::shared_ptr<const EmbeddingStore> embeddings_;
};

// Feature vectors of one chain's versions, oldest first.
using ChainFeatures = std::vector<SparseVector>;

struct RankerConfig {
  double c = 1.0;
  std::size_t epochs = 20;
  double learning_rate = 0.1;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  // Exact subgradient steps over all pairs with step learning_rate/(t+1).
  bool full_batch = false;
};

// 1/2 |w|^2 + C * sum over ordered pairs max(0, 1 - w.(x_later - x_earlier)).
double SvmRankObjective(std::span<const ChainFeatures> chains,
                        std::span<const double> weights, double c);
void SvmRankSubgradient(std::span<const ChainFeatures> chains,
                        std::span<const double> weights, double c,
                        std::vector<double>& grad);

class LinearRanker {
 public:
  LinearRanker() = default;
  LinearRanker(std::vector<double> weights, RankerConfig config,
               std::shared_ptr<const VersionFeaturizer> featurizer)
      : weights_(std::move(weights)),
        config_(config),
        featurizer_(std::move(featurizer)) {}

  double Score(const SparseVector& x) const { return x.Dot(weights_); }
  Ranking Rank(const ChainFeatures& chain) const;
  // Featurizes with the stored featurizer; missing embeddings throw
  // Error(kNotFound).
  Ranking Rank(const RevisionChain& chain) const;

  const std::vector<double>& weights() const { return weights_; }
  const RankerConfig& config() const { return config_; }
  const VersionFeaturizer* featurizer() const { return featurizer_.get(); }

  void Save(std::ostream& out) const;
  static LinearRanker Load(std::istream& in,
                           std::shared_ptr<const EmbeddingStore> embeddings = nullptr);

 private:
  std::vector<double> weights_;
  RankerConfig config_;
  std::shared_ptr<const VersionFeaturizer> featurizer_;
};

// Throws Error(kContract) when no chain has two versions or C <= 0.
// `epoch_objective` receives SvmRankObjective after each epoch.
LinearRanker SvmRankTrain(std::span<const ChainFeatures> chains,
                          const RankerConfig& config,
                          std::vector<double>* epoch_objective = nullptr);

// Featurizes `train` with `featurizer` and trains on it.
LinearRanker SvmRankTrain(const Corpus& train,
                          std::shared_ptr<const VersionFeaturizer> featurizer,
                          const RankerConfig& config);

// One line of a ranking file: chain id, version ids best first, and the BTL
// strengths in the same order (empty for other rankers).
struct RankedChain {
  std::string chain_id;
  std::vector<std::string> order;
  std::vector<double> strengths;
};

RankedChain MakeRankedChain(const RevisionChain& chain, const Ranking& ranking,
                            std::span<const double> strengths = {});
void WriteRankings(std::span<const RankedChain> rankings, std::ostream& out);
std::vector<RankedChain> ReadRankings(std::istream& in);

// Maps the version ids of `ranked` back to indices of `chain`. Throws
// Error(kValidation) unless it names every version exactly once.
Ranking RankingForChain(const RankedChain& ranked, const RevisionChain& chain);

}  // namespace claimrank

#endif  // CLAIMRANK_RANKING_HPP_
