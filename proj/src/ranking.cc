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

#include "claimrank/ranking.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {
namespace {

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct OrderedPair {
  std::size_t chain;
  std::size_t earlier;
  std::size_t later;
};

std::vector<OrderedPair> EnumeratePairs(std::span<const ChainFeatures> chains) {
  std::vector<OrderedPair> pairs;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      for (std::size_t j = i + 1; j < chains[c].size(); ++j) pairs.push_back({c, i, j});
    }
  }
  return pairs;
}

std::size_t Dimension(std::span<const ChainFeatures> chains) {
  std::size_t dim = 0;
  for (const auto& chain : chains) {
    for (const auto& x : chain) dim = std::max(dim, x.dimension);
  }
  return dim;
}

}  // namespace

ScoreMatrix ScoreMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  ScoreMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) ThrowContract("score matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

void ScoreMatrix::Validate(double tol) const {
  if (n_ < 2) ThrowContract("score matrix needs at least two versions");
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) ThrowContract("score matrix diagonal must be zero");
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = (*this)(i, j);
      if (!(v >= 0.0 && v <= 1.0)) ThrowContract("score matrix entries must lie in [0, 1]");
      if (i != j && std::abs(v + (*this)(j, i) - 1.0) > tol) {
        ThrowContract("score matrix entries (" + std::to_string(i) + "," +
                      std::to_string(j) + ") are not complementary");
      }
    }
  }
}

ScoreMatrix BuildScoreMatrix(const RevisionChain& chain, const PairProbability& prob) {
  const std::size_t n = chain.size();
  if (n < 2) ThrowContract("score matrix needs at least two versions");
  ScoreMatrix m(n);
  auto make = [&chain](std::size_t first, std::size_t second) {
    ClaimPair pair;
    pair.chain_id = chain.chain_id;
    pair.first = chain.versions[first];
    pair.second = chain.versions[second];
    pair.label = second > first;
    pair.distance = second > first ? second - first : first - second;
    pair.categories = chain.categories;
    return pair;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = prob(make(j, i));  // P(v_i beats v_j), v_i fed second
      const double q = prob(make(i, j));  // P(v_j beats v_i)
      const double mij = std::clamp((p + (1.0 - q)) / 2.0, 0.0, 1.0);
      m.at(i, j) = mij;
      m.at(j, i) = 1.0 - mij;
    }
  }
  return m;
}

BtlStrengths BtlFit(const ScoreMatrix& matrix, const BtlOptions& options) {
  matrix.Validate();
  const std::size_t n = matrix.size();
  std::vector<double> w(n * n, 0.0);
  std::vector<double> wins(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      w[i * n + j] = matrix(i, j) + options.epsilon;
      wins[i] += w[i * n + j];
    }
  }
  BtlStrengths result;
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double denom = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom += (w[i * n + j] + w[j * n + i]) / (pi[i] + pi[j]);
      }
      next[i] = wins[i] / denom;
      total += next[i];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      change = std::max(change, std::abs(next[i] - pi[i]));
    }
    pi.swap(next);
    result.iterations = iter;
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.strengths = std::move(pi);
  return result;
}

Ranking RankByScore(std::span<const double> scores) {
  Ranking ranking;
  ranking.order.resize(scores.size());
  std::iota(ranking.order.begin(), ranking.order.end(), 0);
  std::sort(ranking.order.begin(), ranking.order.end(),
            [&scores](std::size_t a, std::size_t b) {
              if (scores[a] != scores[b]) return scores[a] > scores[b];
              return a > b;
            });
  return ranking;
}

Ranking BtlRank(const BtlStrengths& strengths) { return RankByScore(strengths.strengths); }

VersionFeaturizer VersionFeaturizer::FitBow(const Corpus& train, std::size_t min_freq) {
  std::vector<std::string> texts;
  std::vector<double> lengths;
  for (const auto& chain : train.chains) {
    for (const auto& v : chain.versions) {
      texts.push_back(v.text);
      lengths.push_back(LengthFeature(v.text));
    }
  }
  return FromParts(Vocabulary::Build(texts, min_freq), LengthScaler::Fit(lengths));
}

VersionFeaturizer VersionFeaturizer::ForEmbeddings(
    std::shared_ptr<const EmbeddingStore> store) {
  if (store == nullptr) ThrowContract("embedding featurizer requires a store");
  VersionFeaturizer f;
  f.embeddings_ = std::move(store);
  return f;
}

VersionFeaturizer VersionFeaturizer::FromParts(Vocabulary vocab, LengthScaler scaler) {
  VersionFeaturizer f;
  f.vocab_ = std::move(vocab);
  f.scaler_ = scaler;
  return f;
}

std::size_t VersionFeaturizer::dimension() const {
  return embeddings_ ? embeddings_->dimension() : vocab_.size() + 1;
}

SparseVector VersionFeaturizer::operator()(const ClaimVersion& version) const {
  if (embeddings_) return SparseVector::FromDense(embeddings_->Lookup(version.version_id));
  SparseVector x = BowVector(version.text, vocab_);
  x.dimension = vocab_.size() + 1;
  const double z = scaler_.Apply(LengthFeature(version.text));
  if (z != 0.0) x.entries.emplace_back(static_cast<std::uint32_t>(vocab_.size()), z);
  return x;
}

double SvmRankObjective(std::span<const ChainFeatures> chains,
                        std::span<const double> weights, double c) {
  double hinge = 0.0;
  for (const auto& chain : chains) {
    std::vector<double> scores;
    scores.reserve(chain.size());
    for (const auto& x : chain) scores.push_back(x.Dot(weights));
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        hinge += std::max(0.0, 1.0 - (scores[j] - scores[i]));
      }
    }
  }
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return 0.5 * sq + c * hinge;
}

void SvmRankSubgradient(std::span<const ChainFeatures> chains,
                        std::span<const double> weights, double c,
                        std::vector<double>& grad) {
  grad.assign(weights.begin(), weights.end());
  for (const auto& chain : chains) {
    std::vector<double> scores;
    scores.reserve(chain.size());
    for (const auto& x : chain) scores.push_back(x.Dot(weights));
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        if (1.0 - (scores[j] - scores[i]) <= 0.0) continue;
        for (const auto& [index, value] : chain[j].entries) grad[index] -= c * value;
        for (const auto& [index, value] : chain[i].entries) grad[index] += c * value;
      }
    }
  }
}

LinearRanker SvmRankTrain(std::span<const ChainFeatures> chains, const RankerConfig& config,
                          std::vector<double>* epoch_objective) {
  if (!(config.c > 0.0)) ThrowContract("C must be > 0");
  if (config.epochs < 1) ThrowContract("epochs must be >= 1");
  if (!(config.learning_rate > 0.0)) ThrowContract("learning_rate must be > 0");
  if (config.batch_size < 1) ThrowContract("batch_size must be >= 1");
  const std::vector<OrderedPair> pairs = EnumeratePairs(chains);
  if (pairs.empty()) ThrowContract("no trainable pairs: every chain has one version");
  const std::size_t dim = Dimension(chains);
  const double m = static_cast<double>(pairs.size());
  // Same minimizer as 1/2|w|^2 + C sum hinge, scaled by 1/(C m).
  const double lambda = 1.0 / (config.c * m);

  std::vector<double> w(dim, 0.0);
  if (config.full_batch) {
    std::vector<double> grad;
    for (std::size_t t = 0; t < config.epochs; ++t) {
      SvmRankSubgradient(chains, w, config.c, grad);
      const double step = config.learning_rate / static_cast<double>(t + 1) / (config.c * m);
      for (std::size_t j = 0; j < dim; ++j) w[j] -= step * grad[j];
      if (epoch_objective != nullptr) {
        epoch_objective->push_back(SvmRankObjective(chains, w, config.c));
      }
    }
    return LinearRanker(std::move(w), config, nullptr);
  }

  // w = scale * v so the shrinkage from the regularizer is O(1) per step.
  std::vector<double> v(dim, 0.0);
  double scale = 1.0;
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  std::vector<std::size_t> active;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    const double eta = config.learning_rate / std::sqrt(static_cast<double>(epoch + 1));
    const double shrink = 1.0 - eta * lambda;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      active.clear();
      for (std::size_t k = start; k < end; ++k) {
        const OrderedPair& p = pairs[order[k]];
        const auto& chain = chains[p.chain];
        const double margin = scale * (chain[p.later].Dot(v) - chain[p.earlier].Dot(v));
        if (margin < 1.0) active.push_back(order[k]);
      }
      if (shrink > 0.0) scale *= shrink;
      const double step = eta / static_cast<double>(end - start) / scale;
      for (std::size_t k : active) {
        const OrderedPair& p = pairs[k];
        const auto& chain = chains[p.chain];
        for (const auto& [index, value] : chain[p.later].entries) v[index] += step * value;
        for (const auto& [index, value] : chain[p.earlier].entries) v[index] -= step * value;
      }
      if (scale < 1e-6) {
        for (double& x : v) x *= scale;
        scale = 1.0;
      }
    }
    if (epoch_objective != nullptr) {
      std::vector<double> current(v);
      for (double& x : current) x *= scale;
      epoch_objective->push_back(SvmRankObjective(chains, current, config.c));
    }
  }
  for (double& x : v) x *= scale;
  return LinearRanker(std::move(v), config, nullptr);
}

LinearRanker SvmRankTrain(const Corpus& train,
                          std::shared_ptr<const VersionFeaturizer> featurizer,
                          const RankerConfig& config) {
  if (featurizer == nullptr) ThrowContract("ranker training needs a featurizer");
  std::vector<ChainFeatures> chains;
  chains.reserve(train.chains.size());
  for (const auto& chain : train.chains) {
    if (chain.size() < 2) continue;
    ChainFeatures features;
    for (const auto& v : chain.versions) features.push_back((*featurizer)(v));
    chains.push_back(std::move(features));
  }
  LinearRanker trained = SvmRankTrain(chains, config);
  std::vector<double> weights = trained.weights();
  weights.resize(featurizer->dimension(), 0.0);
  return LinearRanker(std::move(weights), config, std::move(featurizer));
}

Ranking LinearRanker::Rank(const ChainFeatures& chain) const {
  std::vector<double> scores;
  scores.reserve(chain.size());
  for (const auto& x : chain) {
    if (x.dimension > weights_.size()) {
      ThrowContract("feature dimension exceeds ranker weights");
    }
    scores.push_back(Score(x));
  }
  return RankByScore(scores);
}

Ranking LinearRanker::Rank(const RevisionChain& chain) const {
  if (featurizer_ == nullptr) ThrowContract("ranker has no featurizer");
  ChainFeatures features;
  for (const auto& v : chain.versions) features.push_back((*featurizer_)(v));
  return Rank(features);
}

void LinearRanker::Save(std::ostream& out) const {
  out << "claimrank-ranker 1\n";
  out << "c " << FormatDouble(config_.c) << '\n';
  out << "epochs " << config_.epochs << '\n';
  out << "learning_rate " << FormatDouble(config_.learning_rate) << '\n';
  out << "batch_size " << config_.batch_size << '\n';
  out << "seed " << config_.seed << '\n';
  const bool emb = featurizer_ && featurizer_->uses_embeddings();
  out << "features " << (emb ? "emb" : "bow") << '\n';
  const Vocabulary empty;
  const Vocabulary& vocab = featurizer_ ? featurizer_->vocabulary() : empty;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, vocab.Hash());
  out << "vocab_hash " << hash << '\n';
  out << "vocab_size " << vocab.size() << '\n';
  out << "min_freq " << vocab.min_freq() << '\n';
  const LengthScaler scaler = featurizer_ ? featurizer_->scaler() : LengthScaler{};
  out << "length_mean " << FormatDouble(scaler.mean) << '\n';
  out << "length_stddev " << FormatDouble(scaler.stddev) << '\n';
  out << "weights " << weights_.size() << '\n';
  for (double w : weights_) out << FormatDouble(w) << '\n';
  out << "vocab\n";
  for (const auto& token : vocab.tokens()) out << token << '\n';
  out << "end\n";
}

LinearRanker LinearRanker::Load(std::istream& in,
                                std::shared_ptr<const EmbeddingStore> embeddings) {
  std::size_t line_no = 0;
  auto line = [&]() {
    std::string s;
    do {
      if (!std::getline(in, s)) ThrowParse(line_no + 1, "unexpected end of ranker file");
      ++line_no;
      if (!s.empty() && s.back() == '\r') s.pop_back();
    } while (!s.empty() && s.front() == '#');
    return s;
  };
  auto value = [&](std::string_view key) {
    const std::string s = line();
    if (s.rfind(std::string(key) + " ", 0) != 0) {
      ThrowParse(line_no, "expected '" + std::string(key) + "'");
    }
    return s.substr(key.size() + 1);
  };
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    ThrowParse(line_no, "bad number '" + s + "'");
  };
  auto integer = [&](const std::string& s, int base = 10) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const auto x = std::stoull(s, &used, base);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    ThrowParse(line_no, "bad integer '" + s + "'");
  };

  if (line() != "claimrank-ranker 1") ThrowParse(1, "not a claimrank ranker file");
  RankerConfig config;
  config.c = number(value("c"));
  config.epochs = integer(value("epochs"));
  config.learning_rate = number(value("learning_rate"));
  config.batch_size = integer(value("batch_size"));
  config.seed = integer(value("seed"));
  const std::string features = value("features");
  const std::uint64_t recorded_hash = integer(value("vocab_hash"), 16);
  const std::size_t vocab_size = integer(value("vocab_size"));
  const std::size_t min_freq = integer(value("min_freq"));
  LengthScaler scaler;
  scaler.mean = number(value("length_mean"));
  scaler.stddev = number(value("length_stddev"));
  std::vector<double> weights(integer(value("weights")));
  for (double& w : weights) w = number(line());
  if (line() != "vocab") ThrowParse(line_no, "expected 'vocab'");
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < vocab_size; ++i) tokens.push_back(line());
  if (line() != "end") ThrowParse(line_no, "expected 'end'");

  Vocabulary vocab = Vocabulary::FromTokens(std::move(tokens), min_freq);
  if (vocab.Hash() != recorded_hash) {
    throw Error(ErrorCode::kValidation, "vocabulary hash mismatch in ranker file");
  }
  std::shared_ptr<const VersionFeaturizer> featurizer;
  if (features == "emb") {
    if (embeddings == nullptr) ThrowContract("embedding ranker requires an embedding store");
    featurizer = std::make_shared<const VersionFeaturizer>(
        VersionFeaturizer::ForEmbeddings(std::move(embeddings)));
  } else if (features == "bow") {
    featurizer = std::make_shared<const VersionFeaturizer>(
        VersionFeaturizer::FromParts(std::move(vocab), scaler));
  } else {
    ThrowParse(line_no, "unknown feature kind '" + features + "'");
  }
  if (featurizer->dimension() != weights.size()) {
    throw Error(ErrorCode::kValidation, "ranker weights do not match feature dimension");
  }
  return LinearRanker(std::move(weights), config, std::move(featurizer));
}

RankedChain MakeRankedChain(const RevisionChain& chain, const Ranking& ranking,
                            std::span<const double> strengths) {
  RankedChain out;
  out.chain_id = chain.chain_id;
  for (std::size_t index : ranking.order) {
    out.order.push_back(chain.versions[index].version_id);
    if (!strengths.empty()) out.strengths.push_back(strengths[index]);
  }
  return out;
}

void WriteRankings(std::span<const RankedChain> rankings, std::ostream& out) {
  out << "chain_id\tpredicted_order\tstrengths\n";
  char buf[40];
  for (const auto& r : rankings) {
    out << r.chain_id << '\t';
    for (std::size_t i = 0; i < r.order.size(); ++i) {
      if (i > 0) out << ',';
      out << r.order[i];
    }
    out << '\t';
    for (std::size_t i = 0; i < r.strengths.size(); ++i) {
      if (i > 0) out << ',';
      std::snprintf(buf, sizeof buf, "%.9g", r.strengths[i]);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<RankedChain> ReadRankings(std::istream& in) {
  std::vector<RankedChain> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string> parts;
    if (s.empty()) return parts;
    std::size_t start = 0;
    while (true) {
      const auto pos = s.find(sep, start);
      parts.emplace_back(s.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "chain_id\tpredicted_order\tstrengths") {
        ThrowParse(line_no, "expected ranking header");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != 3) ThrowParse(line_no, "expected 3 fields");
    RankedChain r;
    r.chain_id = fields[0];
    r.order = split(fields[1], ',');
    for (const auto& s : split(fields[2], ',')) {
      try {
        r.strengths.push_back(std::stod(s));
      } catch (const std::exception&) {
        ThrowParse(line_no, "bad strength '" + s + "'");
      }
    }
    if (!r.strengths.empty() && r.strengths.size() != r.order.size()) {
      ThrowParse(line_no, "strength count differs from order length");
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) ThrowParse(line_no, "missing ranking header");
  return out;
}

Ranking RankingForChain(const RankedChain& ranked, const RevisionChain& chain) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < chain.size(); ++i) index.emplace(chain.versions[i].version_id, i);
  Ranking ranking;
  std::vector<bool> seen(chain.size(), false);
  for (const auto& id : ranked.order) {
    auto it = index.find(id);
    if (it == index.end() || seen[it->second]) {
      throw Error(ErrorCode::kValidation,
                  "ranking for '" + ranked.chain_id + "' has unknown or repeated version '" +
                      id + "'");
    }
    seen[it->second] = true;
    ranking.order.push_back(it->second);
  }
  if (ranking.order.size() != chain.size()) {
    throw Error(ErrorCode::kValidation,
                "ranking for '" + ranked.chain_id + "' does not cover every version");
  }
  return ranking;
}

}  // namespace claimrank
