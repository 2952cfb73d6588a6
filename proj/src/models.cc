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

#include "claimrank/models.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

bool UsesBow(ModelKind kind) {
  return kind == ModelKind::kSingleClaim || kind == ModelKind::kLogRegBow ||
         kind == ModelKind::kLogRegBowLen;
}

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Per-version feature halves, computed once per unique version id.
class HalfCache {
 public:
  explicit HalfCache(const FeaturePlan& plan) : plan_(plan) {}

  const SparseVector& Get(const ClaimVersion& v);

 private:
  const FeaturePlan& plan_;
  std::unordered_map<std::string, SparseVector> cache_;
};

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLength:
      return "length";
    case ModelKind::kRandom:
      return "random";
    case ModelKind::kSingleClaim:
      return "single";
    case ModelKind::kLogRegBow:
      return "sbow";
    case ModelKind::kLogRegBowLen:
      return "sbow-len";
    case ModelKind::kLogRegEmb:
      return "emb";
  }
  return "length";
}

ModelKind ModelKindFromName(std::string_view name) {
  for (ModelKind k : {ModelKind::kLength, ModelKind::kRandom, ModelKind::kSingleClaim,
                      ModelKind::kLogRegBow, ModelKind::kLogRegBowLen,
                      ModelKind::kLogRegEmb}) {
    if (ModelKindName(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown model kind '" + std::string(name) + "'");
}

bool IsLearned(ModelKind kind) {
  return kind != ModelKind::kLength && kind != ModelKind::kRandom;
}

TrainConfig TrainConfig::DefaultsFor(ModelKind kind) {
  TrainConfig config;
  config.learning_rate = kind == ModelKind::kLogRegEmb ? 0.01 : 0.1;
  return config;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) ThrowContract("learning_rate must be > 0");
  if (epochs < 1) ThrowContract("epochs must be >= 1");
  if (!(l2 >= 0.0)) ThrowContract("l2 must be >= 0");
  if (batch_size < 1) ThrowContract("batch_size must be >= 1");
  if (min_freq < 1) ThrowContract("min_freq must be >= 1");
}

Prediction LengthPredict(const ClaimPair& pair) {
  const double a = LengthFeature(pair.first.text);
  const double b = LengthFeature(pair.second.text);
  if (b > a) return {true, 1.0};
  if (b < a) return {false, 0.0};
  return {false, 0.5};
}

bool RandomPredict(const ClaimPair& pair, std::uint64_t seed) {
  std::uint64_t h = Fnv1a(pair.first.version_id);
  h = Fnv1a(std::string_view("\0", 1), h);
  h = Fnv1a(pair.second.version_id, h);
  return (SplitMix64(SplitMix64(seed) ^ h) >> 63) != 0;
}

FeaturePlan FeaturePlan::Fit(ModelKind kind, const PairDataset& train, std::size_t min_freq,
                             std::shared_ptr<const EmbeddingStore> embeddings) {
  if (!IsLearned(kind)) ThrowContract("feature plans apply to learned models only");
  if (kind == ModelKind::kLogRegEmb) {
    if (embeddings == nullptr) ThrowContract("embedding model requires an embedding store");
    return FromParts(kind, {}, {}, std::move(embeddings));
  }
  std::unordered_map<std::string, bool> seen;
  std::vector<std::string> texts;
  std::vector<double> lengths;
  auto visit = [&](const ClaimVersion& v) {
    if (seen.try_emplace(v.version_id, true).second) {
      texts.push_back(v.text);
      lengths.push_back(LengthFeature(v.text));
    }
  };
  for (const auto& pair : train.pairs) {
    visit(pair.first);
    visit(pair.second);
  }
  return FromParts(kind, Vocabulary::Build(texts, min_freq), LengthScaler::Fit(lengths),
                   nullptr);
}

FeaturePlan FeaturePlan::FromParts(ModelKind kind, Vocabulary vocab, LengthScaler scaler,
                                   std::shared_ptr<const EmbeddingStore> embeddings) {
  FeaturePlan plan;
  plan.kind_ = kind;
  plan.vocab_ = std::move(vocab);
  plan.scaler_ = scaler;
  plan.embeddings_ = std::move(embeddings);
  return plan;
}

std::size_t FeaturePlan::dimension() const {
  switch (kind_) {
    case ModelKind::kSingleClaim:
      return vocab_.size();
    case ModelKind::kLogRegBow:
      return 2 * vocab_.size();
    case ModelKind::kLogRegBowLen:
      return 2 * vocab_.size() + 2;
    case ModelKind::kLogRegEmb:
      return embeddings_ ? 2 * embeddings_->dimension() : 0;
    default:
      return 0;
  }
}

namespace {

SparseVector Half(const FeaturePlan& plan, const ClaimVersion& v) {
  if (UsesBow(plan.kind())) return BowVector(v.text, plan.vocabulary());
  return SparseVector::FromDense(plan.embeddings()->Lookup(v.version_id));
}

SparseVector Compose(const FeaturePlan& plan, const ClaimPair& pair, const SparseVector& a,
                     const SparseVector& b) {
  switch (plan.kind()) {
    case ModelKind::kSingleClaim:
      return b;
    case ModelKind::kLogRegBowLen:
      return PairFeatures(a, b, true, LengthFeature(pair.first.text),
                          LengthFeature(pair.second.text), plan.scaler());
    default:
      return PairFeatures(a, b, false, 0.0, 0.0, plan.scaler());
  }
}

const SparseVector& HalfCache::Get(const ClaimVersion& v) {
  auto it = cache_.find(v.version_id);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(v.version_id, Half(plan_, v)).first->second;
}

}  // namespace

SparseVector FeaturePlan::Features(const ClaimPair& pair) const {
  if (kind_ == ModelKind::kSingleClaim) return SingleClaimFeatures(pair, vocab_);
  return Compose(*this, pair, Half(*this, pair.first), Half(*this, pair.second));
}

SparseVector SingleClaimFeatures(const ClaimPair& pair, const Vocabulary& vocab) {
  return BowVector(pair.second.text, vocab);
}

double LogisticObjective(std::span<const LabeledExample> examples,
                         std::span<const double> weights, double bias, double l2) {
  double loss = 0.0;
  for (const auto& ex : examples) {
    const double z = ex.x.Dot(weights) + bias;
    loss += Softplus(ex.label ? -z : z);
  }
  if (!examples.empty()) loss /= static_cast<double>(examples.size());
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return loss + 0.5 * l2 * sq;
}

void LogisticGradient(std::span<const LabeledExample> examples,
                      std::span<const double> weights, double bias, double l2,
                      std::vector<double>& grad_weights, double& grad_bias) {
  grad_weights.assign(weights.size(), 0.0);
  grad_bias = 0.0;
  const double inv_n = examples.empty() ? 0.0 : 1.0 / static_cast<double>(examples.size());
  for (const auto& ex : examples) {
    const double residual = Sigmoid(ex.x.Dot(weights) + bias) - (ex.label ? 1.0 : 0.0);
    for (const auto& [index, value] : ex.x.entries) {
      grad_weights[index] += inv_n * residual * value;
    }
    grad_bias += inv_n * residual;
  }
  for (std::size_t j = 0; j < weights.size(); ++j) grad_weights[j] += l2 * weights[j];
}

PairModel PairModel::Rule(ModelKind kind, std::uint64_t seed) {
  if (IsLearned(kind)) ThrowContract("Rule() builds length or random baselines only");
  PairModel model;
  model.kind_ = kind;
  model.config_.seed = seed;
  return model;
}

PairModel PairModel::FromParameters(FeaturePlan plan, std::vector<double> weights,
                                    double bias, TrainConfig config) {
  if (weights.size() != plan.dimension()) {
    ThrowContract("weight vector has " + std::to_string(weights.size()) +
                  " entries, features have " + std::to_string(plan.dimension()));
  }
  PairModel model;
  model.kind_ = plan.kind();
  model.config_ = config;
  model.plan_ = std::make_shared<const FeaturePlan>(std::move(plan));
  model.weights_ = std::move(weights);
  model.bias_ = bias;
  return model;
}

PairModel PairModel::Train(const PairDataset& train, ModelKind kind, const TrainConfig& config,
                           std::shared_ptr<const EmbeddingStore> embeddings,
                           std::vector<double>* epoch_objective) {
  config.Validate();
  if (train.pairs.empty()) ThrowContract("cannot train on an empty dataset");
  if (train.TrueCount() * 2 != train.pairs.size()) {
    ThrowContract("training set must be balanced");
  }
  if (!IsLearned(kind)) return Rule(kind, config.seed);

  FeaturePlan plan = FeaturePlan::Fit(kind, train, config.min_freq, std::move(embeddings));
  const std::size_t dim = plan.dimension();
  const std::size_t n = train.pairs.size();

  HalfCache cache(plan);
  auto encode = [&](const ClaimPair& p) {
    return Compose(plan, p, cache.Get(p.first), cache.Get(p.second));
  };

  // w = scale * v so that weight decay costs O(1) per step.
  std::vector<double> v(dim, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  const double lr = config.learning_rate;
  const double decay = 1.0 - lr * config.l2;
  if (!(decay > 0.0)) ThrowContract("learning_rate * l2 must be < 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  std::vector<SparseVector> batch_x;
  std::vector<double> batch_r;

  auto objective = [&]() {
    double loss = 0.0;
    for (const auto& p : train.pairs) {
      const double z = scale * encode(p).Dot(v) + bias;
      loss += Softplus(p.label ? -z : z);
    }
    double sq = 0.0;
    for (double x : v) sq += x * x;
    return loss / static_cast<double>(n) + 0.5 * config.l2 * scale * scale * sq;
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      batch_x.clear();
      batch_r.clear();
      double grad_bias = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const ClaimPair& p = train.pairs[order[k]];
        SparseVector x = encode(p);
        const double residual = Sigmoid(scale * x.Dot(v) + bias) - (p.label ? 1.0 : 0.0);
        grad_bias += residual;
        batch_x.push_back(std::move(x));
        batch_r.push_back(residual);
      }
      const double inv_b = 1.0 / static_cast<double>(end - start);
      scale *= decay;
      const double step = lr * inv_b / scale;
      for (std::size_t k = 0; k < batch_x.size(); ++k) {
        for (const auto& [index, value] : batch_x[k].entries) {
          v[index] -= step * batch_r[k] * value;
        }
      }
      bias -= lr * inv_b * grad_bias;
      if (scale < 1e-6) {
        for (double& x : v) x *= scale;
        scale = 1.0;
      }
    }
    if (epoch_objective != nullptr) epoch_objective->push_back(objective());
  }
  for (double& x : v) x *= scale;
  return FromParameters(std::move(plan), std::move(v), bias, config);
}

double PairModel::PredictProb(const ClaimPair& pair) const {
  switch (kind_) {
    case ModelKind::kLength:
      return LengthPredict(pair).prob;
    case ModelKind::kRandom:
      return RandomPredict(pair, config_.seed) ? 1.0 : 0.0;
    default:
      return Sigmoid(plan_->Features(pair).Dot(weights_) + bias_);
  }
}

Prediction PairModel::Predict(const ClaimPair& pair) const {
  const double prob = PredictProb(pair);
  return {prob > 0.5, prob};
}

void PairModel::Save(std::ostream& out) const {
  out << "claimrank-model 1\n";
  out << "kind " << ModelKindName(kind_) << '\n';
  out << "seed " << config_.seed << '\n';
  out << "learning_rate " << FormatDouble(config_.learning_rate) << '\n';
  out << "epochs " << config_.epochs << '\n';
  out << "l2 " << FormatDouble(config_.l2) << '\n';
  out << "batch_size " << config_.batch_size << '\n';
  out << "min_freq " << config_.min_freq << '\n';
  if (!IsLearned(kind_)) {
    out << "end\n";
    return;
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, plan_->vocabulary().Hash());
  out << "vocab_hash " << hash << '\n';
  out << "vocab_size " << plan_->vocabulary().size() << '\n';
  out << "length_mean " << FormatDouble(plan_->scaler().mean) << '\n';
  out << "length_stddev " << FormatDouble(plan_->scaler().stddev) << '\n';
  out << "embedding_dim "
      << (plan_->embeddings() ? plan_->embeddings()->dimension() : 0) << '\n';
  out << "bias " << FormatDouble(bias_) << '\n';
  out << "weights " << weights_.size() << '\n';
  for (double w : weights_) out << FormatDouble(w) << '\n';
  out << "vocab\n";
  for (const auto& token : plan_->vocabulary().tokens()) out << token << '\n';
  out << "end\n";
}

namespace {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string Line() {
    std::string line;
    do {
      if (!std::getline(in_, line)) ThrowParse(line_no_ + 1, "unexpected end of model file");
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
    } while (!line.empty() && line.front() == '#');
    return line;
  }

  std::string Value(std::string_view key) {
    const std::string line = Line();
    if (line.rfind(std::string(key) + " ", 0) != 0) {
      ThrowParse(line_no_, "expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  }

  double Double(std::string_view key) { return ToDouble(Value(key)); }
  std::uint64_t Unsigned(std::string_view key) { return ToUnsigned(Value(key)); }

  double ToDouble(const std::string& s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    ThrowParse(line_no_, "bad number '" + s + "'");
  }

  std::uint64_t ToUnsigned(const std::string& s, int base = 10) {
    try {
      std::size_t used = 0;
      const auto x = std::stoull(s, &used, base);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    ThrowParse(line_no_, "bad integer '" + s + "'");
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

PairModel PairModel::Load(std::istream& in, std::shared_ptr<const EmbeddingStore> embeddings) {
  Reader r(in);
  if (r.Line() != "claimrank-model 1") ThrowParse(1, "not a claimrank model file");
  const ModelKind kind = ModelKindFromName(r.Value("kind"));
  TrainConfig config;
  config.seed = r.Unsigned("seed");
  config.learning_rate = r.Double("learning_rate");
  config.epochs = r.Unsigned("epochs");
  config.l2 = r.Double("l2");
  config.batch_size = r.Unsigned("batch_size");
  config.min_freq = r.Unsigned("min_freq");
  if (!IsLearned(kind)) {
    if (r.Line() != "end") ThrowParse(0, "expected 'end'");
    return Rule(kind, config.seed);
  }
  const std::uint64_t recorded_hash = r.ToUnsigned(r.Value("vocab_hash"), 16);
  const std::size_t vocab_size = r.Unsigned("vocab_size");
  LengthScaler scaler;
  scaler.mean = r.Double("length_mean");
  scaler.stddev = r.Double("length_stddev");
  const std::size_t embedding_dim = r.Unsigned("embedding_dim");
  const double bias = r.Double("bias");
  const std::size_t n_weights = r.Unsigned("weights");
  std::vector<double> weights(n_weights);
  for (double& w : weights) w = r.ToDouble(r.Line());
  if (r.Line() != "vocab") ThrowParse(0, "expected 'vocab'");
  std::vector<std::string> tokens;
  tokens.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) tokens.push_back(r.Line());
  if (r.Line() != "end") ThrowParse(0, "expected 'end'");

  Vocabulary vocab = Vocabulary::FromTokens(std::move(tokens), config.min_freq);
  if (vocab.Hash() != recorded_hash) {
    throw Error(ErrorCode::kValidation, "vocabulary hash mismatch in model file");
  }
  if (kind == ModelKind::kLogRegEmb) {
    if (embeddings == nullptr) ThrowContract("embedding model requires an embedding store");
    if (embeddings->dimension() != embedding_dim) {
      throw Error(ErrorCode::kValidation,
                  "model expects embeddings of dimension " + std::to_string(embedding_dim) +
                      ", store has " + std::to_string(embeddings->dimension()));
    }
  } else {
    embeddings = nullptr;
  }
  return FromParameters(FeaturePlan::FromParts(kind, std::move(vocab), scaler,
                                               std::move(embeddings)),
                        std::move(weights), bias, config);
}

}  // namespace claimrank
