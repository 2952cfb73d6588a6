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

#include "claimrank/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {
namespace {

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument,
              "bad value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    BadValue(key, value);
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    BadValue(key, value);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string JoinSeeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(seeds[i]);
  }
  return out;
}

// Runs `body`, rethrowing library errors with the stage name prefixed.
template <typename F>
auto Stage(std::string_view name, const std::string& where, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + std::string(name) + " (" + where + "): " + e.what(),
                e.line());
  }
}

struct RunOutput {
  EvaluationReport classification;
  std::optional<EvaluationReport> ranking;
};

RunOutput RunOnce(const Corpus& train, const Corpus& test, const RunConfig& config,
                  std::uint64_t seed, const std::string& fold,
                  const std::shared_ptr<const EmbeddingStore>& embeddings) {
  const std::string where = "seed " + std::to_string(seed) + ", fold " + fold;
  RunOutput out;
  const PairDataset train_pairs = Stage("pairs", where, [&] {
    return MakeBalancedPairs(train, config.kind, seed);
  });
  const PairDataset test_pairs = Stage("pairs", where, [&] {
    return MakeBalancedPairs(test, config.EffectiveTestKind(), SplitMix64(seed));
  });
  const PairModel model = Stage("train", where, [&] {
    if (!IsLearned(config.model)) return PairModel::Rule(config.model, seed);
    return PairModel::Train(train_pairs, config.model, config.TrainConfigFor(seed), embeddings);
  });
  out.classification = Stage("evaluate", where, [&] {
    return EvaluateClassification(model, test_pairs);
  });
  out.classification.SetProvenance(std::to_string(seed), fold);

  if (config.ranker == RankerKind::kNone) return out;
  out.ranking = Stage("rank", where, [&] {
    ChainRanker rank;
    std::shared_ptr<LinearRanker> linear;
    Rng rng(seed);
    switch (config.ranker) {
      case RankerKind::kBtl:
        rank = [&model](const RevisionChain& chain) {
          const ScoreMatrix m = BuildScoreMatrix(
              chain, [&model](const ClaimPair& p) { return model.PredictProb(p); });
          return BtlRank(BtlFit(m));
        };
        break;
      case RankerKind::kSvmRank: {
        auto featurizer = std::make_shared<const VersionFeaturizer>(
            config.model == ModelKind::kLogRegEmb
                ? VersionFeaturizer::ForEmbeddings(embeddings)
                : VersionFeaturizer::FitBow(train, config.min_freq));
        linear = std::make_shared<LinearRanker>(
            SvmRankTrain(train, std::move(featurizer), config.RankerConfigFor(seed)));
        rank = [linear](const RevisionChain& chain) { return linear->Rank(chain); };
        break;
      }
      case RankerKind::kRandom:
        rank = [&rng](const RevisionChain& chain) { return RandomRanking(chain.size(), rng); };
        break;
      case RankerKind::kNone:
        break;
    }
    EvaluationReport report = EvaluateRanking(rank, test.chains, config.gains);
    report.SetProvenance(std::to_string(seed), fold);
    return report;
  });
  return out;
}

bool HasPairs(const Corpus& corpus) {
  return std::any_of(corpus.chains.begin(), corpus.chains.end(),
                     [](const RevisionChain& c) { return c.size() >= 2; });
}

}  // namespace

std::string_view RankerKindName(RankerKind kind) {
  switch (kind) {
    case RankerKind::kNone:
      return "none";
    case RankerKind::kBtl:
      return "btl";
    case RankerKind::kSvmRank:
      return "svmrank";
    case RankerKind::kRandom:
      return "random";
  }
  return "none";
}

RankerKind RankerKindFromName(std::string_view name) {
  for (RankerKind k : {RankerKind::kNone, RankerKind::kBtl, RankerKind::kSvmRank,
                       RankerKind::kRandom}) {
    if (RankerKindName(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown ranker '" + std::string(name) + "'");
}

void RunConfig::Set(std::string_view key, std::string_view value) {
  if (key == "corpus") {
    corpus = std::string(value);
  } else if (key == "embeddings") {
    embeddings = std::string(value);
  } else if (key == "out_dir") {
    out_dir = std::string(value);
  } else if (key == "language") {
    language = std::string(value);
  } else if (key == "min_chars") {
    min_chars = ParseUnsigned(key, value);
    if (min_chars < 1) BadValue(key, value);
  } else if (key == "threshold") {
    threshold = ParseDouble(key, value);
    if (!(threshold >= 0.0 && threshold <= 1.0)) BadValue(key, value);
  } else if (key == "kind") {
    kind = PairKindFromName(value);
  } else if (key == "test_kind") {
    test_kind = PairKindFromName(value);
  } else if (key == "split") {
    split = SplitKindFromName(value);
  } else if (key == "ratio") {
    ratio = ParseDouble(key, value);
    if (!(ratio > 0.0 && ratio < 1.0)) BadValue(key, value);
  } else if (key == "top_k") {
    top_k = ParseUnsigned(key, value);
    if (top_k < 1) BadValue(key, value);
  } else if (key == "model") {
    model = ModelKindFromName(value);
  } else if (key == "learning_rate") {
    learning_rate = ParseDouble(key, value);
    if (!(*learning_rate > 0.0)) BadValue(key, value);
  } else if (key == "epochs") {
    epochs = ParseUnsigned(key, value);
    if (epochs < 1) BadValue(key, value);
  } else if (key == "l2") {
    l2 = ParseDouble(key, value);
    if (!(l2 >= 0.0)) BadValue(key, value);
  } else if (key == "batch_size") {
    batch_size = ParseUnsigned(key, value);
    if (batch_size < 1) BadValue(key, value);
  } else if (key == "min_freq") {
    min_freq = ParseUnsigned(key, value);
    if (min_freq < 1) BadValue(key, value);
  } else if (key == "ranker") {
    ranker = RankerKindFromName(value);
  } else if (key == "ranker_c" || key == "C") {
    ranker_c = ParseDouble(key, value);
    if (!(ranker_c > 0.0)) BadValue(key, value);
  } else if (key == "ranker_epochs") {
    ranker_epochs = ParseUnsigned(key, value);
    if (ranker_epochs < 1) BadValue(key, value);
  } else if (key == "ranker_learning_rate") {
    ranker_learning_rate = ParseDouble(key, value);
    if (!(ranker_learning_rate > 0.0)) BadValue(key, value);
  } else if (key == "gains") {
    if (value == "linear") {
      gains = GainScheme::kLinear;
    } else if (value == "exp" || value == "exponential") {
      gains = GainScheme::kExponential;
    } else {
      BadValue(key, value);
    }
  } else if (key == "seeds") {
    std::vector<std::uint64_t> parsed;
    std::size_t start = 0;
    while (start <= value.size()) {
      auto comma = value.find(',', start);
      if (comma == std::string_view::npos) comma = value.size();
      parsed.push_back(ParseUnsigned(key, Trim(value.substr(start, comma - start))));
      start = comma + 1;
    }
    seeds = std::move(parsed);
  } else if (key == "seed") {
    seeds = {ParseUnsigned(key, value)};
  } else if (key == "runs") {
    const auto runs = ParseUnsigned(key, value);
    if (runs < 1) BadValue(key, value);
    SetRuns(runs);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

void RunConfig::SetRuns(std::size_t runs) {
  seeds.clear();
  for (std::size_t i = 1; i <= runs; ++i) seeds.push_back(i);
}

RunConfig RunConfig::Parse(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key = value", line_no);
    }
    config.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig RunConfig::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

TrainConfig RunConfig::TrainConfigFor(std::uint64_t seed) const {
  TrainConfig config = TrainConfig::DefaultsFor(model);
  if (learning_rate) config.learning_rate = *learning_rate;
  config.epochs = epochs;
  config.l2 = l2;
  config.batch_size = batch_size;
  config.min_freq = min_freq;
  config.seed = seed;
  return config;
}

RankerConfig RunConfig::RankerConfigFor(std::uint64_t seed) const {
  RankerConfig config;
  config.c = ranker_c;
  config.epochs = ranker_epochs;
  config.learning_rate = ranker_learning_rate;
  config.batch_size = batch_size;
  config.seed = seed;
  return config;
}

std::string RunConfig::Canonical() const {
  std::map<std::string, std::string> kv;
  kv["batch_size"] = std::to_string(batch_size);
  kv["corpus"] = corpus;
  kv["embeddings"] = embeddings;
  kv["epochs"] = std::to_string(epochs);
  kv["gains"] = gains == GainScheme::kLinear ? "linear" : "exp";
  kv["kind"] = std::string(PairKindName(kind));
  kv["l2"] = FormatDouble(l2);
  kv["language"] = language;
  kv["learning_rate"] = FormatDouble(TrainConfigFor(0).learning_rate);
  kv["min_chars"] = std::to_string(min_chars);
  kv["min_freq"] = std::to_string(min_freq);
  kv["model"] = std::string(ModelKindName(model));
  kv["ranker"] = std::string(RankerKindName(ranker));
  kv["ranker_c"] = FormatDouble(ranker_c);
  kv["ranker_epochs"] = std::to_string(ranker_epochs);
  kv["ranker_learning_rate"] = FormatDouble(ranker_learning_rate);
  kv["ratio"] = FormatDouble(ratio);
  kv["seeds"] = JoinSeeds(seeds);
  kv["split"] = std::string(SplitKindName(split));
  kv["test_kind"] = std::string(PairKindName(EffectiveTestKind()));
  kv["threshold"] = FormatDouble(threshold);
  kv["top_k"] = std::to_string(top_k);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string RunConfig::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, Fnv1a(Canonical()));
  return buf;
}

std::string RunConfig::HeaderLine(std::string_view command) const {
  return "# claimrank " + std::string(command) + " config=" + Hash() +
         " seeds=" + JoinSeeds(seeds);
}

Corpus Ingest(Corpus raw, const RunConfig& config) {
  Corpus corpus = FilterLanguage(std::move(raw), config.language);
  corpus = FilterShortClaims(std::move(corpus), config.min_chars);
  return FilterMeaningChanges(std::move(corpus), config.threshold);
}

PairDataset MakeBalancedPairs(const Corpus& corpus, PairKind kind, std::uint64_t seed) {
  return BalancePairs(GeneratePairs(corpus, kind), seed);
}

ExperimentResult RunExperiment(const Corpus& corpus, const RunConfig& config,
                               std::shared_ptr<const EmbeddingStore> embeddings) {
  if (config.seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "no seeds configured");
  if (config.model == ModelKind::kLogRegEmb && embeddings == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "model 'emb' needs an embedding file");
  }
  ExperimentResult result;
  auto record = [&result](RunOutput out) {
    result.classification_runs.push_back(std::move(out.classification));
    if (out.ranking) result.ranking_runs.push_back(std::move(*out.ranking));
  };
  std::string fold_label;
  if (config.split == SplitKind::kRandom) {
    fold_label = "random";
    for (std::uint64_t seed : config.seeds) {
      const TrainTest split = Stage("split", "seed " + std::to_string(seed), [&] {
        return RandomSplit(corpus, config.ratio, seed);
      });
      record(RunOnce(split.train, split.test, config, seed, "random", embeddings));
    }
  } else {
    fold_label = "xcat";
    const std::uint64_t seed = config.seeds.front();
    const auto folds = Stage("split", "cross-category", [&] {
      return CrossCategorySplits(corpus, config.top_k);
    });
    for (const auto& fold : folds) {
      // A fold whose test side has no multi-version chain yields no pairs.
      if (!HasPairs(fold.test) || !HasPairs(fold.train)) continue;
      record(RunOnce(fold.train, fold.test, config, seed, fold.held_out, embeddings));
    }
    if (result.classification_runs.empty()) {
      throw Error(ErrorCode::kUndefinedInput, "no cross-category fold has test pairs");
    }
  }
  const std::string seed_label = JoinSeeds(config.seeds);
  result.classification =
      AverageReports(result.classification_runs, seed_label, fold_label + ":mean");
  if (!result.ranking_runs.empty()) {
    result.ranking = AverageReports(result.ranking_runs, seed_label, fold_label + ":mean");
  }
  return result;
}

void WriteExperiment(const ExperimentResult& result, const RunConfig& config,
                     const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
  const std::string header = config.HeaderLine("report");
  auto write = [&](const std::string& name, auto&& body) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
    out << header << '\n';
    body(out);
    if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
  };
  write("classification_runs.jsonl", [&](std::ostream& out) {
    for (const auto& r : result.classification_runs) r.WriteRecords(out);
  });
  write("classification.jsonl",
        [&](std::ostream& out) { result.classification.WriteRecords(out); });
  if (!result.ranking_runs.empty()) {
    write("ranking_runs.jsonl", [&](std::ostream& out) {
      for (const auto& r : result.ranking_runs) r.WriteRecords(out);
    });
    write("ranking.jsonl", [&](std::ostream& out) { result.ranking.WriteRecords(out); });
  }
  write("report.txt", [&](std::ostream& out) {
    const std::string setting =
        std::string(ModelKindName(config.model)) + ", train " +
        std::string(PairKindName(config.kind)) + ", test " +
        std::string(PairKindName(config.EffectiveTestKind())) + ", split " +
        std::string(SplitKindName(config.split));
    out << result.classification.Render("Classification (" + setting + ")");
    if (!result.ranking_runs.empty()) {
      out << '\n'
          << result.ranking.Render("Ranking (" + std::string(RankerKindName(config.ranker)) +
                                   ", " + setting + ")");
    }
  });
}

}  // namespace claimrank
