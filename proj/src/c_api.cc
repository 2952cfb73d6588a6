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

#include "claimrank/claimrank.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

#include "claimrank/corpus.hpp"
#include "claimrank/error.hpp"
#include "claimrank/eval.hpp"
#include "claimrank/experiment.hpp"
#include "claimrank/features.hpp"
#include "claimrank/models.hpp"
#include "claimrank/pairs.hpp"
#include "claimrank/ranking.hpp"
#include "claimrank/rng.hpp"
#include "claimrank/splits.hpp"

struct crk_config {
  claimrank::RunConfig value;
};
struct crk_corpus {
  claimrank::Corpus value;
};
struct crk_pairs {
  claimrank::PairDataset value;
};
struct crk_embeddings {
  std::shared_ptr<const claimrank::EmbeddingStore> value;
};
struct crk_model {
  claimrank::PairModel value;
};
struct crk_ranker {
  claimrank::LinearRanker value;
};
struct crk_report {
  claimrank::EvaluationReport value;
};

namespace {

using claimrank::Error;
using claimrank::ErrorCode;

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;
thread_local std::string g_buffer;

crk_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return CRK_PARSE;
    case ErrorCode::kValidation:
      return CRK_VALIDATION;
    case ErrorCode::kContract:
      return CRK_CONTRACT;
    case ErrorCode::kNotFound:
      return CRK_NOT_FOUND;
    case ErrorCode::kUndefinedInput:
      return CRK_UNDEFINED_INPUT;
    case ErrorCode::kIo:
      return CRK_IO;
    case ErrorCode::kInvalidArgument:
      return CRK_INVALID_ARGUMENT;
  }
  return CRK_INTERNAL;
}

crk_status Fail(crk_status status, std::string message, std::size_t line = 0) {
  g_error = std::move(message);
  g_error_line = line;
  return status;
}

template <typename F>
crk_status Guard(F&& body) {
  try {
    body();
    g_error.clear();
    g_error_line = 0;
    return CRK_OK;
  } catch (const Error& e) {
    return Fail(ToStatus(e.code()), e.what(), e.line());
  } catch (const std::bad_alloc&) {
    return Fail(CRK_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CRK_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

std::shared_ptr<const claimrank::EmbeddingStore> Store(const crk_embeddings* e) {
  return e == nullptr ? nullptr : e->value;
}

void WriteFile(const char* path, const char* header,
               const std::function<void(std::ostream&)>& body) {
  Require(path != nullptr, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot write '") + path + "'");
  if (header != nullptr && *header != '\0') out << header << '\n';
  body(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, std::string("write failed for '") + path + "'");
}

std::ifstream OpenInput(const char* path) {
  Require(path != nullptr, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "'");
  return in;
}

// Prefixes errors raised while reading `path` with the file name.
template <typename F>
auto WithFile(const char* path, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), std::string(path) + ": " + e.what(), e.line());
  }
}

}  // namespace

extern "C" {

const char* crk_version(void) { return "1.0.0"; }

const char* crk_status_name(crk_status status) {
  switch (status) {
    case CRK_OK:
      return "ok";
    case CRK_INVALID_ARGUMENT:
      return "invalid argument";
    case CRK_PARSE:
      return "parse error";
    case CRK_VALIDATION:
      return "validation error";
    case CRK_CONTRACT:
      return "contract violation";
    case CRK_NOT_FOUND:
      return "not found";
    case CRK_UNDEFINED_INPUT:
      return "undefined input";
    case CRK_IO:
      return "i/o error";
    case CRK_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* crk_last_error(void) { return g_error.c_str(); }
size_t crk_last_error_line(void) { return g_error_line; }

crk_status crk_config_new(crk_config** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    *out = new crk_config{};
  });
}

crk_status crk_config_load(const char* path, crk_config** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "argument");
    *out = new crk_config{claimrank::RunConfig::LoadFile(path)};
  });
}

crk_status crk_config_set(crk_config* config, const char* key, const char* value) {
  return Guard([&] {
    Require(config != nullptr && key != nullptr && value != nullptr, "argument");
    config->value.Set(key, value);
  });
}

crk_status crk_config_hash(const crk_config* config, char out[17]) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "argument");
    const std::string hash = config->value.Hash();
    std::snprintf(out, 17, "%s", hash.c_str());
  });
}

const char* crk_config_header(const crk_config* config, const char* command) {
  if (config == nullptr) return "";
  g_buffer = config->value.HeaderLine(command == nullptr ? "" : command);
  return g_buffer.c_str();
}

const char* crk_config_canonical(const crk_config* config) {
  if (config == nullptr) return "";
  g_buffer = config->value.Canonical();
  return g_buffer.c_str();
}

const char* crk_config_get(const crk_config* config, const char* key) {
  g_buffer.clear();
  if (config == nullptr || key == nullptr) return "";
  const std::string canonical = config->value.Canonical();
  const std::string prefix = std::string(key) + "=";
  std::istringstream lines(canonical);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind(prefix, 0) == 0) {
      g_buffer = line.substr(prefix.size());
      break;
    }
  }
  return g_buffer.c_str();
}

size_t crk_config_seed_count(const crk_config* config) {
  return config == nullptr ? 0 : config->value.seeds.size();
}

uint64_t crk_config_seed(const crk_config* config, size_t index) {
  if (config == nullptr || index >= config->value.seeds.size()) return 0;
  return config->value.seeds[index];
}

void crk_config_free(crk_config* config) { delete config; }

crk_status crk_corpus_load(const char* path, crk_corpus** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    *out = new crk_corpus{WithFile(path, [&] { return claimrank::ParseCorpus(in); })};
  });
}

crk_status crk_corpus_ingest(crk_corpus* corpus, const crk_config* config) {
  return Guard([&] {
    Require(corpus != nullptr && config != nullptr, "argument");
    corpus->value = claimrank::Ingest(std::move(corpus->value), config->value);
  });
}

crk_status crk_corpus_save(const crk_corpus* corpus, const char* path, const char* header) {
  return Guard([&] {
    Require(corpus != nullptr, "corpus");
    WriteFile(path, header,
              [&](std::ostream& out) { claimrank::SerializeCorpus(corpus->value, out); });
  });
}

const char* crk_corpus_provenance(const crk_corpus* corpus) {
  return corpus == nullptr ? "" : corpus->value.provenance.c_str();
}

size_t crk_corpus_chain_count(const crk_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.chains.size();
}

size_t crk_corpus_version_count(const crk_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.VersionCount();
}

crk_status crk_corpus_select(const crk_corpus* corpus, const char* manifest_path,
                             const char* fold, const char* role, crk_corpus** out) {
  return Guard([&] {
    Require(corpus != nullptr && fold != nullptr && role != nullptr && out != nullptr,
            "argument");
    std::ifstream in = OpenInput(manifest_path);
    const auto rows = WithFile(manifest_path, [&] { return claimrank::ReadManifest(in); });
    *out = new crk_corpus{claimrank::SelectFromManifest(corpus->value, rows, fold, role)};
  });
}

void crk_corpus_free(crk_corpus* corpus) { delete corpus; }

crk_status crk_split_write(const crk_corpus* corpus, const crk_config* config, uint64_t seed,
                           const char* path, const char* header) {
  return Guard([&] {
    Require(corpus != nullptr && config != nullptr, "argument");
    const auto& c = config->value;
    std::vector<claimrank::ManifestRow> rows;
    if (c.split == claimrank::SplitKind::kRandom) {
      rows = claimrank::ManifestFor(claimrank::RandomSplit(corpus->value, c.ratio, seed));
    } else {
      rows = claimrank::ManifestFor(claimrank::CrossCategorySplits(corpus->value, c.top_k));
    }
    WriteFile(path, header, [&](std::ostream& out) { claimrank::WriteManifest(rows, out); });
  });
}

crk_status crk_pairs_generate(const crk_corpus* corpus, const char* kind, int balance,
                              uint64_t seed, crk_pairs** out) {
  return Guard([&] {
    Require(corpus != nullptr && kind != nullptr && out != nullptr, "argument");
    const auto k = claimrank::PairKindFromName(kind);
    *out = new crk_pairs{balance ? claimrank::MakeBalancedPairs(corpus->value, k, seed)
                                 : claimrank::GeneratePairs(corpus->value, k)};
  });
}

crk_status crk_pairs_load(const char* path, crk_pairs** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    *out = new crk_pairs{WithFile(path, [&] { return claimrank::ReadPairs(in); })};
  });
}

crk_status crk_pairs_save(const crk_pairs* pairs, const char* path, const char* header) {
  return Guard([&] {
    Require(pairs != nullptr, "pairs");
    WriteFile(path, header, [&](std::ostream& out) { claimrank::WritePairs(pairs->value, out); });
  });
}

size_t crk_pairs_count(const crk_pairs* pairs) {
  return pairs == nullptr ? 0 : pairs->value.pairs.size();
}

size_t crk_pairs_true_count(const crk_pairs* pairs) {
  return pairs == nullptr ? 0 : pairs->value.TrueCount();
}

void crk_pairs_free(crk_pairs* pairs) { delete pairs; }

crk_status crk_embeddings_load(const char* path, crk_embeddings** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    auto store = WithFile(path, [&] { return claimrank::EmbeddingStore::Load(in); });
    *out = new crk_embeddings{
        std::make_shared<const claimrank::EmbeddingStore>(std::move(store))};
  });
}

size_t crk_embeddings_dimension(const crk_embeddings* embeddings) {
  return embeddings == nullptr ? 0 : embeddings->value->dimension();
}

void crk_embeddings_free(crk_embeddings* embeddings) { delete embeddings; }

crk_status crk_model_train(const crk_pairs* train, const crk_config* config, uint64_t seed,
                           const crk_embeddings* embeddings, crk_model** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "argument");
    const auto kind = config->value.model;
    if (!claimrank::IsLearned(kind)) {
      *out = new crk_model{claimrank::PairModel::Rule(kind, seed)};
      return;
    }
    Require(train != nullptr, "train");
    *out = new crk_model{claimrank::PairModel::Train(
        train->value, kind, config->value.TrainConfigFor(seed), Store(embeddings))};
  });
}

crk_status crk_model_load(const char* path, const crk_embeddings* embeddings, crk_model** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    *out = new crk_model{
        WithFile(path, [&] { return claimrank::PairModel::Load(in, Store(embeddings)); })};
  });
}

crk_status crk_model_save(const crk_model* model, const char* path, const char* header) {
  return Guard([&] {
    Require(model != nullptr, "model");
    WriteFile(path, header, [&](std::ostream& out) { model->value.Save(out); });
  });
}

crk_status crk_model_predict(const crk_model* model, const crk_pairs* pairs, size_t index,
                             double* prob, int* label) {
  return Guard([&] {
    Require(model != nullptr && pairs != nullptr, "argument");
    if (index >= pairs->value.pairs.size()) {
      throw Error(ErrorCode::kInvalidArgument, "pair index out of range");
    }
    const auto p = model->value.Predict(pairs->value.pairs[index]);
    if (prob != nullptr) *prob = p.prob;
    if (label != nullptr) *label = p.label ? 1 : 0;
  });
}

crk_status crk_model_score(const crk_model* model, const crk_pairs* pairs, const char* path,
                           const char* header) {
  return Guard([&] {
    Require(model != nullptr && pairs != nullptr, "argument");
    std::ostringstream body;
    body << "chain_id\tfirst_id\tsecond_id\tlabel\tprob\tpredicted\n";
    char buf[32];
    for (const auto& pair : pairs->value.pairs) {
      const auto p = model->value.Predict(pair);
      std::snprintf(buf, sizeof buf, "%.6f", p.prob);
      body << pair.chain_id << '\t' << pair.first.version_id << '\t'
           << pair.second.version_id << '\t' << (pair.label ? 1 : 0) << '\t' << buf << '\t'
           << (p.label ? 1 : 0) << '\n';
    }
    WriteFile(path, header, [&](std::ostream& out) { out << body.str(); });
  });
}

crk_status crk_model_evaluate(const crk_model* model, const crk_pairs* pairs,
                              crk_report** out) {
  return Guard([&] {
    Require(model != nullptr && pairs != nullptr && out != nullptr, "argument");
    *out = new crk_report{claimrank::EvaluateClassification(model->value, pairs->value)};
  });
}

void crk_model_free(crk_model* model) { delete model; }

crk_status crk_ranker_train(const crk_corpus* train, const crk_config* config, uint64_t seed,
                            const crk_embeddings* embeddings, crk_ranker** out) {
  return Guard([&] {
    Require(train != nullptr && config != nullptr && out != nullptr, "argument");
    const auto& c = config->value;
    std::shared_ptr<const claimrank::VersionFeaturizer> featurizer;
    if (c.model == claimrank::ModelKind::kLogRegEmb) {
      if (embeddings == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "embedding ranker needs an embedding file");
      }
      featurizer = std::make_shared<const claimrank::VersionFeaturizer>(
          claimrank::VersionFeaturizer::ForEmbeddings(embeddings->value));
    } else {
      featurizer = std::make_shared<const claimrank::VersionFeaturizer>(
          claimrank::VersionFeaturizer::FitBow(train->value, c.min_freq));
    }
    *out = new crk_ranker{
        claimrank::SvmRankTrain(train->value, std::move(featurizer), c.RankerConfigFor(seed))};
  });
}

crk_status crk_ranker_load(const char* path, const crk_embeddings* embeddings,
                           crk_ranker** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    *out = new crk_ranker{
        WithFile(path, [&] { return claimrank::LinearRanker::Load(in, Store(embeddings)); })};
  });
}

crk_status crk_ranker_save(const crk_ranker* ranker, const char* path, const char* header) {
  return Guard([&] {
    Require(ranker != nullptr, "ranker");
    WriteFile(path, header, [&](std::ostream& out) { ranker->value.Save(out); });
  });
}

void crk_ranker_free(crk_ranker* ranker) { delete ranker; }

crk_status crk_rank_corpus(const crk_corpus* corpus, const char* method, const crk_model* model,
                           const crk_ranker* ranker, uint64_t seed, const char* path,
                           const char* header) {
  return Guard([&] {
    Require(corpus != nullptr && method != nullptr, "argument");
    const auto kind = claimrank::RankerKindFromName(method);
    if (kind == claimrank::RankerKind::kBtl && model == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "btl ranking needs a pair model");
    }
    if (kind == claimrank::RankerKind::kSvmRank && ranker == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "svmrank ranking needs a trained ranker");
    }
    if (kind == claimrank::RankerKind::kNone) {
      throw Error(ErrorCode::kInvalidArgument, "no ranking method given");
    }
    claimrank::Rng rng(seed);
    std::vector<claimrank::RankedChain> ranked;
    for (const auto& chain : corpus->value.chains) {
      if (chain.size() < 2) continue;
      switch (kind) {
        case claimrank::RankerKind::kBtl: {
          const auto matrix = claimrank::BuildScoreMatrix(
              chain, [&](const claimrank::ClaimPair& p) { return model->value.PredictProb(p); });
          const auto fit = claimrank::BtlFit(matrix);
          ranked.push_back(
              claimrank::MakeRankedChain(chain, claimrank::BtlRank(fit), fit.strengths));
          break;
        }
        case claimrank::RankerKind::kSvmRank:
          ranked.push_back(claimrank::MakeRankedChain(chain, ranker->value.Rank(chain)));
          break;
        default:
          ranked.push_back(
              claimrank::MakeRankedChain(chain, claimrank::RandomRanking(chain.size(), rng)));
          break;
      }
    }
    WriteFile(path, header, [&](std::ostream& out) { claimrank::WriteRankings(ranked, out); });
  });
}

crk_status crk_evaluate_rankings(const crk_corpus* corpus, const char* rankings_path,
                                 const crk_config* config, crk_report** out) {
  return Guard([&] {
    Require(corpus != nullptr && config != nullptr && out != nullptr, "argument");
    std::ifstream in = OpenInput(rankings_path);
    const auto ranked = WithFile(rankings_path, [&] { return claimrank::ReadRankings(in); });
    std::unordered_map<std::string, const claimrank::RankedChain*> by_id;
    for (const auto& r : ranked) by_id.emplace(r.chain_id, &r);
    auto rank = [&](const claimrank::RevisionChain& chain) {
      auto it = by_id.find(chain.chain_id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::kNotFound, "no ranking for chain '" + chain.chain_id + "'");
      }
      return claimrank::RankingForChain(*it->second, chain);
    };
    *out = new crk_report{
        claimrank::EvaluateRanking(rank, corpus->value.chains, config->value.gains)};
  });
}

crk_status crk_report_load(const char* path, crk_report** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    std::ifstream in = OpenInput(path);
    *out = new crk_report{
        WithFile(path, [&] { return claimrank::EvaluationReport::ReadRecords(in); })};
  });
}

crk_status crk_report_save(const crk_report* report, const char* path, const char* header) {
  return Guard([&] {
    Require(report != nullptr, "report");
    WriteFile(path, header, [&](std::ostream& out) { report->value.WriteRecords(out); });
  });
}

crk_status crk_report_stamp(crk_report* report, const char* seed, const char* fold) {
  return Guard([&] {
    Require(report != nullptr && seed != nullptr && fold != nullptr, "argument");
    report->value.SetProvenance(seed, fold);
  });
}

crk_status crk_report_value(const crk_report* report, const char* metric, const char* group,
                            double* out) {
  return Guard([&] {
    Require(report != nullptr && metric != nullptr && out != nullptr, "argument");
    const auto* row = report->value.Find(metric, group == nullptr ? "overall" : group);
    if (row == nullptr) {
      throw Error(ErrorCode::kNotFound, std::string("no metric '") + metric + "'");
    }
    *out = row->value;
  });
}

const char* crk_report_render(const crk_report* report, const char* title) {
  if (report == nullptr) return "";
  g_buffer = report->value.Render(title == nullptr ? "" : title);
  return g_buffer.c_str();
}

void crk_report_free(crk_report* report) { delete report; }

crk_status crk_run_experiment(const crk_corpus* corpus, const crk_config* config,
                              const crk_embeddings* embeddings, const char* out_dir) {
  return Guard([&] {
    Require(corpus != nullptr && config != nullptr && out_dir != nullptr, "argument");
    const auto result = claimrank::RunExperiment(corpus->value, config->value, Store(embeddings));
    claimrank::WriteExperiment(result, config->value, out_dir);
  });
}

}  // extern "C"
