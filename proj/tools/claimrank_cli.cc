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

// claimrank command-line driver. Exit codes: 0 success, 1 usage, 2 data
// error, 3 runtime error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "claimrank/claimrank.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct Failure {
  int exit_code;
};

int ExitCodeFor(crk_status status) {
  switch (status) {
    case CRK_OK:
      return 0;
    case CRK_INVALID_ARGUMENT:
      return kExitUsage;
    case CRK_PARSE:
    case CRK_VALIDATION:
    case CRK_NOT_FOUND:
    case CRK_UNDEFINED_INPUT:
    case CRK_IO:
      return kExitData;
    default:
      return kExitRuntime;
  }
}

void Check(crk_status status) {
  if (status == CRK_OK) return;
  std::cerr << "claimrank: " << crk_status_name(status) << ": " << crk_last_error() << '\n';
  throw Failure{ExitCodeFor(status)};
}

[[noreturn]] void Usage(const std::string& message) {
  std::cerr << "claimrank: " << message << '\n';
  throw Failure{kExitUsage};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Config = Handle<crk_config, crk_config_free>;
using CorpusH = Handle<crk_corpus, crk_corpus_free>;
using PairsH = Handle<crk_pairs, crk_pairs_free>;
using EmbeddingsH = Handle<crk_embeddings, crk_embeddings_free>;
using ModelH = Handle<crk_model, crk_model_free>;
using RankerH = Handle<crk_ranker, crk_ranker_free>;
using ReportH = Handle<crk_report, crk_report_free>;

// Settings shared by every subcommand: a config file, key=value overrides
// and the dedicated flags, applied in that order.
struct Settings {
  std::string config_path;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> flags;
  std::string embeddings;
};

void AddConfigFlag(CLI::App* app, Settings& s, const std::string& flag, const std::string& key,
                   const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&s, key](const std::string& v) { s.flags.emplace_back(key, v); }, help);
}

void AddCommonFlags(CLI::App* app, Settings& s) {
  app->add_option("--config", s.config_path, "key=value configuration file");
  app->add_option("--set", s.sets, "override one setting, key=value");
  AddConfigFlag(app, s, "--seed", "seed", "single seed");
  AddConfigFlag(app, s, "--runs", "runs", "use seeds 1..N");
  AddConfigFlag(app, s, "--kind", "kind", "pair kind: base or ext");
  AddConfigFlag(app, s, "--split", "split", "split kind: random or xcat");
  AddConfigFlag(app, s, "--model", "model", "length, random, single, sbow, sbow-len or emb");
  AddConfigFlag(app, s, "--language", "language", "language kept at ingest");
  AddConfigFlag(app, s, "--min-chars", "min_chars", "shortest claim kept");
  AddConfigFlag(app, s, "--threshold", "threshold", "meaning-change similarity threshold");
  AddConfigFlag(app, s, "--ratio", "ratio", "train share of a random split");
  AddConfigFlag(app, s, "--top-k", "top_k", "categories held out in turn");
  AddConfigFlag(app, s, "--gains", "gains", "ndcg gains: linear or exp");
  app->add_option("--embeddings", s.embeddings, "sentence embedding file");
}

void BuildConfig(const Settings& s, Config& config) {
  if (!s.config_path.empty()) {
    Check(crk_config_load(s.config_path.c_str(), config.out()));
  } else {
    Check(crk_config_new(config.out()));
  }
  for (const auto& kv : s.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) Usage("--set expects key=value, got '" + kv + "'");
    Check(crk_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  for (const auto& [key, value] : s.flags) {
    Check(crk_config_set(config.get(), key.c_str(), value.c_str()));
  }
  if (!s.embeddings.empty()) {
    Check(crk_config_set(config.get(), "embeddings", s.embeddings.c_str()));
  }
}

std::string Header(const Config& config, const char* command) {
  return crk_config_header(config.get(), command);
}

uint64_t FirstSeed(const Config& config) { return crk_config_seed(config.get(), 0); }

void LoadEmbeddings(const Settings& s, EmbeddingsH& out) {
  if (!s.embeddings.empty()) Check(crk_embeddings_load(s.embeddings.c_str(), out.out()));
}

// Corpus, optionally narrowed to one side of a split manifest.
void LoadCorpus(const std::string& path, const std::string& manifest, const std::string& fold,
                const std::string& role, CorpusH& out) {
  if (manifest.empty()) {
    Check(crk_corpus_load(path.c_str(), out.out()));
    return;
  }
  CorpusH full;
  Check(crk_corpus_load(path.c_str(), full.out()));
  Check(crk_corpus_select(full.get(), manifest.c_str(), fold.c_str(), role.c_str(), out.out()));
}

void WriteText(const std::string& path, const std::string& header, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "claimrank: cannot write '" << path << "'\n";
    throw Failure{kExitData};
  }
  out << header << '\n' << text;
}

struct Selection {
  std::string manifest;
  std::string fold = "random";
  std::string role = "train";
};

void AddSelection(CLI::App* app, Selection& sel) {
  app->add_option("--manifest", sel.manifest, "split manifest restricting the chains");
  app->add_option("--fold", sel.fold, "manifest fold")->capture_default_str();
  app->add_option("--role", sel.role, "manifest role: train or test")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"claimrank: claim revision quality classification and ranking"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crk_version()));

  Settings s;
  Selection sel;
  std::string in_path, out_path, corpus_path, pairs_path, model_path, ranker_path,
      rankings_path, out_dir;
  std::string ranker_method;
  bool no_balance = false;

  auto* ingest = app.add_subcommand("ingest", "filter a raw corpus");
  ingest->add_option("--in", in_path, "raw corpus")->required();
  ingest->add_option("--out", out_path, "filtered corpus")->required();
  AddCommonFlags(ingest, s);

  auto* pairs = app.add_subcommand("pairs", "generate labeled claim pairs");
  pairs->add_option("--corpus", corpus_path, "corpus file")->required();
  pairs->add_option("--out", out_path, "pair file")->required();
  pairs->add_flag("--no-balance", no_balance, "keep all pairs true");
  AddSelection(pairs, sel);
  AddCommonFlags(pairs, s);

  auto* split = app.add_subcommand("split", "write a train/test manifest");
  split->add_option("--corpus", corpus_path, "corpus file")->required();
  split->add_option("--out", out_path, "manifest file")->required();
  AddCommonFlags(split, s);

  auto* train = app.add_subcommand("train", "train a pair model or a ranker");
  train->add_option("--pairs", pairs_path, "training pairs (pair models)");
  train->add_option("--corpus", corpus_path, "training corpus (svmrank)");
  train->add_option("--ranker", ranker_method, "train a ranker instead: svmrank");
  train->add_option("--out", out_path, "model file")->required();
  AddSelection(train, sel);
  AddCommonFlags(train, s);

  auto* score = app.add_subcommand("score", "score pairs with a model");
  score->add_option("--model-file", model_path, "model file")->required();
  score->add_option("--pairs", pairs_path, "pair file")->required();
  score->add_option("--out", out_path, "predictions")->required();
  AddCommonFlags(score, s);

  auto* rank = app.add_subcommand("rank", "rank the versions of every chain");
  rank->add_option("--corpus", corpus_path, "corpus file")->required();
  rank->add_option("--ranker", ranker_method, "btl, svmrank or random")->required();
  rank->add_option("--model-file", model_path, "pair model (btl)");
  rank->add_option("--ranker-file", ranker_path, "trained ranker (svmrank)");
  rank->add_option("--out", out_path, "ranking file")->required();
  AddSelection(rank, sel);
  AddCommonFlags(rank, s);

  auto* eval = app.add_subcommand("eval", "evaluate a model or a ranking file");
  eval->add_option("--model-file", model_path, "pair model");
  eval->add_option("--pairs", pairs_path, "test pairs");
  eval->add_option("--rankings", rankings_path, "ranking file");
  eval->add_option("--corpus", corpus_path, "corpus with the ranked chains");
  eval->add_option("--out", out_path, "report file")->required();
  AddSelection(eval, sel);
  AddCommonFlags(eval, s);

  auto* report = app.add_subcommand("report", "run an experiment or render a report");
  report->add_option("--corpus", corpus_path, "filtered corpus (runs the experiment)");
  report->add_option("--out-dir", out_dir, "output directory");
  report->add_option("--in", in_path, "existing report file to render");
  report->add_option_function<std::string>(
      "--ranker", [&s](const std::string& v) { s.flags.emplace_back("ranker", v); },
      "also rank: btl, svmrank or random");
  AddCommonFlags(report, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    Config config;
    BuildConfig(s, config);

    if (ingest->parsed()) {
      CorpusH corpus;
      Check(crk_corpus_load(in_path.c_str(), corpus.out()));
      const size_t raw = crk_corpus_chain_count(corpus.get());
      Check(crk_corpus_ingest(corpus.get(), config.get()));
      const std::string header = Header(config, "ingest");
      Check(crk_corpus_save(corpus.get(), out_path.c_str(), header.c_str()));
      WriteText(out_path + ".provenance", header, crk_corpus_provenance(corpus.get()));
      std::cout << "chains " << raw << " -> " << crk_corpus_chain_count(corpus.get())
                << ", versions " << crk_corpus_version_count(corpus.get()) << '\n';
    } else if (pairs->parsed()) {
      CorpusH corpus;
      LoadCorpus(corpus_path, sel.manifest, sel.fold, sel.role, corpus);
      const std::string kind_name = crk_config_get(config.get(), "kind");
      PairsH out;
      Check(crk_pairs_generate(corpus.get(), kind_name.c_str(), no_balance ? 0 : 1,
                               FirstSeed(config), out.out()));
      const std::string header = Header(config, "pairs");
      Check(crk_pairs_save(out.get(), out_path.c_str(), header.c_str()));
      std::cout << "pairs " << crk_pairs_count(out.get()) << ", true "
                << crk_pairs_true_count(out.get()) << '\n';
    } else if (split->parsed()) {
      CorpusH corpus;
      Check(crk_corpus_load(corpus_path.c_str(), corpus.out()));
      const std::string header = Header(config, "split");
      Check(crk_split_write(corpus.get(), config.get(), FirstSeed(config), out_path.c_str(),
                            header.c_str()));
    } else if (train->parsed()) {
      EmbeddingsH emb;
      LoadEmbeddings(s, emb);
      const std::string header = Header(config, "train");
      if (!ranker_method.empty()) {
        if (ranker_method != "svmrank") Usage("only svmrank rankers are trained");
        if (corpus_path.empty()) Usage("train --ranker svmrank needs --corpus");
        CorpusH corpus;
        LoadCorpus(corpus_path, sel.manifest, sel.fold, sel.role, corpus);
        RankerH ranker;
        Check(crk_ranker_train(corpus.get(), config.get(), FirstSeed(config), emb.get(),
                               ranker.out()));
        Check(crk_ranker_save(ranker.get(), out_path.c_str(), header.c_str()));
      } else {
        PairsH train_pairs;
        if (!pairs_path.empty()) Check(crk_pairs_load(pairs_path.c_str(), train_pairs.out()));
        ModelH model;
        Check(crk_model_train(train_pairs.get(), config.get(), FirstSeed(config), emb.get(),
                              model.out()));
        Check(crk_model_save(model.get(), out_path.c_str(), header.c_str()));
      }
    } else if (score->parsed()) {
      EmbeddingsH emb;
      LoadEmbeddings(s, emb);
      ModelH model;
      Check(crk_model_load(model_path.c_str(), emb.get(), model.out()));
      PairsH test;
      Check(crk_pairs_load(pairs_path.c_str(), test.out()));
      const std::string header = Header(config, "score");
      Check(crk_model_score(model.get(), test.get(), out_path.c_str(), header.c_str()));
    } else if (rank->parsed()) {
      EmbeddingsH emb;
      LoadEmbeddings(s, emb);
      CorpusH corpus;
      LoadCorpus(corpus_path, sel.manifest, sel.fold, sel.role, corpus);
      ModelH model;
      RankerH ranker;
      if (ranker_method == "btl") {
        if (model_path.empty()) Usage("rank --ranker btl needs --model-file");
        Check(crk_model_load(model_path.c_str(), emb.get(), model.out()));
      } else if (ranker_method == "svmrank") {
        if (ranker_path.empty()) Usage("rank --ranker svmrank needs --ranker-file");
        Check(crk_ranker_load(ranker_path.c_str(), emb.get(), ranker.out()));
      } else if (ranker_method != "random") {
        Usage("unknown ranker '" + ranker_method + "'");
      }
      const std::string header = Header(config, "rank");
      Check(crk_rank_corpus(corpus.get(), ranker_method.c_str(), model.get(), ranker.get(),
                            FirstSeed(config), out_path.c_str(), header.c_str()));
    } else if (eval->parsed()) {
      ReportH result;
      if (!rankings_path.empty()) {
        if (corpus_path.empty()) Usage("eval --rankings needs --corpus");
        CorpusH corpus;
        LoadCorpus(corpus_path, sel.manifest, sel.fold, sel.role, corpus);
        Check(crk_evaluate_rankings(corpus.get(), rankings_path.c_str(), config.get(),
                                    result.out()));
      } else {
        if (model_path.empty() || pairs_path.empty()) {
          Usage("eval needs --model-file and --pairs, or --rankings and --corpus");
        }
        EmbeddingsH emb;
        LoadEmbeddings(s, emb);
        ModelH model;
        Check(crk_model_load(model_path.c_str(), emb.get(), model.out()));
        PairsH test;
        Check(crk_pairs_load(pairs_path.c_str(), test.out()));
        Check(crk_model_evaluate(model.get(), test.get(), result.out()));
      }
      const std::string seed = std::to_string(FirstSeed(config));
      Check(crk_report_stamp(result.get(), seed.c_str(), "-"));
      const std::string header = Header(config, "eval");
      Check(crk_report_save(result.get(), out_path.c_str(), header.c_str()));
      std::cout << crk_report_render(result.get(), "");
    } else if (report->parsed()) {
      if (!in_path.empty()) {
        ReportH loaded;
        Check(crk_report_load(in_path.c_str(), loaded.out()));
        std::cout << crk_report_render(loaded.get(), "");
      } else {
        if (corpus_path.empty()) Usage("report needs --corpus or --in");
        if (out_dir.empty()) Usage("report --corpus needs --out-dir");
        EmbeddingsH emb;
        LoadEmbeddings(s, emb);
        CorpusH corpus;
        Check(crk_corpus_load(corpus_path.c_str(), corpus.out()));
        Check(crk_run_experiment(corpus.get(), config.get(), emb.get(), out_dir.c_str()));
        std::ifstream text(out_dir + "/report.txt");
        std::cout << text.rdbuf();
      }
    }
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "claimrank: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
