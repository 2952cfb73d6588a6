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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kFixture = std::string(CLAIMRANK_TEST_DATA) + "/fixture.jsonl";

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "claimrank_c_api";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ASSERT_EQ(crk_config_new(&config_), CRK_OK);
    ASSERT_EQ(crk_config_set(config_, "min_freq", "1"), CRK_OK);
    ASSERT_EQ(crk_corpus_load(kFixture.c_str(), &corpus_), CRK_OK) << crk_last_error();
    ASSERT_EQ(crk_corpus_ingest(corpus_, config_), CRK_OK);
  }
  void TearDown() override {
    crk_corpus_free(corpus_);
    crk_config_free(config_);
    fs::remove_all(dir_);
  }
  std::string Path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
  crk_config* config_ = nullptr;
  crk_corpus* corpus_ = nullptr;
};

TEST_F(CApi, StatusNamesAndVersion) {
  EXPECT_STRNE(crk_version(), "");
  EXPECT_STREQ(crk_status_name(CRK_OK), "ok");
  EXPECT_STRNE(crk_status_name(CRK_NOT_FOUND), crk_status_name(CRK_PARSE));
}

TEST_F(CApi, ConfigRoundTrip) {
  char hash[17];
  ASSERT_EQ(crk_config_hash(config_, hash), CRK_OK);
  EXPECT_EQ(std::strlen(hash), 16u);
  EXPECT_EQ(crk_config_set(config_, "bogus", "1"), CRK_INVALID_ARGUMENT);
  EXPECT_NE(std::string(crk_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(crk_config_set(nullptr, "kind", "ext"), CRK_INVALID_ARGUMENT);
  ASSERT_EQ(crk_config_set(config_, "seeds", "4,9"), CRK_OK);
  EXPECT_EQ(crk_config_seed_count(config_), 2u);
  EXPECT_EQ(crk_config_seed(config_, 1), 9u);
  EXPECT_STREQ(crk_config_get(config_, "min_freq"), "1");
  EXPECT_STREQ(crk_config_get(config_, "bogus"), "");
  const std::string header = crk_config_header(config_, "pairs");
  EXPECT_EQ(header.rfind("# claimrank pairs config=", 0), 0u);
  EXPECT_NE(header.find("seeds=4,9"), std::string::npos);

  std::ofstream(Path("run.cfg")) << crk_config_canonical(config_);
  crk_config* loaded = nullptr;
  ASSERT_EQ(crk_config_load(Path("run.cfg").c_str(), &loaded), CRK_OK);
  char again[17];
  crk_config_hash(config_, hash);
  crk_config_hash(loaded, again);
  EXPECT_STREQ(hash, again);
  crk_config_free(loaded);
  EXPECT_EQ(crk_config_load(Path("missing.cfg").c_str(), &loaded), CRK_IO);
}

TEST_F(CApi, CorpusErrorsCarryLines) {
  std::ofstream(Path("bad.jsonl")) << "{\"chain_id\": \"x\"}\n";
  crk_corpus* bad = nullptr;
  EXPECT_EQ(crk_corpus_load(Path("bad.jsonl").c_str(), &bad), CRK_PARSE);
  EXPECT_EQ(crk_last_error_line(), 1u);
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(crk_corpus_load(Path("absent.jsonl").c_str(), &bad), CRK_IO);
  EXPECT_EQ(crk_corpus_chain_count(corpus_), 3u);
  EXPECT_EQ(crk_corpus_version_count(corpus_), 5u);
  EXPECT_NE(std::string(crk_corpus_provenance(corpus_)).find("filter_language"), std::string::npos);
}

TEST_F(CApi, PairsTrainScoreRankEvaluate) {
  crk_pairs* pairs = nullptr;
  ASSERT_EQ(crk_pairs_generate(corpus_, "ext", 1, 1, &pairs), CRK_OK);
  EXPECT_EQ(crk_pairs_count(pairs), 6u);
  EXPECT_EQ(crk_pairs_true_count(pairs), 3u);
  ASSERT_EQ(crk_pairs_save(pairs, Path("pairs.tsv").c_str(), "# claimrank pairs"), CRK_OK);
  crk_pairs* reloaded = nullptr;
  ASSERT_EQ(crk_pairs_load(Path("pairs.tsv").c_str(), &reloaded), CRK_OK);
  EXPECT_EQ(crk_pairs_count(reloaded), 6u);
  crk_pairs_free(reloaded);
  crk_pairs* other = nullptr;
  EXPECT_EQ(crk_pairs_generate(corpus_, "both", 1, 1, &other), CRK_INVALID_ARGUMENT);

  ASSERT_EQ(crk_config_set(config_, "model", "sbow-len"), CRK_OK);
  crk_model* model = nullptr;
  ASSERT_EQ(crk_model_train(pairs, config_, 1, nullptr, &model), CRK_OK) << crk_last_error();
  double prob = -1;
  int label = -1;
  ASSERT_EQ(crk_model_predict(model, pairs, 0, &prob, &label), CRK_OK);
  EXPECT_GE(prob, 0.0);
  EXPECT_LE(prob, 1.0);
  EXPECT_EQ(crk_model_predict(model, pairs, 99, &prob, &label), CRK_INVALID_ARGUMENT);

  ASSERT_EQ(crk_model_save(model, Path("model.txt").c_str(), "# claimrank train"), CRK_OK);
  crk_model* loaded = nullptr;
  ASSERT_EQ(crk_model_load(Path("model.txt").c_str(), nullptr, &loaded), CRK_OK);
  double prob2 = -1;
  crk_model_predict(loaded, pairs, 0, &prob2, &label);
  EXPECT_EQ(prob, prob2);

  ASSERT_EQ(crk_model_score(model, pairs, Path("scores.tsv").c_str(), "# claimrank score"), CRK_OK);
  const std::string scores = Slurp(Path("scores.tsv"));
  EXPECT_EQ(scores.rfind("# claimrank score\n", 0), 0u);
  EXPECT_EQ(std::count(scores.begin(), scores.end(), '\n'), 8);  // header line, column line, 6 rows

  crk_report* report = nullptr;
  ASSERT_EQ(crk_model_evaluate(model, pairs, &report), CRK_OK);
  double accuracy = -1;
  ASSERT_EQ(crk_report_value(report, "accuracy", "overall", &accuracy), CRK_OK);
  EXPECT_GE(accuracy, 0.0);
  EXPECT_EQ(crk_report_value(report, "accuracy", "nowhere", &accuracy), CRK_NOT_FOUND);
  ASSERT_EQ(crk_report_stamp(report, "1", "random"), CRK_OK);
  ASSERT_EQ(crk_report_save(report, Path("report.jsonl").c_str(), "# claimrank eval"), CRK_OK);
  crk_report* report2 = nullptr;
  ASSERT_EQ(crk_report_load(Path("report.jsonl").c_str(), &report2), CRK_OK);
  EXPECT_NE(std::string(crk_report_render(report2, "Classification")).find("accuracy"),
            std::string::npos);
  crk_report_free(report);
  crk_report_free(report2);

  ASSERT_EQ(crk_rank_corpus(corpus_, "btl", model, nullptr, 1, Path("btl.tsv").c_str(),
                            "# claimrank rank"),
            CRK_OK);
  EXPECT_EQ(crk_rank_corpus(corpus_, "btl", nullptr, nullptr, 1, Path("x.tsv").c_str(), ""),
            CRK_INVALID_ARGUMENT);
  EXPECT_EQ(crk_rank_corpus(corpus_, "magic", model, nullptr, 1, Path("x.tsv").c_str(), ""),
            CRK_INVALID_ARGUMENT);
  crk_report* ranking = nullptr;
  ASSERT_EQ(crk_evaluate_rankings(corpus_, Path("btl.tsv").c_str(), config_, &ranking), CRK_OK)
      << crk_last_error();
  double ndcg = -1;
  ASSERT_EQ(crk_report_value(ranking, "ndcg", "overall", &ndcg), CRK_OK);
  EXPECT_GT(ndcg, 0.0);
  EXPECT_LE(ndcg, 1.0);
  crk_report_free(ranking);

  crk_ranker* ranker = nullptr;
  ASSERT_EQ(crk_ranker_train(corpus_, config_, 1, nullptr, &ranker), CRK_OK) << crk_last_error();
  ASSERT_EQ(crk_ranker_save(ranker, Path("ranker.txt").c_str(), "# claimrank train"), CRK_OK);
  crk_ranker* ranker2 = nullptr;
  ASSERT_EQ(crk_ranker_load(Path("ranker.txt").c_str(), nullptr, &ranker2), CRK_OK);
  ASSERT_EQ(crk_rank_corpus(corpus_, "svmrank", nullptr, ranker, 1, Path("svm1.tsv").c_str(), ""),
            CRK_OK);
  ASSERT_EQ(crk_rank_corpus(corpus_, "svmrank", nullptr, ranker2, 1, Path("svm2.tsv").c_str(), ""),
            CRK_OK);
  EXPECT_EQ(Slurp(Path("svm1.tsv")), Slurp(Path("svm2.tsv")));
  crk_ranker_free(ranker);
  crk_ranker_free(ranker2);

  crk_model_free(model);
  crk_model_free(loaded);
  crk_pairs_free(pairs);
}

TEST_F(CApi, EmbeddingModelNeedsStore) {
  ASSERT_EQ(crk_config_set(config_, "model", "emb"), CRK_OK);
  crk_pairs* pairs = nullptr;
  ASSERT_EQ(crk_pairs_generate(corpus_, "base", 1, 1, &pairs), CRK_OK);
  crk_model* model = nullptr;
  EXPECT_NE(crk_model_train(pairs, config_, 1, nullptr, &model), CRK_OK);
  EXPECT_EQ(model, nullptr);

  std::ofstream(Path("emb.tsv")) << "#dim=2 normalized=false\nc1v0\t1\t0\nc1v1\t0\t1\n";
  crk_embeddings* emb = nullptr;
  ASSERT_EQ(crk_embeddings_load(Path("emb.tsv").c_str(), &emb), CRK_OK) << crk_last_error();
  EXPECT_EQ(crk_embeddings_dimension(emb), 2u);
  EXPECT_EQ(crk_model_train(pairs, config_, 1, emb, &model), CRK_NOT_FOUND);
  crk_embeddings_free(emb);
  crk_pairs_free(pairs);
}

TEST_F(CApi, SplitSelectAndExperiment) {
  ASSERT_EQ(crk_split_write(corpus_, config_, 3, Path("split.tsv").c_str(), "# claimrank split"),
            CRK_OK);
  crk_corpus* train = nullptr;
  crk_corpus* test = nullptr;
  ASSERT_EQ(crk_corpus_select(corpus_, Path("split.tsv").c_str(), "random", "train", &train),
            CRK_OK)
      << crk_last_error();
  ASSERT_EQ(crk_corpus_select(corpus_, Path("split.tsv").c_str(), "random", "test", &test), CRK_OK);
  EXPECT_EQ(crk_corpus_chain_count(train) + crk_corpus_chain_count(test), 3u);
  EXPECT_EQ(crk_corpus_select(corpus_, Path("split.tsv").c_str(), "random", "dev", &train),
            CRK_INVALID_ARGUMENT);
  crk_corpus_free(train);
  crk_corpus_free(test);

  {
    std::ofstream big(Path("big.jsonl"));
    for (int c = 0; c < 40; ++c) {
      const std::string id = "b" + std::to_string(c);
      big << "{\"chain_id\": \"" << id << "\", \"debate_id\": \"d\", \"categories\": [\"A\"], "
          << "\"language\": \"en\", \"versions\": [";
      std::string text = "claim number " + std::to_string(c) + " about taxes and schools";
      for (int v = 0; v < 3; ++v) {
        if (v > 0) big << ", ";
        big << "{\"version_id\": \"" << id << "v" << v << "\", \"text\": \"" << text
            << "\", \"revision_type\": \"" << (v > 0 ? "Clarification" : "") << "\"}";
        text += " today";
      }
      big << "]}\n";
    }
  }
  crk_corpus* big = nullptr;
  ASSERT_EQ(crk_corpus_load(Path("big.jsonl").c_str(), &big), CRK_OK) << crk_last_error();
  ASSERT_EQ(crk_config_set(config_, "seeds", "1"), CRK_OK);
  ASSERT_EQ(crk_config_set(config_, "ranker", "btl"), CRK_OK);
  ASSERT_EQ(crk_run_experiment(big, config_, nullptr, Path("out").c_str()), CRK_OK)
      << crk_last_error();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "classification.jsonl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "ranking.jsonl"));
  crk_corpus_free(big);
}

TEST_F(CApi, NullArgumentsAreRejected) {
  crk_corpus* c = nullptr;
  EXPECT_EQ(crk_corpus_load(nullptr, &c), CRK_INVALID_ARGUMENT);
  EXPECT_EQ(crk_corpus_load(kFixture.c_str(), nullptr), CRK_INVALID_ARGUMENT);
  EXPECT_EQ(crk_pairs_count(nullptr), 0u);
  crk_corpus_free(nullptr);
  crk_model_free(nullptr);
}

}  // namespace
