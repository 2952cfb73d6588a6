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

/* C interface to the claimrank library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every call
 * returns a crk_status; on failure crk_last_error() describes the problem
 * for the calling thread. */

#ifndef CLAIMRANK_CLAIMRANK_H_
#define CLAIMRANK_CLAIMRANK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CLAIMRANK_BUILDING)
#define CRK_API __attribute__((visibility("default")))
#else
#define CRK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crk_status {
  CRK_OK = 0,
  CRK_INVALID_ARGUMENT = 1,
  CRK_PARSE = 2,
  CRK_VALIDATION = 3,
  CRK_CONTRACT = 4,
  CRK_NOT_FOUND = 5,
  CRK_UNDEFINED_INPUT = 6,
  CRK_IO = 7,
  CRK_INTERNAL = 8
} crk_status;

typedef struct crk_config crk_config;
typedef struct crk_corpus crk_corpus;
typedef struct crk_pairs crk_pairs;
typedef struct crk_embeddings crk_embeddings;
typedef struct crk_model crk_model;
typedef struct crk_ranker crk_ranker;
typedef struct crk_report crk_report;

CRK_API const char* crk_version(void);
CRK_API const char* crk_status_name(crk_status status);
/* Message of the last failed call on this thread, "" if none. */
CRK_API const char* crk_last_error(void);
/* 1-based input line of the last parse error, 0 otherwise. */
CRK_API size_t crk_last_error_line(void);

/* Run configuration: flat key=value settings. */
CRK_API crk_status crk_config_new(crk_config** out);
CRK_API crk_status crk_config_load(const char* path, crk_config** out);
CRK_API crk_status crk_config_set(crk_config* config, const char* key, const char* value);
/* 16 hex digits plus NUL. */
CRK_API crk_status crk_config_hash(const crk_config* config, char out[17]);
/* Header comment line for output files; valid until the next call on this
 * thread. */
CRK_API const char* crk_config_header(const crk_config* config, const char* command);
CRK_API const char* crk_config_canonical(const crk_config* config);
/* Effective value of one setting, "" for unknown keys; valid until the next
 * call on this thread. */
CRK_API const char* crk_config_get(const crk_config* config, const char* key);
CRK_API size_t crk_config_seed_count(const crk_config* config);
CRK_API uint64_t crk_config_seed(const crk_config* config, size_t index);
CRK_API void crk_config_free(crk_config* config);

/* Corpus files: one chain record per line. */
CRK_API crk_status crk_corpus_load(const char* path, crk_corpus** out);
/* Language, short-claim and meaning-change filters, in place. */
CRK_API crk_status crk_corpus_ingest(crk_corpus* corpus, const crk_config* config);
CRK_API crk_status crk_corpus_save(const crk_corpus* corpus, const char* path,
                                   const char* header);
CRK_API const char* crk_corpus_provenance(const crk_corpus* corpus);
CRK_API size_t crk_corpus_chain_count(const crk_corpus* corpus);
CRK_API size_t crk_corpus_version_count(const crk_corpus* corpus);
/* Chains of `fold`/`role` ("train" or "test") in a split manifest. */
CRK_API crk_status crk_corpus_select(const crk_corpus* corpus, const char* manifest_path,
                                     const char* fold, const char* role, crk_corpus** out);
CRK_API void crk_corpus_free(crk_corpus* corpus);

/* Split manifest for the configured split. A random split uses `seed`;
 * cross-category folds use the configured top_k. */
CRK_API crk_status crk_split_write(const crk_corpus* corpus, const crk_config* config,
                                   uint64_t seed, const char* path, const char* header);

/* Pair datasets. `kind` is "base" or "ext". Balanced when `balance` != 0. */
CRK_API crk_status crk_pairs_generate(const crk_corpus* corpus, const char* kind,
                                      int balance, uint64_t seed, crk_pairs** out);
CRK_API crk_status crk_pairs_load(const char* path, crk_pairs** out);
CRK_API crk_status crk_pairs_save(const crk_pairs* pairs, const char* path, const char* header);
CRK_API size_t crk_pairs_count(const crk_pairs* pairs);
CRK_API size_t crk_pairs_true_count(const crk_pairs* pairs);
CRK_API void crk_pairs_free(crk_pairs* pairs);

CRK_API crk_status crk_embeddings_load(const char* path, crk_embeddings** out);
CRK_API size_t crk_embeddings_dimension(const crk_embeddings* embeddings);
CRK_API void crk_embeddings_free(crk_embeddings* embeddings);

/* Pair models. Rule models (length, random) ignore `train`. `embeddings`
 * may be NULL unless the model kind is "emb". */
CRK_API crk_status crk_model_train(const crk_pairs* train, const crk_config* config,
                                   uint64_t seed, const crk_embeddings* embeddings,
                                   crk_model** out);
CRK_API crk_status crk_model_load(const char* path, const crk_embeddings* embeddings,
                                  crk_model** out);
CRK_API crk_status crk_model_save(const crk_model* model, const char* path, const char* header);
CRK_API crk_status crk_model_predict(const crk_model* model, const crk_pairs* pairs,
                                     size_t index, double* prob, int* label);
/* Per-pair predictions as TSV: chain_id, first_id, second_id, label, prob,
 * predicted. */
CRK_API crk_status crk_model_score(const crk_model* model, const crk_pairs* pairs,
                                   const char* path, const char* header);
CRK_API crk_status crk_model_evaluate(const crk_model* model, const crk_pairs* pairs,
                                      crk_report** out);
CRK_API void crk_model_free(crk_model* model);

/* Linear pairwise ranker over version features: bag of words plus length,
 * or embeddings when the configured model is "emb". */
CRK_API crk_status crk_ranker_train(const crk_corpus* train, const crk_config* config,
                                    uint64_t seed, const crk_embeddings* embeddings,
                                    crk_ranker** out);
CRK_API crk_status crk_ranker_load(const char* path, const crk_embeddings* embeddings,
                                   crk_ranker** out);
CRK_API crk_status crk_ranker_save(const crk_ranker* ranker, const char* path,
                                   const char* header);
CRK_API void crk_ranker_free(crk_ranker* ranker);

/* Ranks every chain of `corpus` and writes a ranking file. `method` is
 * "btl" (needs `model`), "svmrank" (needs `ranker`) or "random". */
CRK_API crk_status crk_rank_corpus(const crk_corpus* corpus, const char* method,
                                   const crk_model* model, const crk_ranker* ranker,
                                   uint64_t seed, const char* path, const char* header);
/* Ranking metrics for a ranking file against the chains of `corpus`. */
CRK_API crk_status crk_evaluate_rankings(const crk_corpus* corpus, const char* rankings_path,
                                         const crk_config* config, crk_report** out);

CRK_API crk_status crk_report_load(const char* path, crk_report** out);
CRK_API crk_status crk_report_save(const crk_report* report, const char* path,
                                   const char* header);
CRK_API crk_status crk_report_stamp(crk_report* report, const char* seed, const char* fold);
CRK_API crk_status crk_report_value(const crk_report* report, const char* metric,
                                    const char* group, double* out);
/* Aligned text; valid until the next call on this thread. */
CRK_API const char* crk_report_render(const crk_report* report, const char* title);
CRK_API void crk_report_free(crk_report* report);

/* Full split -> train -> evaluate loop; writes report files to `out_dir`. */
CRK_API crk_status crk_run_experiment(const crk_corpus* corpus, const crk_config* config,
                                      const crk_embeddings* embeddings, const char* out_dir);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CLAIMRANK_CLAIMRANK_H_ */
