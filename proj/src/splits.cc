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

#include "claimrank/splits.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {
namespace {

bool Lists(const RevisionChain& chain, std::string_view category) {
  return std::find(chain.categories.begin(), chain.categories.end(), category) !=
         chain.categories.end();
}

}  // namespace

std::string_view SplitKindName(SplitKind kind) {
  return kind == SplitKind::kRandom ? "random" : "xcat";
}

SplitKind SplitKindFromName(std::string_view name) {
  if (name == "random") return SplitKind::kRandom;
  if (name == "xcat" || name == "cross-category") return SplitKind::kCrossCategory;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown split kind '" + std::string(name) + "'");
}

TrainTest RandomSplit(const Corpus& corpus, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) ThrowContract("split ratio must lie in (0, 1)");
  if (corpus.chains.empty()) ThrowContract("cannot split an empty corpus");
  std::vector<std::size_t> order(corpus.chains.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(corpus.chains.size())));
  TrainTest split;
  for (std::size_t k = 0; k < order.size(); ++k) {
    Corpus& side = k < n_train ? split.train : split.test;
    side.chains.push_back(corpus.chains[order[k]]);
  }
  const std::string note = "random_split(ratio=" + std::to_string(ratio) +
                           ", seed=" + std::to_string(seed) + ")";
  split.train.provenance = corpus.provenance + note + " train\n";
  split.test.provenance = corpus.provenance + note + " test\n";
  return split;
}

std::vector<std::string> TopCategories(const Corpus& corpus, std::size_t k) {
  if (k < 1) ThrowContract("k must be >= 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& chain : corpus.chains) {
    // A chain listing a category twice still counts once.
    std::set<std::string> unique(chain.categories.begin(), chain.categories.end());
    for (const auto& c : unique) ++counts[c];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // map order already lexicographic
  });
  std::vector<std::string> top;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) top.push_back(ranked[i].first);
  return top;
}

std::string PrimaryCategory(const RevisionChain& chain,
                            const std::vector<std::string>& top) {
  for (const auto& category : top) {
    if (Lists(chain, category)) return category;
  }
  return std::string(kOtherCategory);
}

std::vector<CategoryFold> CrossCategorySplits(const Corpus& corpus, std::size_t k) {
  if (corpus.chains.empty()) ThrowContract("cannot split an empty corpus");
  const auto top = TopCategories(corpus, k);
  std::vector<std::string> primary;
  primary.reserve(corpus.chains.size());
  for (const auto& chain : corpus.chains) primary.push_back(PrimaryCategory(chain, top));

  std::vector<CategoryFold> folds;
  folds.reserve(top.size());
  for (const auto& held_out : top) {
    CategoryFold fold;
    fold.held_out = held_out;
    for (std::size_t i = 0; i < corpus.chains.size(); ++i) {
      const auto& chain = corpus.chains[i];
      if (primary[i] == held_out) {
        fold.test.chains.push_back(chain);
      } else if (!Lists(chain, held_out)) {
        fold.train.chains.push_back(chain);
      }
    }
    const std::string note = "cross_category(held_out=" + held_out + ")";
    fold.train.provenance = corpus.provenance + note + " train\n";
    fold.test.provenance = corpus.provenance + note + " test\n";
    folds.push_back(std::move(fold));
  }
  return folds;
}

std::vector<ManifestRow> ManifestFor(const TrainTest& split) {
  std::vector<ManifestRow> rows;
  for (const auto& c : split.train.chains) rows.push_back({c.chain_id, "random", "train"});
  for (const auto& c : split.test.chains) rows.push_back({c.chain_id, "random", "test"});
  return rows;
}

std::vector<ManifestRow> ManifestFor(const std::vector<CategoryFold>& folds) {
  std::vector<ManifestRow> rows;
  for (const auto& fold : folds) {
    for (const auto& c : fold.train.chains) rows.push_back({c.chain_id, fold.held_out, "train"});
    for (const auto& c : fold.test.chains) rows.push_back({c.chain_id, fold.held_out, "test"});
  }
  return rows;
}

void WriteManifest(const std::vector<ManifestRow>& rows, std::ostream& out) {
  out << "chain_id\tfold\trole\n";
  for (const auto& row : rows) {
    out << row.chain_id << '\t' << row.fold << '\t' << row.role << '\n';
  }
}

std::vector<ManifestRow> ReadManifest(std::istream& in) {
  std::vector<ManifestRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "chain_id\tfold\trole") ThrowParse(line_no, "expected manifest header");
      header_seen = true;
      continue;
    }
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      ThrowParse(line_no, "expected 3 fields");
    }
    ManifestRow row{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                    line.substr(t2 + 1)};
    if (row.role != "train" && row.role != "test") {
      ThrowParse(line_no, "role must be train or test");
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) ThrowParse(line_no, "missing manifest header");
  return rows;
}

Corpus SelectFromManifest(const Corpus& corpus, const std::vector<ManifestRow>& rows,
                          std::string_view fold, std::string_view role) {
  if (role != "train" && role != "test") {
    throw Error(ErrorCode::kInvalidArgument, "role must be 'train' or 'test'");
  }
  std::unordered_set<std::string> wanted;
  for (const auto& row : rows) {
    if (row.fold == fold && row.role == role) wanted.insert(row.chain_id);
  }
  Corpus out;
  for (const auto& chain : corpus.chains) {
    if (wanted.contains(chain.chain_id)) out.chains.push_back(chain);
  }
  if (out.chains.size() != wanted.size()) {
    throw Error(ErrorCode::kNotFound,
                "manifest names " + std::to_string(wanted.size() - out.chains.size()) +
                    " chains absent from the corpus");
  }
  out.provenance = corpus.provenance + "manifest(fold=" + std::string(fold) +
                   ", role=" + std::string(role) + ")\n";
  return out;
}

}  // namespace claimrank
