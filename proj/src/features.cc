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

#include "claimrank/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"
#include "claimrank/text.hpp"

namespace claimrank {
namespace {

void Normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (double& x : v) x /= norm;
}

}  // namespace

double SparseVector::Dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * dense[index];
  return sum;
}

SparseVector SparseVector::FromDense(std::span<const double> dense) {
  SparseVector v;
  v.dimension = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

std::vector<double> SparseVector::ToDense() const {
  std::vector<double> dense(dimension, 0.0);
  for (const auto& [index, value] : entries) dense[index] = value;
  return dense;
}

Vocabulary Vocabulary::Build(std::span<const std::string> texts, std::size_t min_freq) {
  if (min_freq < 1) ThrowContract("min_freq must be >= 1");
  std::vector<std::string> first_seen;
  std::unordered_map<std::string, std::size_t> doc_freq;
  for (const auto& text : texts) {
    std::unordered_set<std::string> in_text;
    for (auto& token : Tokenize(text)) {
      if (!in_text.insert(token).second) continue;
      auto [it, inserted] = doc_freq.try_emplace(token, 0);
      if (inserted) first_seen.push_back(token);
      ++it->second;
    }
  }
  std::vector<std::string> kept;
  for (auto& token : first_seen) {
    if (doc_freq[token] >= min_freq) kept.push_back(std::move(token));
  }
  return FromTokens(std::move(kept), min_freq);
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens, std::size_t min_freq) {
  Vocabulary vocab;
  vocab.min_freq_ = min_freq;
  vocab.index_.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!vocab.index_.emplace(tokens[i], static_cast<std::uint32_t>(i)).second) {
      ThrowContract("duplicate vocabulary token '" + tokens[i] + "'");
    }
  }
  vocab.tokens_ = std::move(tokens);
  return vocab;
}

std::optional<std::uint32_t> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::Hash() const {
  std::uint64_t h = Fnv1a("vocab");
  for (const auto& token : tokens_) {
    h = Fnv1a(token, h);
    h = Fnv1a(std::string_view("\0", 1), h);
  }
  return h;
}

SparseVector BowVector(std::string_view text, const Vocabulary& vocab, std::size_t* oov) {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : Tokenize(text)) {
    if (auto index = vocab.Find(token)) {
      counts[*index] += 1.0;
    } else if (oov != nullptr) {
      ++*oov;
    }
  }
  SparseVector v;
  v.dimension = vocab.size();
  v.entries.assign(counts.begin(), counts.end());
  return v;
}

double LengthFeature(std::string_view text) {
  return static_cast<double>(CharCount(text));
}

LengthScaler LengthScaler::Fit(std::span<const double> lengths) {
  LengthScaler scaler;
  if (lengths.empty()) return scaler;
  double sum = 0.0;
  for (double x : lengths) sum += x;
  scaler.mean = sum / static_cast<double>(lengths.size());
  double ss = 0.0;
  for (double x : lengths) ss += (x - scaler.mean) * (x - scaler.mean);
  scaler.stddev = std::sqrt(ss / static_cast<double>(lengths.size()));
  return scaler;
}

double LengthScaler::Apply(double length) const {
  if (stddev == 0.0) return 0.0;
  return (length - mean) / stddev;
}

SparseVector PairFeatures(const SparseVector& a, const SparseVector& b, bool with_length,
                          double a_len, double b_len, const LengthScaler& scaler) {
  if (a.dimension != b.dimension) {
    ThrowContract("pair feature halves differ in dimension: " +
                  std::to_string(a.dimension) + " vs " + std::to_string(b.dimension));
  }
  const std::size_t d = a.dimension;
  SparseVector out;
  out.dimension = 2 * d + (with_length ? 2 : 0);
  out.entries.reserve(a.entries.size() + b.entries.size() + 2);
  out.entries = a.entries;
  for (const auto& [index, value] : b.entries) {
    out.entries.emplace_back(static_cast<std::uint32_t>(index + d), value);
  }
  if (with_length) {
    const double za = scaler.Apply(a_len);
    const double zb = scaler.Apply(b_len);
    if (za != 0.0) out.entries.emplace_back(static_cast<std::uint32_t>(2 * d), za);
    if (zb != 0.0) out.entries.emplace_back(static_cast<std::uint32_t>(2 * d + 1), zb);
  }
  return out;
}

EmbeddingStore EmbeddingStore::Load(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) ThrowParse(1, "missing embedding header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::size_t dim = 0;
  char flag[16] = {0};
  if (std::sscanf(line.c_str(), "#dim=%zu normalized=%15s", &dim, flag) != 2 || dim == 0) {
    ThrowParse(1, "expected header '#dim=<d> normalized=<true|false>'");
  }
  const std::string normalized_flag(flag);
  if (normalized_flag != "true" && normalized_flag != "false") {
    ThrowParse(1, "normalized must be true or false");
  }
  const bool normalize = normalized_flag == "false";

  EmbeddingStore store(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) ThrowParse(line_no, "expected version_id and values");
    std::string id = line.substr(0, tab);
    std::vector<double> values;
    values.reserve(dim);
    std::size_t pos = tab + 1;
    while (pos <= line.size()) {
      auto next = line.find('\t', pos);
      if (next == std::string::npos) next = line.size();
      const char* begin = line.data() + pos;
      const char* end = line.data() + next;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        ThrowParse(line_no, "bad float '" + std::string(begin, end) + "'");
      }
      values.push_back(value);
      pos = next + 1;
    }
    if (values.size() != dim) {
      ThrowParse(line_no, "row has " + std::to_string(values.size()) +
                              " values, header says " + std::to_string(dim));
    }
    if (store.Contains(id)) ThrowParse(line_no, "duplicate version_id '" + id + "'");
    store.Insert(std::move(id), std::move(values), normalize);
  }
  return store;
}

EmbeddingStore EmbeddingStore::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file '" + path + "'");
  try {
    return Load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what(), e.line());
  }
}

void EmbeddingStore::Write(std::ostream& out) const {
  out << "#dim=" << dimension_ << " normalized=true\n";
  char buf[64];
  for (const auto& id : order_) {
    out << id;
    for (double x : vectors_.at(id)) {
      std::snprintf(buf, sizeof buf, "\t%.6f", x);
      out << buf;
    }
    out << '\n';
  }
}

void EmbeddingStore::Insert(std::string version_id, std::vector<double> vector,
                            bool normalize) {
  if (vector.size() != dimension_) {
    ThrowContract("embedding for '" + version_id + "' has dimension " +
                  std::to_string(vector.size()) + ", expected " +
                  std::to_string(dimension_));
  }
  if (normalize) Normalize(vector);
  auto [it, inserted] = vectors_.try_emplace(version_id, std::move(vector));
  if (!inserted) ThrowContract("duplicate embedding id '" + version_id + "'");
  order_.push_back(std::move(version_id));
}

const std::vector<double>& EmbeddingStore::Lookup(std::string_view version_id) const {
  auto it = vectors_.find(std::string(version_id));
  if (it == vectors_.end()) {
    throw Error(ErrorCode::kNotFound,
                "no embedding for version '" + std::string(version_id) + "'");
  }
  return it->second;
}

bool EmbeddingStore::Contains(std::string_view version_id) const {
  return vectors_.contains(std::string(version_id));
}

}  // namespace claimrank
