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

#ifndef CLAIMRANK_FEATURES_HPP_
#define CLAIMRANK_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace claimrank {

// Sorted (index, value) entries, values non-zero, indices < dimension.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::size_t dimension = 0;

  double Dot(std::span<const double> dense) const;
  static SparseVector FromDense(std::span<const double> dense);
  std::vector<double> ToDense() const;
};

class Vocabulary {
 public:
  Vocabulary() = default;

  // Tokens that occur in at least `min_freq` texts (document frequency),
  // indexed in order of first occurrence.
  static Vocabulary Build(std::span<const std::string> texts,
                          std::size_t min_freq = 2);
  static Vocabulary FromTokens(std::vector<std::string> tokens,
                               std::size_t min_freq);

  std::optional<std::uint32_t> Find(std::string_view token) const;
  std::size_t size() const { return tokens_.size(); }
  std::size_t min_freq() const { return min_freq_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a over the index-ordered tokens.
  std::uint64_t Hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t min_freq_ = 1;
};

// Raw term counts. Out-of-vocabulary tokens are skipped and, when `oov` is
// given, counted into it.
SparseVector BowVector(std::string_view text, const Vocabulary& vocab,
                       std::size_t* oov = nullptr);

// Unicode character count of the untokenized text.
double LengthFeature(std::string_view text);

// z-standardization constants fitted on training texts; a zero stddev maps
// every value to 0.
struct LengthScaler {
  double mean = 0.0;
  double stddev = 0.0;

  static LengthScaler Fit(std::span<const double> lengths);
  double Apply(double length) const;
};

// [a | b], plus the two standardized lengths when `with_length` is set.
// Throws Error(kContract) on a dimension mismatch.
SparseVector PairFeatures(const SparseVector& a, const SparseVector& b,
                          bool with_length, double a_len, double b_len,
                          const LengthScaler& scaler);

// Sentence vectors keyed by version id. Vectors are unit length unless a
// stored vector is all zeros.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension) : dimension_(dimension) {}

  // Header `#dim=<d> normalized=<true|false>`, then
  // `version_id<TAB>f1<TAB>...<TAB>fd` rows. Vectors are L2-normalized at
  // load time unless the header declares them normalized. Row numbers in
  // parse errors are 1-based file lines.
  static EmbeddingStore Load(std::istream& in);
  static EmbeddingStore LoadFile(const std::string& path);

  // Writes the same format with six decimals and normalized=true.
  void Write(std::ostream& out) const;

  // Scales `vector` to unit length when `normalize` is set. Throws
  // Error(kContract) on a dimension mismatch or a duplicate id.
  void Insert(std::string version_id, std::vector<double> vector,
              bool normalize = true);

  // Throws Error(kNotFound) for an unknown id.
  const std::vector<double>& Lookup(std::string_view version_id) const;
  bool Contains(std::string_view version_id) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

}  // namespace claimrank

#endif  // CLAIMRANK_FEATURES_HPP_
