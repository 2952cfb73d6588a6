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

// Claim revision chains: the data model, the line-delimited record format,
// and the preprocessing filters applied before pair generation.

#ifndef CLAIMRANK_CORPUS_HPP_
#define CLAIMRANK_CORPUS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace claimrank {

enum class RevisionType {
  kClarification,
  kTypoGrammar,
  kLinks,
  kChangedMeaning,
  kMisc,
  kNone,
};

std::string_view RevisionTypeName(RevisionType type);
std::optional<RevisionType> RevisionTypeFromName(std::string_view name);

// Moderator-supplied reason for a revision. `canonical` is kNone exactly
// when `raw` is empty.
struct RevisionTypeLabel {
  RevisionType canonical = RevisionType::kNone;
  std::string raw;

  bool operator==(const RevisionTypeLabel&) const = default;
};

// Maps a free-text label to one of the six canonical types by
// case-insensitive keyword match; the first matching rule wins:
// "clarif"/"clarit", then "typo"/"grammar"/"spell", then "link"/"source", then
// "meaning". Empty maps to kNone and anything else to kMisc.
RevisionTypeLabel NormalizeRevisionType(std::string_view raw);

struct ClaimVersion {
  std::string version_id;
  std::string text;
  std::size_t index = 0;
  // How this version arose from its predecessor; empty for index 0.
  RevisionTypeLabel revision_type;

  bool operator==(const ClaimVersion&) const = default;
};

// Oldest version first.
struct RevisionChain {
  std::string chain_id;
  std::string debate_id;
  std::vector<std::string> categories;
  std::string language;
  std::vector<ClaimVersion> versions;

  std::size_t size() const { return versions.size(); }
  bool operator==(const RevisionChain&) const = default;
};

struct Corpus {
  std::vector<RevisionChain> chains;
  // Human-readable log of the filters applied, one line per step.
  std::string provenance;

  std::size_t VersionCount() const;
};

// Reads one chain record per line. Blank lines and lines starting with '#'
// are skipped. Throws Error(kParse) with the 1-based line number for a
// malformed record and Error(kValidation) for duplicate chain ids, duplicate
// version ids, empty texts or empty category lists.
Corpus ParseCorpus(std::istream& in);
Corpus LoadCorpus(const std::string& path);

// One record per line, keys in the order chain_id, debate_id, categories,
// language, versions; version keys version_id, text, revision_type.
std::string SerializeChain(const RevisionChain& chain);
void SerializeCorpus(const Corpus& corpus, std::ostream& out);

// Cosine similarity of token-count vectors. Both empty gives 1, exactly
// one empty gives 0.
double TextSimilarity(std::string_view a, std::string_view b);

// Drops chains whose declared language differs from `language`.
Corpus FilterLanguage(Corpus corpus, std::string_view language = "en");

// Removes versions shorter than `min_chars` characters and re-indexes the
// survivors; chains left empty are dropped.
Corpus FilterShortClaims(Corpus corpus, std::size_t min_chars = 4);

// Severs every chain between consecutive versions whose similarity is below
// `threshold`. Each maximal surviving segment becomes its own chain; when a
// chain is cut, the segments are named "<chain_id>#1", "<chain_id>#2", ...
Corpus FilterMeaningChanges(Corpus corpus, double threshold = 0.8);

}  // namespace claimrank

#endif  // CLAIMRANK_CORPUS_HPP_
