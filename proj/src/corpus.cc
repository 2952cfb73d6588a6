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

#include "claimrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "claimrank/error.hpp"
#include "claimrank/text.hpp"
#include "json.hpp"

namespace claimrank {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const json& Field(const json& object, const char* key, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end()) ThrowParse(line, std::string("missing field '") + key + "'");
  return *it;
}

std::string StringField(const json& object, const char* key, std::size_t line) {
  const json& value = Field(object, key, line);
  if (!value.is_string()) ThrowParse(line, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

RevisionChain ParseChain(const std::string& text, std::size_t line) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    ThrowParse(line, e.what());
  }
  if (!record.is_object()) ThrowParse(line, "record must be an object");

  RevisionChain chain;
  chain.chain_id = StringField(record, "chain_id", line);
  chain.debate_id = StringField(record, "debate_id", line);
  chain.language = StringField(record, "language", line);

  const json& categories = Field(record, "categories", line);
  if (!categories.is_array()) ThrowParse(line, "field 'categories' must be an array");
  for (const json& c : categories) {
    if (!c.is_string()) ThrowParse(line, "categories must be strings");
    chain.categories.push_back(c.get<std::string>());
  }

  const json& versions = Field(record, "versions", line);
  if (!versions.is_array()) ThrowParse(line, "field 'versions' must be an array");
  std::unordered_set<std::string> ids;
  for (const json& v : versions) {
    if (!v.is_object()) ThrowParse(line, "versions must be objects");
    ClaimVersion version;
    version.version_id = StringField(v, "version_id", line);
    version.text = StringField(v, "text", line);
    if (auto it = v.find("revision_type"); it != v.end()) {
      if (!it->is_string()) ThrowParse(line, "field 'revision_type' must be a string");
      version.revision_type = NormalizeRevisionType(it->get<std::string>());
    }
    version.index = chain.versions.size();
    if (!ids.insert(version.version_id).second) {
      throw Error(ErrorCode::kValidation,
                  "line " + std::to_string(line) + ": duplicate version_id '" +
                      version.version_id + "'",
                  line);
    }
    if (version.text.empty()) {
      throw Error(ErrorCode::kValidation,
                  "line " + std::to_string(line) + ": empty text for version '" +
                      version.version_id + "'",
                  line);
    }
    chain.versions.push_back(std::move(version));
  }
  if (chain.versions.empty()) {
    throw Error(ErrorCode::kValidation,
                "line " + std::to_string(line) + ": chain has no versions", line);
  }
  if (chain.categories.empty()) {
    throw Error(ErrorCode::kValidation,
                "line " + std::to_string(line) + ": chain has no categories", line);
  }
  return chain;
}

void AppendProvenance(Corpus& corpus, const std::string& entry) {
  if (!corpus.provenance.empty() && corpus.provenance.back() != '\n') {
    corpus.provenance.push_back('\n');
  }
  corpus.provenance += entry;
  corpus.provenance.push_back('\n');
}

void Reindex(RevisionChain& chain) {
  for (std::size_t i = 0; i < chain.versions.size(); ++i) {
    chain.versions[i].index = i;
  }
  if (!chain.versions.empty()) chain.versions.front().revision_type = {};
}

std::map<std::string, std::size_t> TokenCounts(std::string_view text) {
  std::map<std::string, std::size_t> counts;
  for (auto& token : Tokenize(text)) ++counts[std::move(token)];
  return counts;
}

}  // namespace

std::string_view RevisionTypeName(RevisionType type) {
  switch (type) {
    case RevisionType::kClarification:
      return "Clarification";
    case RevisionType::kTypoGrammar:
      return "TypoGrammar";
    case RevisionType::kLinks:
      return "Links";
    case RevisionType::kChangedMeaning:
      return "ChangedMeaning";
    case RevisionType::kMisc:
      return "Misc";
    case RevisionType::kNone:
      return "None";
  }
  return "None";
}

std::optional<RevisionType> RevisionTypeFromName(std::string_view name) {
  for (RevisionType t :
       {RevisionType::kClarification, RevisionType::kTypoGrammar,
        RevisionType::kLinks, RevisionType::kChangedMeaning, RevisionType::kMisc,
        RevisionType::kNone}) {
    if (RevisionTypeName(t) == name) return t;
  }
  return std::nullopt;
}

RevisionTypeLabel NormalizeRevisionType(std::string_view raw) {
  RevisionTypeLabel label;
  label.raw = std::string(raw);
  if (raw.empty()) {
    label.canonical = RevisionType::kNone;
    return label;
  }
  const std::string lower = Lowercase(raw);
  auto has = [&lower](std::string_view key) {
    return lower.find(key) != std::string::npos;
  };
  if (has("clarif") || has("clarit")) {
    label.canonical = RevisionType::kClarification;
  } else if (has("typo") || has("grammar") || has("spell")) {
    label.canonical = RevisionType::kTypoGrammar;
  } else if (has("link") || has("source")) {
    label.canonical = RevisionType::kLinks;
  } else if (has("meaning")) {
    label.canonical = RevisionType::kChangedMeaning;
  } else {
    label.canonical = RevisionType::kMisc;
  }
  return label;
}

std::size_t Corpus::VersionCount() const {
  std::size_t n = 0;
  for (const auto& chain : chains) n += chain.size();
  return n;
}

Corpus ParseCorpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> chain_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    RevisionChain chain = ParseChain(line, line_no);
    if (!chain_ids.insert(chain.chain_id).second) {
      throw Error(ErrorCode::kValidation,
                  "line " + std::to_string(line_no) + ": duplicate chain_id '" +
                      chain.chain_id + "'",
                  line_no);
    }
    corpus.chains.push_back(std::move(chain));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure");
  return corpus;
}

Corpus LoadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file '" + path + "'");
  try {
    Corpus corpus = ParseCorpus(in);
    AppendProvenance(corpus, "loaded " + std::to_string(corpus.chains.size()) +
                                 " chains from " + path);
    return corpus;
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what(), e.line());
  }
}

std::string SerializeChain(const RevisionChain& chain) {
  ordered_json record;
  record["chain_id"] = chain.chain_id;
  record["debate_id"] = chain.debate_id;
  record["categories"] = chain.categories;
  record["language"] = chain.language;
  ordered_json versions = ordered_json::array();
  for (const auto& v : chain.versions) {
    ordered_json version;
    version["version_id"] = v.version_id;
    version["text"] = v.text;
    version["revision_type"] = v.revision_type.raw;
    versions.push_back(std::move(version));
  }
  record["versions"] = std::move(versions);
  return record.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

void SerializeCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& chain : corpus.chains) out << SerializeChain(chain) << '\n';
}

double TextSimilarity(std::string_view a, std::string_view b) {
  const auto ca = TokenCounts(a);
  const auto cb = TokenCounts(b);
  if (ca.empty() && cb.empty()) return 1.0;
  if (ca.empty() || cb.empty()) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [token, count] : ca) {
    na += static_cast<double>(count * count);
    if (auto it = cb.find(token); it != cb.end()) {
      dot += static_cast<double>(count * it->second);
    }
  }
  for (const auto& [token, count] : cb) nb += static_cast<double>(count * count);
  const double sim = dot / std::sqrt(na * nb);
  return std::clamp(sim, 0.0, 1.0);
}

Corpus FilterLanguage(Corpus corpus, std::string_view language) {
  const std::size_t before = corpus.chains.size();
  std::erase_if(corpus.chains, [language](const RevisionChain& chain) {
    return chain.language != language;
  });
  AppendProvenance(corpus, "filter_language(" + std::string(language) +
                               "): dropped " +
                               std::to_string(before - corpus.chains.size()) +
                               " chains");
  return corpus;
}

Corpus FilterShortClaims(Corpus corpus, std::size_t min_chars) {
  if (min_chars < 1) ThrowContract("min_chars must be >= 1");
  std::size_t removed_versions = 0;
  for (auto& chain : corpus.chains) {
    const std::size_t before = chain.versions.size();
    std::erase_if(chain.versions, [min_chars](const ClaimVersion& v) {
      return CharCount(v.text) < min_chars;
    });
    if (chain.versions.size() != before) {
      removed_versions += before - chain.versions.size();
      Reindex(chain);
    }
  }
  const std::size_t before_chains = corpus.chains.size();
  std::erase_if(corpus.chains,
                [](const RevisionChain& chain) { return chain.versions.empty(); });
  AppendProvenance(corpus, "filter_short_claims(min_chars=" +
                               std::to_string(min_chars) + "): removed " +
                               std::to_string(removed_versions) +
                               " versions, dropped " +
                               std::to_string(before_chains - corpus.chains.size()) +
                               " chains");
  return corpus;
}

Corpus FilterMeaningChanges(Corpus corpus, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    ThrowContract("threshold must lie in [0, 1]");
  }
  std::vector<RevisionChain> out;
  out.reserve(corpus.chains.size());
  std::size_t severed = 0;
  for (auto& chain : corpus.chains) {
    std::vector<bool> cut(chain.versions.size(), false);
    for (std::size_t i = 1; i < chain.versions.size(); ++i) {
      cut[i] = TextSimilarity(chain.versions[i - 1].text, chain.versions[i].text) < threshold;
    }
    std::vector<std::vector<ClaimVersion>> segments(1);
    for (std::size_t i = 0; i < chain.versions.size(); ++i) {
      if (cut[i]) {
        segments.emplace_back();
        ++severed;
      }
      segments.back().push_back(std::move(chain.versions[i]));
    }
    if (segments.size() == 1) {
      chain.versions = std::move(segments.front());
      out.push_back(std::move(chain));
      continue;
    }
    for (std::size_t k = 0; k < segments.size(); ++k) {
      RevisionChain part;
      part.chain_id = chain.chain_id + "#" + std::to_string(k + 1);
      part.debate_id = chain.debate_id;
      part.categories = chain.categories;
      part.language = chain.language;
      part.versions = std::move(segments[k]);
      Reindex(part);
      out.push_back(std::move(part));
    }
  }
  corpus.chains = std::move(out);
  std::ostringstream entry;
  entry << "filter_meaning_changes(threshold=" << threshold << "): severed "
        << severed << " edges, " << corpus.chains.size() << " chains";
  AppendProvenance(corpus, entry.str());
  return corpus;
}

}  // namespace claimrank
