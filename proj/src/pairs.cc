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

#include "claimrank/pairs.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "claimrank/error.hpp"
#include "claimrank/rng.hpp"

namespace claimrank {
namespace {

constexpr std::string_view kPairHeader =
    "chain_id\tfirst_id\tsecond_id\tfirst_text\tsecond_text\tlabel\tdistance\t"
    "revision_type\tcategories";

ClaimPair MakePair(const RevisionChain& chain, std::size_t i, std::size_t j) {
  ClaimPair pair;
  pair.chain_id = chain.chain_id;
  pair.first = chain.versions[i];
  pair.second = chain.versions[j];
  pair.label = true;
  pair.distance = j - i;
  if (pair.distance == 1) {
    pair.revision_type = chain.versions[j].revision_type;
  } else {
    pair.revision_type = {RevisionType::kMisc, std::string(kMultiRevision)};
  }
  pair.categories = chain.categories;
  return pair;
}

std::string Escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string Unescape(std::string_view s, std::size_t line) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) ThrowParse(line, "dangling escape");
    switch (s[i]) {
      case '\\':
        out.push_back('\\');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      case 'p':
        out.push_back('|');
        break;
      default:
        ThrowParse(line, "unknown escape");
    }
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::string_view PairKindName(PairKind kind) {
  return kind == PairKind::kBase ? "base" : "ext";
}

PairKind PairKindFromName(std::string_view name) {
  if (name == "base" || name == "BASE") return PairKind::kBase;
  if (name == "ext" || name == "EXT") return PairKind::kExt;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pair kind '" + std::string(name) + "'");
}

std::size_t PairDataset::TrueCount() const {
  std::size_t n = 0;
  for (const auto& p : pairs) n += p.label ? 1 : 0;
  return n;
}

std::string RevisionGroupName(const RevisionTypeLabel& label) {
  if (label.raw == kMultiRevision) return std::string(kMultiRevision);
  return std::string(RevisionTypeName(label.canonical));
}

std::vector<ClaimPair> ConsecutivePairs(const RevisionChain& chain) {
  std::vector<ClaimPair> pairs;
  for (std::size_t i = 0; i + 1 < chain.versions.size(); ++i) {
    pairs.push_back(MakePair(chain, i, i + 1));
  }
  return pairs;
}

std::vector<ClaimPair> TransitivePairs(const RevisionChain& chain) {
  std::vector<ClaimPair> pairs;
  const std::size_t n = chain.versions.size();
  pairs.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back(MakePair(chain, i, j));
  }
  return pairs;
}

PairDataset GeneratePairs(const Corpus& corpus, PairKind kind) {
  PairDataset dataset;
  dataset.kind = kind;
  for (const auto& chain : corpus.chains) {
    auto pairs = kind == PairKind::kBase ? ConsecutivePairs(chain)
                                         : TransitivePairs(chain);
    for (auto& p : pairs) dataset.pairs.push_back(std::move(p));
  }
  return dataset;
}

ClaimPair Swapped(const ClaimPair& pair) {
  ClaimPair out = pair;
  std::swap(out.first, out.second);
  out.label = !pair.label;
  return out;
}

PairDataset BalancePairs(const PairDataset& dataset, std::uint64_t seed) {
  PairDataset out;
  out.kind = dataset.kind;
  out.balanced = true;
  out.pairs.reserve(dataset.pairs.size() * 2);
  for (const auto& pair : dataset.pairs) {
    if (!pair.label) ThrowContract("balance_pairs expects only true-labeled pairs");
    out.pairs.push_back(pair);
    out.pairs.push_back(Swapped(pair));
  }
  Rng rng(seed);
  rng.Shuffle(std::span<ClaimPair>(out.pairs));
  return out;
}

std::map<std::size_t, std::size_t> DistanceHistogram(const PairDataset& dataset) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& pair : dataset.pairs) ++histogram[pair.distance];
  return histogram;
}

std::map<std::size_t, std::size_t> ChainDistanceHistogram(const Corpus& corpus) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& chain : corpus.chains) {
    if (chain.size() >= 2) ++histogram[chain.size() - 1];
  }
  return histogram;
}

void WritePairs(const PairDataset& dataset, std::ostream& out) {
  out << kPairHeader << '\n';
  for (const auto& p : dataset.pairs) {
    std::string categories;
    for (std::size_t i = 0; i < p.categories.size(); ++i) {
      if (i > 0) categories.push_back('|');
      for (char c : Escape(p.categories[i])) {
        if (c == '|') {
          categories += "\\p";
        } else {
          categories.push_back(c);
        }
      }
    }
    out << Escape(p.chain_id) << '\t' << Escape(p.first.version_id) << '\t'
        << Escape(p.second.version_id) << '\t' << Escape(p.first.text) << '\t'
        << Escape(p.second.text) << '\t' << (p.label ? 1 : 0) << '\t'
        << p.distance << '\t' << RevisionGroupName(p.revision_type) << '\t'
        << categories << '\n';
  }
}

PairDataset ReadPairs(std::istream& in) {
  PairDataset dataset;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool multi_distance = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kPairHeader) ThrowParse(line_no, "expected pair file header");
      header_seen = true;
      continue;
    }
    const auto fields = SplitTabs(line);
    if (fields.size() != 9) {
      ThrowParse(line_no, "expected 9 fields, got " + std::to_string(fields.size()));
    }
    ClaimPair p;
    p.chain_id = Unescape(fields[0], line_no);
    p.first.version_id = Unescape(fields[1], line_no);
    p.second.version_id = Unescape(fields[2], line_no);
    p.first.text = Unescape(fields[3], line_no);
    p.second.text = Unescape(fields[4], line_no);
    if (fields[5] != "0" && fields[5] != "1") ThrowParse(line_no, "label must be 0 or 1");
    p.label = fields[5] == "1";
    try {
      std::size_t used = 0;
      const std::string d(fields[6]);
      const long long value = std::stoll(d, &used);
      if (used != d.size() || value < 1) throw std::invalid_argument("distance");
      p.distance = static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      ThrowParse(line_no, "distance must be a positive integer");
    }
    if (fields[7] == kMultiRevision) {
      p.revision_type = {RevisionType::kMisc, std::string(kMultiRevision)};
    } else if (auto t = RevisionTypeFromName(fields[7])) {
      p.revision_type = {*t, *t == RevisionType::kNone ? "" : std::string(fields[7])};
    } else {
      p.revision_type = NormalizeRevisionType(fields[7]);
    }
    if (!fields[8].empty()) {
      std::size_t start = 0;
      while (true) {
        const auto bar = fields[8].find('|', start);
        p.categories.push_back(Unescape(fields[8].substr(start, bar - start), line_no));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
    }
    // Only the relative order survives serialization.
    const std::size_t earlier = 0;
    const std::size_t later = p.distance;
    p.first.index = p.label ? earlier : later;
    p.second.index = p.label ? later : earlier;
    multi_distance = multi_distance || p.distance > 1;
    dataset.pairs.push_back(std::move(p));
  }
  if (!header_seen) ThrowParse(line_no, "missing pair file header");
  dataset.kind = multi_distance ? PairKind::kExt : PairKind::kBase;
  dataset.balanced =
      !dataset.pairs.empty() && dataset.TrueCount() * 2 == dataset.pairs.size();
  return dataset;
}

}  // namespace claimrank
