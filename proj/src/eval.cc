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

#include "claimrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "claimrank/error.hpp"
#include "json.hpp"

namespace claimrank {
namespace {

void CheckPaired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) ThrowContract("correlation inputs differ in length");
  if (x.size() < 2) ThrowContract("correlation needs at least two values");
}

std::size_t PositionOf(const Ranking& ranking, std::size_t target) {
  for (std::size_t k = 0; k < ranking.order.size(); ++k) {
    if (ranking.order[k] == target) return k + 1;
  }
  ThrowContract("target " + std::to_string(target) + " is not in the ranking");
}

std::string DistanceGroup(std::size_t distance) {
  return "distance:" + (distance >= 6 ? std::string("6+") : std::to_string(distance));
}

}  // namespace

void ConfusionCounts::Add(bool truth, bool predicted) {
  if (truth) {
    predicted ? ++tp : ++fn;
  } else {
    predicted ? ++fp : ++tn;
  }
}

double Accuracy(const ConfusionCounts& counts) {
  if (counts.total() == 0) throw Error(ErrorCode::kUndefinedInput, "accuracy of zero instances");
  return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
}

MetricValue Mcc(const ConfusionCounts& counts) {
  if (counts.total() == 0) throw Error(ErrorCode::kUndefinedInput, "MCC of zero instances");
  const double tp = static_cast<double>(counts.tp);
  const double tn = static_cast<double>(counts.tn);
  const double fp = static_cast<double>(counts.fp);
  const double fn = static_cast<double>(counts.fn);
  const double a = tp + fp;
  const double b = tp + fn;
  const double c = tn + fp;
  const double d = tn + fn;
  if (a == 0.0 || b == 0.0 || c == 0.0 || d == 0.0) return {0.0, true};
  // Square roots taken separately keep the product within range.
  const double denom = std::sqrt(a) * std::sqrt(b) * std::sqrt(c) * std::sqrt(d);
  return {(tp * tn - fp * fn) / denom, false};
}

MetricValue PearsonR(std::span<const double> x, std::span<const double> y) {
  CheckPaired(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  const double r = sxy / std::sqrt(sxx * syy);
  return {std::clamp(r, -1.0, 1.0), false};
}

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

MetricValue SpearmanRho(std::span<const double> x, std::span<const double> y) {
  CheckPaired(x, y);
  const auto rx = FractionalRanks(x);
  const auto ry = FractionalRanks(y);
  return PearsonR(rx, ry);
}

double Ndcg(const Ranking& predicted, std::span<const double> relevance) {
  if (predicted.order.size() != relevance.size()) {
    ThrowContract("ranking and relevance differ in length");
  }
  double dcg = 0.0;
  for (std::size_t k = 0; k < predicted.order.size(); ++k) {
    dcg += relevance[predicted.order[k]] / std::log2(static_cast<double>(k) + 2.0);
  }
  std::vector<double> ideal(relevance.begin(), relevance.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  double idcg = 0.0;
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    idcg += ideal[k] / std::log2(static_cast<double>(k) + 2.0);
  }
  if (idcg == 0.0) throw Error(ErrorCode::kUndefinedInput, "NDCG with all-zero gains");
  return dcg / idcg;
}

double Mrr(const Ranking& predicted, std::size_t target) {
  return 1.0 / static_cast<double>(PositionOf(predicted, target));
}

int Top1(const Ranking& predicted, std::size_t target) {
  PositionOf(predicted, target);
  return predicted.order.front() == target ? 1 : 0;
}

MetricValue CohensKappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) ThrowContract("kappa inputs differ in length");
  if (a.empty()) ThrowContract("kappa needs at least one label");
  std::map<std::string, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  const std::size_t n = a.size();
  std::size_t chance = 0;  // sum of products of marginal counts
  for (const auto& [label, counts] : marginals) chance += counts.first * counts.second;
  if (chance == n * n) return {agree == n ? 1.0 : 0.0, true};
  const double nn = static_cast<double>(n);
  const double p_o = static_cast<double>(agree) / nn;
  const double p_e = static_cast<double>(chance) / (nn * nn);
  return {(p_o - p_e) / (1.0 - p_e), false};
}

std::vector<double> VersionGains(std::size_t n, GainScheme scheme) {
  std::vector<double> gains(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double position = static_cast<double>(i + 1);
    gains[i] = scheme == GainScheme::kLinear ? position : std::exp2(position) - 1.0;
  }
  return gains;
}

void EvaluationReport::Append(const EvaluationReport& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

const MetricRow* EvaluationReport::Find(std::string_view metric, std::string_view group) const {
  for (const auto& row : rows_) {
    if (row.metric == metric && row.group == group) return &row;
  }
  return nullptr;
}

double EvaluationReport::Value(std::string_view metric, std::string_view group) const {
  const MetricRow* row = Find(metric, group);
  if (row == nullptr) {
    throw Error(ErrorCode::kNotFound,
                "no metric '" + std::string(metric) + "' for group '" + std::string(group) + "'");
  }
  return row->value;
}

void EvaluationReport::SetProvenance(std::string_view seed, std::string_view fold) {
  for (auto& row : rows_) {
    row.seed = std::string(seed);
    row.fold = std::string(fold);
  }
}

void EvaluationReport::WriteRecords(std::ostream& out) const {
  for (const auto& row : rows_) {
    nlohmann::ordered_json record;
    record["metric"] = row.metric;
    record["group"] = row.group;
    record["value"] = row.value;
    record["n"] = row.n;
    record["seed"] = row.seed;
    record["fold"] = row.fold;
    if (row.degenerate) record["degenerate"] = true;
    out << record.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace)
        << '\n';
  }
}

EvaluationReport EvaluationReport::ReadRecords(std::istream& in) {
  EvaluationReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      const auto record = nlohmann::json::parse(line);
      MetricRow row;
      row.metric = record.at("metric").get<std::string>();
      row.group = record.at("group").get<std::string>();
      row.value = record.at("value").get<double>();
      row.n = record.at("n").get<std::size_t>();
      row.seed = record.at("seed").get<std::string>();
      row.fold = record.at("fold").get<std::string>();
      row.degenerate = record.value("degenerate", false);
      report.Add(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      ThrowParse(line_no, e.what());
    }
  }
  return report;
}

std::string EvaluationReport::Render(std::string_view title) const {
  std::size_t metric_w = 6;
  std::size_t group_w = 5;
  for (const auto& row : rows_) {
    metric_w = std::max(metric_w, row.metric.size());
    group_w = std::max(group_w, row.group.size());
  }
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %10s  %9s\n", static_cast<int>(group_w), "group",
                static_cast<int>(metric_w), "metric", "value", "n");
  out << buf;
  for (const auto& row : rows_) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %10.4f  %9zu%s\n", static_cast<int>(group_w),
                  row.group.c_str(), static_cast<int>(metric_w), row.metric.c_str(),
                  row.value, row.n, row.degenerate ? "  (degenerate)" : "");
    out << buf;
  }
  return out.str();
}

EvaluationReport AverageReports(std::span<const EvaluationReport> reports,
                                std::string_view seed, std::string_view fold) {
  EvaluationReport out;
  if (reports.empty()) return out;
  for (const auto& row : reports.front().rows()) {
    MetricRow avg;
    avg.metric = row.metric;
    avg.group = row.group;
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& report : reports) {
      if (const MetricRow* r = report.Find(row.metric, row.group)) {
        sum += r->value;
        avg.n += r->n;
        avg.degenerate = avg.degenerate || r->degenerate;
        ++count;
      }
    }
    avg.value = sum / static_cast<double>(count);
    avg.seed = std::string(seed);
    avg.fold = std::string(fold);
    out.Add(std::move(avg));
  }
  return out;
}

EvaluationReport EvaluateClassification(const PairPredictor& predict, const PairDataset& test,
                                        const ClassificationOptions& options) {
  if (test.pairs.empty()) throw Error(ErrorCode::kUndefinedInput, "empty test set");
  std::map<std::string, ConfusionCounts> groups;
  std::vector<std::string> group_order = {"overall"};
  auto bump = [&](const std::string& group, bool truth, bool predicted) {
    auto [it, inserted] = groups.try_emplace(group);
    if (inserted && group != "overall") group_order.push_back(group);
    it->second.Add(truth, predicted);
  };
  for (const auto& pair : test.pairs) {
    const bool predicted = predict(pair).label;
    bump("overall", pair.label, predicted);
    if (options.per_revision_type) {
      bump("type:" + RevisionGroupName(pair.revision_type), pair.label, predicted);
    }
    if (options.per_distance) bump(DistanceGroup(pair.distance), pair.label, predicted);
    for (const auto& category : options.categories) {
      if (std::find(pair.categories.begin(), pair.categories.end(), category) !=
          pair.categories.end()) {
        bump("category:" + category, pair.label, predicted);
      }
    }
  }
  // Stable output: overall first, then groups sorted by name.
  std::sort(group_order.begin() + 1, group_order.end());
  EvaluationReport report;
  for (const auto& group : group_order) {
    const ConfusionCounts& counts = groups.at(group);
    report.Add({"accuracy", group, Accuracy(counts), counts.total(), "", "", false});
    const MetricValue mcc = Mcc(counts);
    report.Add({"mcc", group, mcc.value, counts.total(), "", "", mcc.degenerate});
  }
  return report;
}

EvaluationReport EvaluateClassification(const PairModel& model, const PairDataset& test,
                                        const ClassificationOptions& options) {
  return EvaluateClassification(
      [&model](const ClaimPair& pair) { return model.Predict(pair); }, test, options);
}

EvaluationReport EvaluateRanking(const ChainRanker& rank, std::span<const RevisionChain> chains,
                                 GainScheme gains) {
  double pearson = 0.0;
  double spearman = 0.0;
  double ndcg = 0.0;
  double mrr = 0.0;
  double top1 = 0.0;
  std::size_t n_chains = 0;
  std::size_t degenerate = 0;
  for (const auto& chain : chains) {
    const std::size_t n = chain.size();
    if (n < 2) continue;
    const Ranking ranking = rank(chain);
    if (ranking.order.size() != n) ThrowContract("ranker returned a ranking of the wrong size");
    // Quality ranks, higher is better: truth is the version index, the
    // prediction is n minus the predicted position.
    std::vector<double> truth(n);
    std::vector<double> predicted(n);
    for (std::size_t i = 0; i < n; ++i) truth[i] = static_cast<double>(i + 1);
    for (std::size_t k = 0; k < n; ++k) {
      predicted[ranking.order[k]] = static_cast<double>(n - k);
    }
    const MetricValue r = PearsonR(predicted, truth);
    const MetricValue rho = SpearmanRho(predicted, truth);
    degenerate += (r.degenerate || rho.degenerate) ? 1 : 0;
    pearson += r.value;
    spearman += rho.value;
    ndcg += Ndcg(ranking, VersionGains(n, gains));
    mrr += Mrr(ranking, n - 1);
    top1 += Top1(ranking, n - 1);
    ++n_chains;
  }
  if (n_chains == 0) {
    throw Error(ErrorCode::kUndefinedInput, "no chains with at least two versions");
  }
  const double inv = 1.0 / static_cast<double>(n_chains);
  EvaluationReport report;
  const bool flag = degenerate > 0;
  report.Add({"pearson", "overall", pearson * inv, n_chains, "", "", flag});
  report.Add({"spearman", "overall", spearman * inv, n_chains, "", "", flag});
  report.Add({"top1", "overall", top1 * inv, n_chains, "", "", false});
  report.Add({"ndcg", "overall", ndcg * inv, n_chains, "", "", false});
  report.Add({"mrr", "overall", mrr * inv, n_chains, "", "", false});
  return report;
}

Ranking RandomRanking(std::size_t n, Rng& rng) {
  Ranking ranking;
  ranking.order.resize(n);
  std::iota(ranking.order.begin(), ranking.order.end(), 0);
  rng.Shuffle(std::span<std::size_t>(ranking.order));
  return ranking;
}

}  // namespace claimrank
