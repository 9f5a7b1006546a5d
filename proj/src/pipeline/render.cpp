/* Copyright 2026 GenBench contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <cstdio>
#include <string>

#include "genbench/error.hpp"
#include "genbench/pipeline.hpp"

namespace genbench {

using json = nlohmann::ordered_json;

ReportFormat report_format_from_string(std::string_view name)
{
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::UnknownFormat, "unknown report format '" + std::string(name) + "'");
}

namespace {

std::string num(double v, int digits = 4)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pct(double v) { return num(v, 2); }

std::string cell(std::string_view s)
{
  if (s.empty()) return "-";
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string row(const std::vector<std::string>& cells)
{
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
  std::string out = row(header);
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& r : rows) out += row(r);
  return out + "\n";
}

std::vector<std::string> labels(const SetInfo& s)
{
  return {cell(s.problem), cell(s.model.empty() ? s.label : s.model), cell(s.eta)};
}

std::vector<std::string> with_labels(const SetInfo& s, std::vector<std::string> rest)
{
  auto out = labels(s);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<std::string> label_header(std::vector<std::string> rest)
{
  std::vector<std::string> out = {"Problem", "Model", "η"};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::string csv_field(std::string_view s)
{
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_samples(std::string& out, std::string_view metric, std::string_view set, const std::vector<double>& v)
{
  for (double x : v) out += std::string(metric) + "," + csv_field(set) + "," + json(x).dump() + "\n";
}

std::vector<std::string> pc_header(std::size_t k)
{
  std::vector<std::string> h;
  for (std::size_t i = 0; i < k; ++i) h.push_back("PC" + std::to_string(i + 1) + " W1");
  return h;
}

std::vector<std::string> pc_cells(const CutBlock& c)
{
  std::vector<std::string> v;
  for (double w : c.w1) v.push_back(num(w));
  return v;
}

std::string split_half_markdown(const SplitHalfReport& r, std::string_view title)
{
  std::string out = "## " + std::string(title) + "\n\n";
  std::vector<std::string> header = {"Seed", "Half sizes", "Root gap W1", "Heuristic W1"};
  std::vector<std::string> cells = {std::to_string(r.seed), std::to_string(r.size_a) + " / " + std::to_string(r.size_b),
                                    num(r.root_gap.w1), num(r.heuristics.w1)};
  if (r.cuts) {
    for (auto& h : pc_header(r.cuts->w1.size())) header.push_back(h);
    for (auto& c : pc_cells(*r.cuts)) cells.push_back(c);
  }
  out += table(header, {cells});
  out += table({"Half", "Root gap mean (%)", "Root gap std", "Heuristic mean", "Heuristic std"},
               {{"A", num(r.root_gap.a.mean), num(r.root_gap.a.std), num(r.heuristics.a.mean), num(r.heuristics.a.std)},
                {"B", num(r.root_gap.b.mean), num(r.root_gap.b.std), num(r.heuristics.b.mean),
                 num(r.heuristics.b.std)}});
  return out;
}

std::string comparison_markdown(const ComparisonReport& r)
{
  const SetInfo& base = r.baseline;
  const SetInfo& cand = r.candidate;
  std::string out = "# Benchmark report\n\n";
  out += "Toolkit " + r.toolkit_version;
  if (!cand.solver_version.empty()) out += ", solver " + cand.solver_version;
  out += ".\n\n";
  out += table({"Set", "Source", "Problem", "Model", "η", "Instances"},
               {{base.label, cell(base.source), cell(base.problem), cell(base.model), cell(base.eta),
                 std::to_string(base.instances)},
                {cand.label, cell(cand.source), cell(cand.problem), cell(cand.model), cell(cand.eta),
                 std::to_string(cand.instances)}});

  if (r.feasibility) {
    out += "## Feasibility\n\n";
    auto line = [](const SetInfo& s, const FeasibilityReport& f) {
      return with_labels(s, {std::to_string(f.total), std::to_string(f.optimal), std::to_string(f.feasible_time_limit),
                             std::to_string(f.infeasible), std::to_string(f.unbounded),
                             std::to_string(f.time_limit_no_incumbent), std::to_string(f.error),
                             pct(f.ratio_percent)});
    };
    out += table(label_header({"Total", "Optimal", "Feasible at limit", "Infeasible", "Unbounded", "No incumbent",
                               "Error", "Feasible (%)"}),
                 {line(base, r.feasibility->baseline), line(cand, r.feasibility->candidate)});
  }

  if (r.structural) {
    out += "## Structural similarity\n\n";
    std::vector<std::string> header;
    std::vector<std::string> cells;
    for (const auto& [name, score] : r.structural->per_feature) {
      header.push_back(name);
      cells.push_back(num(score));
    }
    header.push_back("Overall");
    cells.push_back(num(r.structural->overall));
    out += table(label_header(header), {with_labels(cand, cells)});
  }

  if (r.nodes) {
    out += "## Branching nodes\n\n";
    const NodeBlock& n = *r.nodes;
    out += table(label_header({"Baseline mean", "Candidate mean", "Baseline total", "Candidate total", "RE (%)"}),
                 {with_labels(cand, {num(n.baseline.nodes.mean, 1), num(n.candidate.nodes.mean, 1),
                                     num(n.baseline.node_sum, 0), num(n.candidate.node_sum, 0),
                                     pct(n.relative_error_percent)})});
  }

  if (r.time_gap) {
    out += "## Solving time\n\n";
    const TimeGapBlock& t = *r.time_gap;
    out += table(label_header({"Baseline mean (s)", "Candidate mean (s)", "Gap (%)"}),
                 {with_labels(cand, {num(t.baseline_mean), num(t.candidate_mean), pct(t.gap_percent)})});
  }

  if (r.internal_features) {
    const InternalFeatureBlock& b = *r.internal_features;
    auto scalar = [&](const char* title, const ScalarComparison& c) {
      out += std::string("## ") + title + "\n\n";
      out += table(label_header({"Baseline mean", "Baseline std", "Candidate mean", "Candidate std", "W1"}),
                   {with_labels(cand, {num(c.a.mean), num(c.a.std), num(c.b.mean), num(c.b.std), num(c.w1)})});
    };
    scalar("Root node gap", b.root_gap);
    scalar("Heuristic success count", b.heuristics);
    out += "## Cut plane usage\n\n";
    if (b.cuts)
      out += table(label_header(pc_header(b.cuts->w1.size())), {with_labels(cand, pc_cells(*b.cuts))});
    else
      out += "No cut statistics in the logs.\n\n";
  }

  if (r.split_half_baseline) out += split_half_markdown(*r.split_half_baseline, "Split-half: " + base.label);
  if (r.split_half_candidate) out += split_half_markdown(*r.split_half_candidate, "Split-half: " + cand.label);

  if (r.tuning) {
    out += "## Tuning\n\n";
    const TuningResult& t = *r.tuning;
    std::vector<std::vector<std::string>> rows = {
        {"tuning (" + cand.label + ")", num(t.default_mean, 3), num(t.best_mean, 3),
         pct(t.tuning_improvement_percent)}};
    if (t.test_default)
      rows.push_back({"test (" + base.label + ")", num(t.test_default->mean_time, 3), num(t.test_best->mean_time, 3),
                      pct(*t.test_improvement_percent)});
    out += table({"Set", "Default (s)", "Best (s)", "Improv. (%)"}, rows);
    std::vector<std::string> names, values;
    for (const auto& [k, v] : t.best_config) {
      names.push_back(k);
      values.push_back(v);
    }
    if (!names.empty()) out += table(names, {values});
  }

  out += "## Diagnostics\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : r.stages) rows.push_back({s.stage, s.state, cell(s.message)});
  out += table({"Stage", "State", "Message"}, rows);
  for (const auto& n : r.notes) out += "- " + n + "\n";
  return out;
}

}  // namespace

std::string render_report(const ComparisonReport& report, ReportFormat format)
{
  switch (format) {
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    case ReportFormat::Markdown: return comparison_markdown(report);
    case ReportFormat::Csv: {
      std::string out = "metric,set,value\n";
      if (report.internal_features) {
        const auto& b = *report.internal_features;
        csv_samples(out, "root_gap", report.baseline.label, b.root_gap.samples_a);
        csv_samples(out, "root_gap", report.candidate.label, b.root_gap.samples_b);
        csv_samples(out, "heuristic_success", report.baseline.label, b.heuristics.samples_a);
        csv_samples(out, "heuristic_success", report.candidate.label, b.heuristics.samples_b);
      }
      return out;
    }
  }
  throw Error(ErrorCode::UnknownFormat, "unknown report format");
}

std::string render_report(const SplitHalfReport& report, ReportFormat format)
{
  switch (format) {
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    case ReportFormat::Markdown: return "# Split-half report\n\n" + split_half_markdown(report, "Halves");
    case ReportFormat::Csv: {
      std::string out = "metric,set,value\n";
      csv_samples(out, "root_gap", "half_a", report.root_gap.samples_a);
      csv_samples(out, "root_gap", "half_b", report.root_gap.samples_b);
      csv_samples(out, "heuristic_success", "half_a", report.heuristics.samples_a);
      csv_samples(out, "heuristic_success", "half_b", report.heuristics.samples_b);
      return out;
    }
  }
  throw Error(ErrorCode::UnknownFormat, "unknown report format");
}

std::string rerender_report_json(const json& j, ReportFormat format)
{
  const std::string kind = j.value("kind", std::string());
  if (kind == "comparison") return render_report(comparison_report_from_json(j), format);
  if (kind == "split_half") return render_report(split_half_report_from_json(j), format);
  throw Error(ErrorCode::MalformedFile, "not a report: missing or unknown 'kind'");
}

}  // namespace genbench
