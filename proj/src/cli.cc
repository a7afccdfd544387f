/*
 * Copyright 2026 The NUM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "num/cli.h"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "num/concordance.h"
#include "num/cross_validation.h"
#include "num/enhancement.h"
#include "num/errors.h"
#include "num/estimation.h"
#include "num/metrics.h"
#include "num/runs.h"
#include "num/session.h"
#include "num/synth.h"
#include "num/trailtext.h"

namespace num::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error("sha256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

// Writes to --out when given, else to the command's stdout stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw UsageError("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

// Flags shared by every command that reads sessions.
struct InputFlags {
  std::string path;
  std::int64_t default_snippet_len = 80;
  bool filter = false;

  void Add(CLI::App* cmd) {
    cmd->add_option("sessions", path, "Session log (JSONL)")->required();
    cmd->add_option("--default-snippet-len", default_snippet_len,
                    "Snippet length used when a result has none");
    cmd->add_flag("--filter", filter,
                  "Drop single-query sessions without clicks");
  }

  std::vector<Session> Load(std::string* raw = nullptr) const {
    const std::string text = ReadFile(path);
    if (raw != nullptr) *raw = text;
    ParseOptions options;
    options.default_snippet_len = default_snippet_len;
    std::vector<Session> sessions = ParseSessions(text, options);
    if (filter) sessions = FilterSessions(std::move(sessions));
    return sessions;
  }
};

struct MetricFlags {
  MetricParams params;
  std::optional<std::int64_t> L;
  std::optional<std::int64_t> rt_len;
  std::string dup_policy = "include";

  void Add(CLI::App* cmd) {
    cmd->add_option("--F", params.F, "Fraction of a clicked document read")
        ->capture_default_str();
    cmd->add_option("--L", L, "Decay horizon in characters (estimated if absent)");
    cmd->add_option("--H", params.H, "Highest relevance level")->capture_default_str();
    cmd->add_option("--rt-len", rt_len,
                    "Reformulation text length (estimated if absent)");
    cmd->add_option("--dup-policy", dup_policy, "include | discount | exclude")
        ->check(CLI::IsMember({"include", "discount", "exclude"}))
        ->capture_default_str();
    cmd->add_option("--dup-discount", params.dup_policy.discount,
                    "Gain multiplier for repeated documents")
        ->capture_default_str();
    cmd->add_option("--bq", params.b_q, "sDCG query log base")->capture_default_str();
    cmd->add_option("--br", params.b_r, "sDCG rank log base")->capture_default_str();
    cmd->add_option("--p", params.p, "sRBP patience")->capture_default_str();
    cmd->add_option("--b", params.b, "sRBP query balance")->capture_default_str();
    cmd->add_option("--lambda", params.lambda, "RS-metric recency decay")
        ->capture_default_str();
    cmd->add_flag("--no-session-norm", params.ablation.no_session_norm,
                  "NUM without session-level normalization");
    cmd->add_flag("--no-rt", params.ablation.no_reformulation_text,
                  "NUM without reformulation text");
    cmd->add_flag("--no-enhancement", params.ablation.no_enhancement,
                  "NUM without click-through enhancement");
  }

  // Fills L and the reformulation length, estimating whichever was not given.
  MetricParams Resolve(const std::vector<Session>& sessions,
                       const EstimationConfig& cfg, bool need_lengths,
                       std::ostream& err) const {
    MetricParams out = params;
    out.dup_policy.mode = ParseDuplicateMode(dup_policy);
    if (rt_len) {
      out.reformulation_len = *rt_len;
    } else if (need_lengths) {
      const RtEstimate rt = EstimateRtLength(sessions, cfg);
      out.reformulation_len = rt.length;
      err << "estimated reformulation length " << rt.length << " from "
          << rt.n_intervals << " intervals\n";
    }
    if (L) {
      out.L = *L;
    } else if (need_lengths) {
      out.L = EstimateL(sessions, cfg, out);
      err << "estimated L " << out.L << " from " << sessions.size() << " sessions\n";
    }
    out.Validate();
    return out;
  }
};

struct EstimationFlags {
  EstimationConfig cfg;

  void Add(CLI::App* cmd) {
    cmd->add_option("--mtl-discard", cfg.mtl_discard_frac,
                    "Fraction of largest-MTL sessions discarded")
        ->capture_default_str();
    cmd->add_option("--rt-discard", cfg.rt_discard_frac,
                    "Fraction of largest reformulation intervals discarded")
        ->capture_default_str();
    cmd->add_option("--reading-speed", cfg.reading_speed, "Characters per minute")
        ->capture_default_str();
  }
};

ordered_json ParamsJson(const MetricParams& p) {
  ordered_json j;
  j["F"] = p.F;
  j["L"] = p.L;
  j["H"] = p.H;
  j["rt_len"] = p.reformulation_len;
  j["dup_policy"] = std::string(ToString(p.dup_policy.mode));
  j["dup_discount"] = p.dup_policy.discount;
  j["b_q"] = p.b_q;
  j["b_r"] = p.b_r;
  j["p"] = p.p;
  j["b"] = p.b;
  j["lambda"] = p.lambda;
  j["ablation"] = {{"no_session_norm", p.ablation.no_session_norm},
                   {"no_reformulation_text", p.ablation.no_reformulation_text},
                   {"no_enhancement", p.ablation.no_enhancement}};
  return j;
}

ordered_json TrailtextJson(const Trailtext& tt) {
  ordered_json arr = ordered_json::array();
  for (const TrailString& s : tt.strings()) {
    ordered_json j;
    j["kind"] = std::string(ToString(s.kind));
    j["length"] = s.length;
    j["gain"] = s.gain;
    j["end_pos"] = s.end_pos;
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json OptionalJson(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json();
}

// ---- eval ----

struct EvalCommand {
  InputFlags input;
  MetricFlags metric;
  EstimationFlags estimation;
  std::vector<std::string> metrics;
  std::string run_tag;
  std::string out_path;
  std::string report_path;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("eval", "Score sessions with one or more metrics");
    input.Add(cmd);
    metric.Add(cmd);
    estimation.Add(cmd);
    cmd->add_option("--metric", metrics,
                    "num, um, um-q, sdcg, sdcg-q, srbp, srbp-q, rsdcg, rsrbp, ap, lcd")
        ->required()
        ->allow_extra_args(false)
        ->delimiter(',');
    cmd->add_option("--run-tag", run_tag, "Adds a run_tag column with this value");
    cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    cmd->add_option("--report", report_path, "Also write a JSON evaluation report");
  }

  int Execute(std::ostream& out, std::ostream& err) {
    std::vector<MetricKind> kinds;
    bool need_lengths = false;
    for (const std::string& name : metrics) {
      try {
        kinds.push_back(ParseMetricKind(name));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      need_lengths |= IsUMeasureFamily(kinds.back());
    }
    std::string raw;
    const std::vector<Session> sessions = input.Load(&raw);
    const MetricParams params =
        metric.Resolve(sessions, estimation.cfg, need_lengths, err);

    Output csv(out_path, out);
    *csv << "session_id," << (run_tag.empty() ? "" : "run_tag,") << "metric,score\n";
    ordered_json rows = ordered_json::array();
    ordered_json aggregate;
    std::size_t warnings = 0;
    for (MetricKind kind : kinds) {
      const std::string name(ToString(kind));
      double sum = 0.0;
      std::size_t count = 0, errors = 0;
      for (const Session& s : sessions) {
        *csv << s.session_id << ',' << (run_tag.empty() ? "" : run_tag + ",") << name
             << ',';
        ordered_json row;
        row["session_id"] = s.session_id;
        if (!run_tag.empty()) row["run_tag"] = run_tag;
        row["metric"] = name;
        try {
          const double score = Evaluate(kind, s, params);
          *csv << FormatDouble(score) << '\n';
          row["score"] = score;
          sum += score;
          ++count;
        } catch (const UndefinedMetricError& e) {
          *csv << "error:" << e.code() << '\n';
          row["score"] = nullptr;
          row["error"] = e.code();
          ++errors;
          ++warnings;
        }
        rows.push_back(std::move(row));
      }
      aggregate[name] = {{"mean", count > 0 ? ordered_json(sum / count) : ordered_json()},
                         {"count", count},
                         {"errors", errors}};
    }
    if (warnings > 0) err << "warning: " << warnings << " undefined scores\n";
    if (!report_path.empty()) {
      ordered_json report;
      report["provenance"] = {
          {"tool", "num"},
          {"version", kVersion},
          {"command", "eval"},
          {"metrics", metrics},
          {"params", ParamsJson(params)},
          {"filter", input.filter},
          {"default_snippet_len", input.default_snippet_len},
          {"seed", nullptr},
          {"inputs", ordered_json::array({{{"path", input.path},
                                           {"sha256", Sha256Hex(raw)}}})}};
      report["aggregate"] = std::move(aggregate);
      report["scores"] = std::move(rows);
      Output file(report_path, out);
      *file << report.dump(2) << '\n';
    }
    return kExitOk;
  }
};

// ---- estimate ----

struct EstimateCommand {
  InputFlags input;
  EstimationFlags estimation;
  double F = 0.20;
  std::optional<std::int64_t> rt_len;
  std::string out_path;

  void Add(CLI::App& app) {
    CLI::App* cmd =
        app.add_subcommand("estimate", "Estimate L and the reformulation length");
    input.Add(cmd);
    estimation.Add(cmd);
    cmd->add_option("--F", F, "Fraction of a clicked document read")->capture_default_str();
    cmd->add_option("--rt-len", rt_len, "Use this reformulation length instead");
    cmd->add_option("--out", out_path, "JSON output path (default stdout)");
  }

  int Execute(std::ostream& out, std::ostream&) {
    estimation.cfg.default_snippet_len = input.default_snippet_len;
    const std::vector<Session> sessions = input.Load();
    MetricParams params;
    params.F = F;
    std::size_t n_intervals = 0;
    if (rt_len) {
      params.reformulation_len = *rt_len;
    } else {
      const RtEstimate rt = EstimateRtLength(sessions, estimation.cfg);
      params.reformulation_len = rt.length;
      n_intervals = rt.n_intervals;
    }
    const std::int64_t L = EstimateL(sessions, estimation.cfg, params);
    ordered_json j;
    j["L"] = L;
    j["rt_len"] = params.reformulation_len;
    j["n_sessions"] = sessions.size();
    j["n_intervals"] = n_intervals;
    Output o(out_path, out);
    *o << j.dump() << '\n';
    return kExitOk;
  }
};

// ---- correlate ----

struct CorrelateCommand {
  InputFlags input;
  MetricFlags metric;
  EstimationFlags estimation;
  std::string metric_name;
  int folds = 5;
  int repeats = 10;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_path;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "correlate", "Cross-validated correlation with user satisfaction");
    input.Add(cmd);
    metric.Add(cmd);
    estimation.Add(cmd);
    cmd->add_option("--metric", metric_name, "Metric to meta-evaluate")->required();
    cmd->add_option("--folds", folds, "Folds per repeat")->capture_default_str();
    cmd->add_option("--repeats", repeats, "Repeats")->capture_default_str();
    cmd->add_option("--seed", seed, "Shuffle seed")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", out_path, "JSON output path (default stdout)");
  }

  int Execute(std::ostream& out, std::ostream& err) {
    MetricKind kind;
    try {
      kind = ParseMetricKind(metric_name);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    estimation.cfg.default_snippet_len = input.default_snippet_len;
    std::string raw;
    const std::vector<Session> sessions = input.Load(&raw);
    // Corpus-level L and rt_len are not used: the tuner estimates them per
    // training split.
    const MetricParams base = metric.Resolve(sessions, estimation.cfg, false, err);
    CrossValidationConfig cfg;
    cfg.folds = folds;
    cfg.repeats = repeats;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.estimation = estimation.cfg;
    const CrossValidationReport report =
        CrossValidate(sessions, MakeFamily(kind, base), cfg);

    ordered_json j;
    j["metric"] = report.metric;
    j["rho"] = report.mean_rho;
    j["tau"] = report.mean_tau;
    j["grid_searched"] = report.grid_searched;
    j["grid_size"] = report.grid_size;
    j["n_sessions"] = sessions.size();
    j["n_scored_folds"] = report.n_scored_folds;
    ordered_json fold_list = ordered_json::array();
    for (const FoldResult& f : report.folds) {
      ordered_json fj;
      fj["repeat"] = f.repeat;
      fj["fold"] = f.fold;
      fj["n_train"] = f.n_train;
      fj["n_test"] = f.n_test;
      fj["params"] = ParamsJson(f.selected);
      fj["train_rho"] = OptionalJson(f.train_rho);
      fj["rho"] = OptionalJson(f.rho);
      fj["tau"] = OptionalJson(f.tau);
      fj["n_undefined"] = f.n_undefined;
      fold_list.push_back(std::move(fj));
    }
    j["folds"] = std::move(fold_list);
    j["provenance"] = {{"tool", "num"},
                       {"version", kVersion},
                       {"command", "correlate"},
                       {"seed", seed},
                       {"folds", folds},
                       {"repeats", repeats},
                       {"filter", input.filter},
                       {"base_params", ParamsJson(base)},
                       {"inputs", ordered_json::array({{{"path", input.path},
                                                        {"sha256", Sha256Hex(raw)}}})}};
    Output o(out_path, out);
    *o << j.dump(2) << '\n';
    return kExitOk;
  }
};

// ---- concordance ----

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

struct ConcordanceCommand {
  std::vector<std::string> score_files;
  std::string metric_a;
  std::string metric_b;
  std::vector<std::string> golds{"ap", "lcd"};
  std::string pairs_path;
  bool exclude_gold_ties = false;
  std::string out_path;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "concordance", "Preference agreement of two metrics with golden standards");
    cmd->add_option("scores", score_files,
                    "CSV files with columns session_id,run_tag,metric,score")
        ->required();
    cmd->add_option("--metric-a", metric_a, "First metric")->required();
    cmd->add_option("--metric-b", metric_b, "Second metric")->required();
    cmd->add_option("--gold", golds, "Golden-standard metrics")
        ->capture_default_str()
        ->allow_extra_args(false)
        ->delimiter(',');
    cmd->add_option("--pairs", pairs_path,
                    "TSV of 'session_id run_a run_b' (default: all run pairs)");
    cmd->add_flag("--exclude-gold-ties", exclude_gold_ties,
                  "Leave gold-tied pairs out of the denominators");
    cmd->add_option("--out", out_path, "JSON output path (default stdout)");
  }

  int Execute(std::ostream& out, std::ostream& err) {
    std::map<std::string, ScoredSessionSet> sets;
    std::size_t skipped = 0;
    for (const std::string& path : score_files) {
      std::istringstream in(ReadFile(path));
      std::string line;
      std::getline(in, line);
      const std::vector<std::string> header = SplitCsv(line);
      const std::vector<std::string> expected{"session_id", "run_tag", "metric", "score"};
      if (header != expected) {
        throw ParseError(1, "<header>", path + ": expected session_id,run_tag,metric,score");
      }
      std::size_t line_no = 1;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> cells = SplitCsv(line);
        if (cells.size() != 4) throw ParseError(line_no, "<line>", path + ": expected 4 cells");
        if (cells[3].starts_with("error:")) {
          ++skipped;
          continue;
        }
        double score = 0.0;
        auto [ptr, ec] = std::from_chars(cells[3].data(), cells[3].data() + cells[3].size(), score);
        if (ec != std::errc() || ptr != cells[3].data() + cells[3].size()) {
          throw ParseError(line_no, "score", path + ": not a number");
        }
        auto it = sets.try_emplace(cells[2], cells[2]).first;
        it->second.Add({cells[0], cells[1]}, score);
      }
    }
    if (skipped > 0) err << "warning: skipped " << skipped << " undefined scores\n";
    auto need = [&](const std::string& name) -> const ScoredSessionSet& {
      auto it = sets.find(name);
      if (it == sets.end()) throw ValidationError("no scores for metric '" + name + "'");
      return it->second;
    };
    const ScoredSessionSet& a = need(metric_a);
    const ScoredSessionSet& b = need(metric_b);
    std::vector<ScoredSessionSet> gold_sets;
    for (const std::string& g : golds) gold_sets.push_back(need(g));

    std::vector<ItemPair> pairs;
    if (pairs_path.empty()) {
      pairs = AllRunPairs(a);
    } else {
      std::istringstream in(ReadFile(pairs_path));
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string sid, ra, rb, extra;
        if (!(fields >> sid)) continue;
        if (!(fields >> ra >> rb) || (fields >> extra)) {
          throw ParseError(line_no, "<line>", "expected 'session_id run_a run_b'");
        }
        pairs.push_back({{sid, ra}, {sid, rb}});
      }
    }
    ConcordanceOptions options;
    options.exclude_gold_ties = exclude_gold_ties;
    const ConcordanceReport report = Concordance(a, b, gold_sets, pairs, options);

    ordered_json j;
    j["metric_a"] = report.metric_a;
    j["metric_b"] = report.metric_b;
    j["n_pairs"] = pairs.size();
    j["n_disagreements"] = report.n_disagreements;
    ordered_json gj;
    for (const GoldAgreement& g : report.golds) {
      gj[g.gold] = {{"conc_a", OptionalJson(g.conc_a)},
                    {"conc_b", OptionalJson(g.conc_b)},
                    {"n_compared", g.n_compared}};
    }
    j["gold"] = std::move(gj);
    Output o(out_path, out);
    *o << j.dump(2) << '\n';
    return kExitOk;
  }
};

// ---- transform-runs ----

struct TransformCommand {
  std::string mode = "ideal";
  std::string pools_path;
  int top_k = 10;
  std::string run_tag;
  std::string out_path;
  std::string sessions_path;
  std::string sessions_out;
  std::int64_t default_snippet_len = 80;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("transform-runs",
                                       "Build original, ideal or diversified runs");
    cmd->add_option("--mode", mode, "original | ideal | diversified")
        ->check(CLI::IsMember({"original", "ideal", "diversified"}))
        ->capture_default_str();
    cmd->add_option("--pools", pools_path,
                    "Candidate pool TSV: session_id query_index doc_id score "
                    "snippet_len doc_len")
        ->required();
    cmd->add_option("--top-k", top_k, "Results kept per query")->capture_default_str();
    cmd->add_option("--run-tag", run_tag, "Run tag (default: the mode)");
    cmd->add_option("--out", out_path, "Run TSV output path (default stdout)");
    cmd->add_option("--sessions", sessions_path,
                    "Original sessions, for projecting clicks onto the run");
    cmd->add_option("--sessions-out", sessions_out,
                    "Write the projected sessions (JSONL) here");
    cmd->add_option("--default-snippet-len", default_snippet_len,
                    "Snippet length used when a result has none");
  }

  int Execute(std::ostream& out, std::ostream& err) {
    if (sessions_out.empty() != sessions_path.empty()) {
      throw UsageError("--sessions and --sessions-out go together");
    }
    const CandidatePool pool = ParsePool(ReadFile(pools_path));
    const TransformMode m = ParseTransformMode(mode);
    std::vector<std::string> warnings;
    const num::Run run = TransformRuns(pool, m, top_k, run_tag.empty() ? mode : run_tag,
                                  &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
    {
      Output o(out_path, out);
      WriteRun(*o, run);
    }
    if (!sessions_path.empty()) {
      ParseOptions options;
      options.default_snippet_len = default_snippet_len;
      const std::vector<Session> sessions = ParseSessions(ReadFile(sessions_path), options);
      std::vector<Session> projected;
      for (const Session& s : sessions) {
        SessionRankings rankings;
        for (auto it = run.rankings.lower_bound({s.session_id, 0});
             it != run.rankings.end() && it->first.first == s.session_id; ++it) {
          rankings[it->first.second] = it->second;
        }
        projected.push_back(ProjectSession(s, rankings, pool));
      }
      Output o(sessions_out, out);
      WriteSessions(*o, projected);
    }
    return kExitOk;
  }
};

// ---- synth ----

struct SynthCommand {
  SynthConfig cfg;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string pools_out;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("synth", "Generate a synthetic session log");
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--n", cfg.n_sessions, "Number of sessions")->capture_default_str();
    cmd->add_option("--min-queries", cfg.min_queries)->capture_default_str();
    cmd->add_option("--max-queries", cfg.max_queries)->capture_default_str();
    cmd->add_option("--results", cfg.results_per_query, "Results per query")
        ->capture_default_str();
    cmd->add_option("--click-top", cfg.click_prob_top, "Click probability at rank 1")
        ->capture_default_str();
    cmd->add_option("--click-decay", cfg.click_decay, "Per-rank click decay")
        ->capture_default_str();
    cmd->add_option("--overlap", cfg.overlap_prob,
                    "Chance a result repeats an earlier document")
        ->capture_default_str();
    cmd->add_option("--repeat-frac", cfg.repeat_fraction,
                    "Fraction of sessions with a skipped-then-clicked document")
        ->capture_default_str();
    cmd->add_option("--rt-mean", cfg.reformulation_mean_s,
                    "Mean reformulation gap in seconds")
        ->capture_default_str();
    cmd->add_option("--extra-candidates", cfg.extra_candidates,
                    "Unshown candidates per query pool")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Session JSONL output path (default stdout)");
    cmd->add_option("--pools-out", pools_out, "Also write candidate pools (TSV)");
  }

  int Execute(std::ostream& out, std::ostream&) {
    const std::vector<Session> sessions = SynthSessions(cfg, seed);
    {
      Output o(out_path, out);
      WriteSessions(*o, sessions);
    }
    if (!pools_out.empty()) {
      Output o(pools_out, out);
      WritePool(*o, SynthPool(sessions, cfg, seed));
    }
    return kExitOk;
  }
};

// ---- enhance ----

struct EnhanceCommand {
  InputFlags input;
  std::string out_path;

  void Add(CLI::App& app) {
    CLI::App* cmd =
        app.add_subcommand("enhance", "Write sessions with session-level labels");
    input.Add(cmd);
    cmd->add_option("--out", out_path, "JSONL output path (default stdout)");
  }

  int Execute(std::ostream& out, std::ostream&) {
    const std::vector<Session> sessions = input.Load();
    Output o(out_path, out);
    for (const Session& s : sessions) *o << SerializeSession(EnhanceLabels(s)) << '\n';
    return kExitOk;
  }
};

// ---- trailtext-debug ----

struct TrailtextCommand {
  InputFlags input;
  MetricFlags metric;
  EstimationFlags estimation;
  std::vector<std::string> session_ids;
  std::string out_path;

  void Add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "trailtext-debug", "Dump actual and ideal trailtexts as JSON lines");
    input.Add(cmd);
    metric.Add(cmd);
    estimation.Add(cmd);
    cmd->add_option("--session", session_ids, "Only these session ids")
        ->allow_extra_args(false);
    cmd->add_option("--out", out_path, "JSONL output path (default stdout)");
  }

  int Execute(std::ostream& out, std::ostream& err) {
    const std::vector<Session> sessions = input.Load();
    const MetricParams params = metric.Resolve(sessions, estimation.cfg, true, err);
    Output o(out_path, out);
    for (const Session& s : sessions) {
      if (!session_ids.empty() &&
          std::find(session_ids.begin(), session_ids.end(), s.session_id) ==
              session_ids.end()) {
        continue;
      }
      ordered_json j;
      j["session_id"] = s.session_id;
      j["mtl"] = Mtl(s, params);
      try {
        const NumBreakdown nb = NumDetailed(s, params);
        j["actual"] = TrailtextJson(nb.actual);
        j["ideal"] = TrailtextJson(nb.ideal);
        j["u_actual"] = nb.u_actual;
        j["u_ideal"] = nb.u_ideal;
        j["num"] = nb.score;
      } catch (const UndefinedMetricError& e) {
        j["error"] = e.code();
      }
      *o << j.dump() << '\n';
    }
    return kExitOk;
  }
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalized U-measure session evaluation toolkit", "num"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  EvalCommand eval;
  EstimateCommand estimate;
  CorrelateCommand correlate;
  ConcordanceCommand concordance;
  TransformCommand transform;
  SynthCommand synth;
  EnhanceCommand enhance;
  TrailtextCommand trailtext;
  eval.Add(app);
  estimate.Add(app);
  correlate.Add(app);
  concordance.Add(app);
  transform.Add(app);
  synth.Add(app);
  enhance.Add(app);
  trailtext.Add(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "eval") return eval.Execute(out, err);
    if (name == "estimate") return estimate.Execute(out, err);
    if (name == "correlate") return correlate.Execute(out, err);
    if (name == "concordance") return concordance.Execute(out, err);
    if (name == "transform-runs") return transform.Execute(out, err);
    if (name == "synth") return synth.Execute(out, err);
    if (name == "enhance") return enhance.Execute(out, err);
    if (name == "trailtext-debug") return trailtext.Execute(out, err);
    err << "usage error: unknown subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitModuleError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitModuleError;
  }
}

}  // namespace num::cli
