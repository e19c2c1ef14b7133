// Copyright 2026 The fecburst Authors
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

#include "fecburst/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "fecburst/errors.h"
#include "fecburst/erasure_model.h"
#include "fecburst/multiblock.h"
#include "fecburst/simulator.h"
#include "fecburst/single_block.h"
#include "json.hpp"

namespace fecburst::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  return fmt::format("{:.12g}", v);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson };

struct CommonOptions {
  int n = 0;
  int k = 0;
  std::string format = "csv";
  std::string out_path;

  Format fmt() const { return format == "json" ? Format::kJson : Format::kCsv; }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_code = true) {
  if (with_code) {
    cmd->add_option("--n", opts.n, "Block size N (data packets)")->required();
    cmd->add_option("--k", opts.k, "Redundancy size K (packets)")->required();
  }
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "Write output to this file");
}

CodeParams code_params(const CommonOptions& opts) {
  CodeParams params{opts.n, opts.k};
  params.validate();
  return params;
}

LossProbability checked_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p out of range [0, 1]");
  return LossProbability(p);
}

// A number for JSON output; NaN becomes null.
json json_number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

// Rows of named columns, rendered as CSV or as a JSON array of objects.
class Table {
 public:
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(std::vector<json> cells) { rows_.push_back(std::move(cells)); }

  std::string render(Format format) const {
    if (format == Format::kJson) {
      json out = json::array();
      for (const auto& row : rows_) {
        json obj = json::object();
        for (std::size_t c = 0; c < columns_.size(); ++c) {
          obj[columns_[c]] = row[c];
        }
        out.push_back(std::move(obj));
      }
      return out.dump(2) + "\n";
    }
    std::string text = join(columns_) + "\n";
    for (const auto& row : rows_) {
      std::vector<std::string> cells;
      for (const json& cell : row) cells.push_back(csv_cell(cell));
      text += join(cells) + "\n";
    }
    return text;
  }

 private:
  static std::string csv_cell(const json& cell) {
    if (cell.is_null()) return "NA";
    if (cell.is_number_float()) return format_number(cell.get<double>());
    if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_array()) {
      std::string joined;
      for (const json& v : cell) {
        if (!joined.empty()) joined += ";";
        joined += csv_cell(v);
      }
      return joined;
    }
    return cell.dump();
  }

  static std::string join(const std::vector<std::string>& parts) {
    std::string text;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) text += ",";
      text += parts[i];
    }
    return text;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

void emit(const std::string& text, const CommonOptions& opts,
          std::ostream& out) {
  if (opts.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + opts.out_path);
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing output file: " + opts.out_path);
}

// --- qdist ------------------------------------------------------------------

struct QdistOptions : CommonOptions {
  double p = 0.0;
};

void cmd_qdist(const QdistOptions& opts, std::ostream& out) {
  const auto dist = q_distribution(code_params(opts), checked_p(opts.p));
  const double p_residual = residual_loss_probability(dist);
  if (opts.fmt() == Format::kJson) {
    json doc = {{"n", opts.n},
                {"k", opts.k},
                {"p", opts.p},
                {"q", std::vector<double>(dist.q().begin(), dist.q().end())},
                {"p_residual", p_residual}};
    emit(doc.dump(2) + "\n", opts, out);
    return;
  }
  std::string text = "i,q\n";
  for (int i = 0; i <= dist.n(); ++i) {
    text += fmt::format("{},{}\n", i, format_number(dist[i]));
  }
  text += "p_L," + format_number(p_residual) + "\n";
  emit(text, opts, out);
}

// --- burst ------------------------------------------------------------------

struct BurstOptions : CommonOptions {
  double p = 0.0;
  std::string mode = "multi";
  std::optional<double> epsilon;
  std::optional<std::int64_t> terms;
};

void cmd_burst(const BurstOptions& opts, std::ostream& out) {
  const auto dist = q_distribution(code_params(opts), checked_p(opts.p));
  if (opts.mode == "single") {
    if (opts.epsilon || opts.terms) {
      throw DomainError("--epsilon/--terms apply only to --mode multi");
    }
    Table table({"n", "k", "p", "q0", "ec_single"});
    table.add_row({opts.n, opts.k, opts.p, dist.q0(),
                   expected_burst_single_block(dist)});
    emit(table.render(opts.fmt()), opts, out);
    return;
  }
  if (opts.epsilon && opts.terms) {
    throw DomainError("give exactly one of --epsilon and --terms");
  }
  if (opts.epsilon && !(*opts.epsilon > 0.0)) {
    throw DomainError("epsilon must be positive");
  }
  if (opts.terms && *opts.terms < 1) throw DomainError("terms must be >= 1");

  TruncatedResult result;
  if (opts.terms) {
    if (!(dist.lossy_mass() > 0.0)) {
      throw UndefinedQuantityError("no losses possible");
    }
    result = expected_burst_dp(dist, *opts.terms);
  } else {
    result = expected_burst_converged(dist, opts.epsilon.value_or(kDefaultEpsilon));
  }
  Table table({"n", "k", "p", "q0", "ec_coded", "terms_used", "error_bound",
               "value_error_bound", "series", "pruned_mass"});
  table.add_row({opts.n, opts.k, opts.p, dist.q0(), result.value,
                 result.terms_used, result.error_bound,
                 result.value_error_bound(), result.series,
                 result.pruned_mass});
  emit(table.render(opts.fmt()), opts, out);
}

// --- required-terms ---------------------------------------------------------

struct RequiredTermsOptions : CommonOptions {
  std::vector<double> p_values;
  double epsilon = kDefaultEpsilon;
};

void cmd_required_terms(const RequiredTermsOptions& opts, std::ostream& out,
                        std::ostream& err) {
  const CodeParams params = code_params(opts);
  if (!(opts.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  for (double p : opts.p_values) checked_p(p);

  Table table({"p", "q0", "n"});
  for (double p : opts.p_values) {
    const auto dist = q_distribution(params, LossProbability(p));
    json terms = nullptr;
    try {
      terms = required_terms(params.n, dist.q0(), opts.epsilon);
    } catch (const DomainError& e) {
      err << "p=" << format_number(p) << ": " << e.what() << "\n";
    }
    table.add_row({p, dist.q0(), terms});
  }
  emit(table.render(opts.fmt()), opts, out);
}

// --- sweep ------------------------------------------------------------------

struct SweepOptions : CommonOptions {
  double p_min = 0.0;
  double p_max = 0.3;
  double p_step = 0.05;
  double epsilon = kDefaultEpsilon;
};

std::vector<double> sweep_grid(const SweepOptions& opts) {
  if (!(opts.p_step > 0.0)) throw DomainError("p step must be positive");
  if (!(opts.p_min >= 0.0 && opts.p_max < 1.0 && opts.p_min <= opts.p_max)) {
    throw DomainError("p out of range: need 0 <= p-min <= p-max < 1");
  }
  const auto count = static_cast<std::int64_t>(
      std::floor((opts.p_max - opts.p_min) / opts.p_step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::int64_t i = 0; i < count; ++i) {
    grid.push_back(std::min(opts.p_min + i * opts.p_step, opts.p_max));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void cmd_sweep(const SweepOptions& opts, std::ostream& out,
               std::ostream& err) {
  const CodeParams params = code_params(opts);
  if (!(opts.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const std::vector<double> grid = sweep_grid(opts);

  Table table({"p", "ec_coded", "terms_used", "error_bound", "ec_uncoded",
               "p_residual"});
  for (double p : grid) {
    const auto dist = q_distribution(params, LossProbability(p));
    json ec = nullptr, terms = nullptr, bound = nullptr;
    if (dist.lossy_mass() > 0.0 && dist.q0() > 0.0) {
      try {
        const TruncatedResult r = expected_burst_converged(dist, opts.epsilon);
        ec = r.value;
        terms = r.terms_used;
        bound = r.error_bound;
      } catch (const FeasibilityError& e) {
        err << "p=" << format_number(p) << ": " << e.what() << "\n";
        if (e.required()) terms = *e.required();
      }
    }
    table.add_row({p, ec, terms, bound, baseline_expected_burst(p),
                   residual_loss_probability(dist)});
  }
  emit(table.render(opts.fmt()), opts, out);
}

// --- simulate ---------------------------------------------------------------

struct SimulateOptions : CommonOptions {
  double p = 0.0;
  std::int64_t blocks = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
};

void cmd_simulate(const SimulateOptions& opts, std::ostream& out,
                  std::ostream& err) {
  SimConfig config{code_params(opts), checked_p(opts.p).value(), opts.blocks,
                   opts.seed, opts.threads};
  if (opts.blocks < 1) throw DomainError("blocks must be >= 1");
  const BurstReport report = simulate(config);
  if (report.degenerate) {
    err << "warning: losses observed but no multiblock pattern completed "
           "before the end of the stream\n";
  }
  Table table({"n", "k", "p", "blocks", "seed", "pattern_ratio_mean",
               "standard_error_ratio", "pattern_count", "discarded_patterns",
               "burst_length_mean", "standard_error_burst", "burst_count",
               "discarded_bursts", "single_block_mean",
               "single_block_standard_error", "lossy_blocks", "degenerate",
               "empirical_q"});
  table.add_row({opts.n, opts.k, opts.p, opts.blocks, opts.seed,
                 json_number(report.pattern_ratio_mean),
                 json_number(report.standard_error_ratio),
                 report.pattern_count, report.discarded_patterns,
                 json_number(report.burst_length_mean),
                 json_number(report.standard_error_burst), report.burst_count,
                 report.discarded_bursts,
                 json_number(report.single_block.mean),
                 json_number(report.single_block.standard_error),
                 report.lossy_blocks, report.degenerate, report.empirical_q});
  emit(table.render(opts.fmt()), opts, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Residual loss and loss burstiness under block erasure coding",
               "fecburst"};
  app.require_subcommand(1);

  QdistOptions qdist;
  auto* qdist_cmd =
      app.add_subcommand("qdist", "Unrecoverable-loss distribution Q(i)");
  add_common(qdist_cmd, qdist);
  qdist_cmd->add_option("--p", qdist.p, "Network loss probability")->required();

  BurstOptions burst;
  auto* burst_cmd =
      app.add_subcommand("burst", "Expected length of consecutive losses");
  add_common(burst_cmd, burst);
  burst_cmd->add_option("--p", burst.p, "Network loss probability")->required();
  burst_cmd->add_option("--mode", burst.mode, "single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  burst_cmd->add_option("--epsilon", burst.epsilon, "Series error tolerance");
  burst_cmd->add_option("--terms", burst.terms, "Explicit number of terms");

  RequiredTermsOptions req;
  auto* req_cmd = app.add_subcommand(
      "required-terms", "Series terms needed for a given error bound");
  add_common(req_cmd, req);
  req_cmd->add_option("--p", req.p_values, "Loss probabilities")
      ->required()
      ->delimiter(',');
  req_cmd->add_option("--epsilon", req.epsilon, "Error tolerance");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Coded vs uncoded burst length over a grid of p");
  add_common(sweep_cmd, sweep);
  sweep_cmd->add_option("--p-min", sweep.p_min, "First p");
  sweep_cmd->add_option("--p-max", sweep.p_max, "Last p");
  sweep_cmd->add_option("--p-step", sweep.p_step, "Grid step");
  sweep_cmd->add_option("--epsilon", sweep.epsilon, "Error tolerance");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate");
  add_common(sim_cmd, sim);
  sim_cmd->add_option("--p", sim.p, "Network loss probability")->required();
  sim_cmd->add_option("--blocks", sim.blocks, "Number of blocks");
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (*qdist_cmd) cmd_qdist(qdist, out);
    if (*burst_cmd) cmd_burst(burst, out);
    if (*req_cmd) cmd_required_terms(req, out, err);
    if (*sweep_cmd) cmd_sweep(sweep, out, err);
    if (*sim_cmd) cmd_simulate(sim, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const UndefinedQuantityError& e) {
    err << "error: " << e.what() << "\n";
    return kUndefined;
  } catch (const FeasibilityError& e) {
    err << "error: " << e.what();
    if (e.required()) err << " (required n = " << *e.required() << ")";
    err << "; pass --terms to compute a truncated value\n";
    return kFeasibility;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

}  // namespace fecburst::cli
