#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pripel/errors.hpp"
#include "pripel/metrics.hpp"
#include "pripel/pipeline.hpp"
#include "pripel/xes.hpp"

namespace pripel::cli {

namespace {

namespace fs = std::filesystem;

// "Age=0.5" -> ("Age", 0.5)
std::pair<std::string, double> split_assignment(const std::string& text) {
  auto pos = text.rfind('=');
  if (pos == std::string::npos || pos == 0) throw CLI::ValidationError("expected NAME=VALUE, got '" + text + "'");
  try {
    std::size_t used = 0;
    double value = std::stod(text.substr(pos + 1), &used);
    if (used != text.size() - pos - 1) throw std::invalid_argument(text);
    return {text.substr(0, pos), value};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("expected NAME=VALUE, got '" + text + "'");
  }
}

fs::path report_path_for(const fs::path& out) {
  fs::path p = out;
  p.replace_extension(".report.json");
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
}

struct AnonymizeArgs {
  std::string input;
  std::string out;
  std::string schema;
  double epsilon = 0.0;
  std::size_t max_depth = 30;
  std::int64_t prune = 0;
  std::uint64_t seed = 0;
  bool greedy = false;
  double shift_scale = TimestampNoise{}.shift_scale;
  double interval_scale = TimestampNoise{}.interval_scale;
  std::vector<std::string> attr_epsilon;
  std::vector<std::string> sensitivity;
};

struct ReportArgs {
  std::string original;
  std::string anonymized;
  std::string schema;
  std::vector<std::string> attrs;
  std::int64_t bucket_ms = 86'400'000;
  std::string out;
};

struct InspectArgs {
  std::string input;
  std::string schema;
};

AttributeSchema load_schema(const std::string& path) { return path.empty() ? AttributeSchema{} : read_schema_file(path); }

int do_anonymize(const AnonymizeArgs& a, std::ostream& out) {
  PipelineConfig cfg;
  cfg.query.epsilon = a.epsilon;
  cfg.query.max_depth = a.max_depth;
  cfg.query.prune = a.prune;
  cfg.noise.epsilon = a.epsilon;
  cfg.noise.time.shift_scale = a.shift_scale;
  cfg.noise.time.interval_scale = a.interval_scale;
  cfg.matching = a.greedy ? MatchingMode::Greedy : MatchingMode::Optimal;
  cfg.seed = a.seed;
  for (const auto& s : a.attr_epsilon) {
    auto [name, v] = split_assignment(s);
    cfg.overrides[name].epsilon = v;
  }
  for (const auto& s : a.sensitivity) {
    auto [name, v] = split_assignment(s);
    cfg.overrides[name].sensitivity = v;
  }

  const EventLog log = read_xes_file(a.input, load_schema(a.schema));
  PipelineResult result = run_pripel(log, cfg);
  write_xes_file(a.out, result.log);
  const fs::path report = report_path_for(a.out);
  write_text(report, result.report.to_json() + "\n");

  const auto& r = result.report;
  out << "input " << r.original_traces << " traces; released " << r.query_size << " sequences ("
      << r.unmatched << " unmatched); wrote " << r.output_traces << " traces to " << a.out << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "report: " << report.string() << "\n";
  return kOk;
}

int do_report(const ReportArgs& a, std::ostream& out) {
  const AttributeSchema declared = load_schema(a.schema);
  const EventLog original = read_xes_file(a.original, declared);
  const EventLog anonymized = read_xes_file(a.anonymized, declared);
  std::vector<std::string> attrs = a.attrs;
  if (attrs.empty()) {
    for (const auto& [name, spec] : original.schema()) {
      if (spec.kind == AttributeKind::Boolean) attrs.push_back(name);
    }
  }
  const UtilityReport report = compare(original, anonymized, attrs, a.bucket_ms);
  if (a.out.empty()) {
    out << report.to_json() << "\n";
  } else {
    write_text(a.out + ".json", report.to_json() + "\n");
    write_text(a.out + ".csv", report.series_csv());
    out << "wrote " << a.out << ".json and " << a.out << ".csv\n";
  }
  return kOk;
}

int do_inspect(const InspectArgs& a, std::ostream& out) {
  const LogStats s = inspect(read_xes_file(a.input, load_schema(a.schema)));
  out << s.traces << " traces, " << s.events << " events, " << s.variants << " variants\n";
  return kOk;
}

// Inserts "--key=value" for every entry of the anonymize config file right
// after the subcommand, so that later command-line values override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  auto sub = std::find(args.begin(), args.end(), "anonymize");
  if (sub == args.end()) return args;
  std::string path;
  for (auto it = sub + 1; it != args.end(); ++it) {
    if (*it == "--config" && it + 1 != args.end()) {
      path = *(it + 1);
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
    }
  }
  if (path.empty() || !fs::is_regular_file(path)) return args;

  std::vector<std::string> inserted;
  for (const auto& item : CLI::ConfigTOML().from_file(path)) {
    if (item.name == "++" || item.name == "--" || item.name == "config") continue;
    if (!item.parents.empty() && item.parents != std::vector<std::string>{"anonymize"}) {
      throw CLI::ConversionError("unknown config section in '" + path + "': " + item.fullname());
    }
    const std::string flag = (item.name.size() == 1 ? "-" : "--") + item.name;
    for (const auto& value : item.inputs) inserted.push_back(item.name.size() == 1 ? flag + value : flag + "=" + value);
  }
  std::vector<std::string> out(args.begin(), sub + 1);
  out.insert(out.end(), inserted.begin(), inserted.end());
  out.insert(out.end(), sub + 1, args.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private publishing of process event logs with context"};
  app.name("pripel");
  app.require_subcommand(1);

  AnonymizeArgs an;
  auto* anonymize = app.add_subcommand("anonymize", "Anonymize an XES log");
  anonymize->add_option("input", an.input, "Input XES log")->required()->check(CLI::ExistingFile);
  anonymize->add_option("--epsilon", an.epsilon, "Privacy parameter of the variant query and default for attributes")
      ->required()
      ->check(CLI::PositiveNumber);
  anonymize->add_option("-n,--max-depth", an.max_depth, "Maximum prefix length n")->capture_default_str()
      ->check(CLI::PositiveNumber);
  anonymize->add_option("-k,--prune", an.prune, "Pruning threshold k")->required()->check(CLI::PositiveNumber);
  anonymize->add_option("--seed", an.seed, "Master seed")->capture_default_str();
  anonymize->add_option("--schema", an.schema, "JSON attribute schema")->check(CLI::ExistingFile);
  anonymize->add_flag("--greedy-matching", an.greedy, "Greedy instead of optimal matching");
  anonymize->add_option("--shift-scale", an.shift_scale, "Laplace scale of the per-trace shift (ms)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  anonymize->add_option("--interval-scale", an.interval_scale, "Laplace scale of interval noise (ms)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  anonymize->add_option("--attr-epsilon", an.attr_epsilon, "Per-attribute epsilon, NAME=VALUE (repeatable)")
      ->allow_extra_args(false);
  anonymize->add_option("--sensitivity", an.sensitivity, "Per-attribute numeric sensitivity, NAME=VALUE (repeatable)")
      ->allow_extra_args(false);
  anonymize->add_option("--out", an.out, "Output XES path")->required();
  std::string config_unused;
  anonymize->add_option("--config", config_unused, "Key-value config file; command-line flags take precedence")
      ->check(CLI::ExistingFile);
  for (auto* opt : anonymize->get_options()) {
    if (opt->get_expected_max() == 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  ReportArgs rp;
  auto* report = app.add_subcommand("report", "Compare utility of an original and an anonymized log");
  report->add_option("original", rp.original, "Original XES log")->required()->check(CLI::ExistingFile);
  report->add_option("anonymized", rp.anonymized, "Anonymized XES log")->required()->check(CLI::ExistingFile);
  report->add_option("--attr", rp.attrs, "Boolean attribute to compare (repeatable; default: all boolean attributes)")
      ->allow_extra_args(false);
  report->add_option("--bucket-ms", rp.bucket_ms, "Width of an active-cases bucket (ms)")->capture_default_str()
      ->check(CLI::PositiveNumber);
  report->add_option("--schema", rp.schema, "JSON attribute schema")->check(CLI::ExistingFile);
  report->add_option("--out", rp.out, "Output prefix for <prefix>.json and <prefix>.csv");

  InspectArgs in;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print trace, event and variant counts");
  inspect_cmd->add_option("input", in.input, "XES log")->required()->check(CLI::ExistingFile);
  inspect_cmd->add_option("--schema", in.schema, "JSON attribute schema")->check(CLI::ExistingFile);

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App* failing = &app;
    for (auto* sub : {anonymize, report, inspect_cmd}) {
      if (sub->parsed()) failing = sub;
    }
    err << failing->help();
    return kUsage;
  }

  try {
    if (anonymize->parsed()) return do_anonymize(an, out);
    if (report->parsed()) return do_report(rp, out);
    return do_inspect(in, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
}

}  // namespace pripel::cli
