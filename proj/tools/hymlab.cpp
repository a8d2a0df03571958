#include <CLI11.hpp>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "acceptance.hpp"
#include "hymlab/experiment.hpp"
#include "hymlab/hn.hpp"
#include "hymlab/trace_io.hpp"

namespace {

using namespace hymlab;

// exit codes: 0 success, 1 usage or config error, 2 numerical failure,
// 3 acceptance failure

bool parse_double_token(const std::string& s, double* out) {
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && !s.empty();
}

bool parse_int_token(const std::string& s, int* out) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty()) return false;
  *out = static_cast<int>(v);
  return true;
}

int hn_usage() {
  std::fprintf(stderr,
               "usage: hymlab hn-type ext K D1 [D2 ...]\n"
               "       hymlab hn-type sym K D1 [D2 ...]\n"
               "       hymlab hn-type tensor (D1 D2 ...) (E1 E2 ...) [...]\n");
  return 1;
}

void print_type(const HNType& t) {
  for (double v : t.mu) std::printf("%.12g\n", v);
}

int cmd_hn_type(const std::vector<std::string>& args) {
  if (args.empty()) return hn_usage();
  const std::string& op = args[0];

  if (op == "ext" || op == "sym") {
    if (args.size() < 3) return hn_usage();
    int k = 0;
    if (!parse_int_token(args[1], &k)) return hn_usage();
    std::vector<double> mu;
    for (std::size_t i = 2; i < args.size(); ++i) {
      double v = 0.0;
      if (!parse_double_token(args[i], &v)) return hn_usage();
      mu.push_back(v);
    }
    HNType a = sort_tau(std::move(mu));
    print_type(op == "ext" ? ext_power_type(a, k) : sym_power_type(a, k));
    return 0;
  }

  if (op == "tensor") {
    std::string joined;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (i > 1) joined += ' ';
      joined += args[i];
    }
    std::vector<HNType> groups;
    std::size_t pos = 0;
    while (pos < joined.size()) {
      if (std::isspace(static_cast<unsigned char>(joined[pos]))) {
        ++pos;
        continue;
      }
      if (joined[pos] != '(') return hn_usage();
      const std::size_t close = joined.find(')', pos);
      if (close == std::string::npos) return hn_usage();
      std::istringstream body(joined.substr(pos + 1, close - pos - 1));
      std::vector<double> mu;
      std::string tok;
      while (body >> tok) {
        double v = 0.0;
        if (!parse_double_token(tok, &v)) return hn_usage();
        mu.push_back(v);
      }
      if (mu.empty()) return hn_usage();
      groups.push_back(sort_tau(std::move(mu)));
      pos = close + 1;
    }
    if (groups.size() < 2) return hn_usage();
    HNType acc = groups[0];
    for (std::size_t i = 1; i < groups.size(); ++i)
      acc = tensor_type(acc, groups[i]);
    print_type(acc);
    return 0;
  }

  return hn_usage();
}

int cmd_run(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read config file %s\n",
                 config_path.c_str());
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  ExperimentConfig cfg = parse_experiment_config(buf.str());
  ExperimentResult res = run_experiment(cfg);

  // All content is rendered before the first write, so a failure leaves no
  // partial trace behind.
  const std::string& prefix = cfg.outputs.prefix;
  std::vector<std::pair<std::string, std::string>> files;
  auto emit_trace = [&](const FlowTrace& trace, const std::string& stem) {
    if (cfg.outputs.jsonl) files.emplace_back(stem + ".jsonl", trace_jsonl(trace));
    if (cfg.outputs.csv) files.emplace_back(stem + ".csv", trace_csv(trace));
    if (cfg.outputs.svg)
      for (auto& g : trace_svgs(trace))
        files.emplace_back(stem + "_" + g.name + ".svg", std::move(g.svg));
  };
  if (res.trace_b.has_value()) {
    emit_trace(res.trace, prefix + "_a");
    emit_trace(*res.trace_b, prefix + "_b");
    files.emplace_back(prefix + "_pair.csv", pair_csv(res.pair_t, res.pair));
  } else {
    emit_trace(res.trace, prefix);
  }

  for (const auto& [path, content] : files) {
    write_text_file(path, content);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int cmd_accept(const std::vector<std::string>& names) {
  std::vector<accept::SuiteResult> results;
  if (names.empty()) {
    results = accept::run_all();
  } else {
    for (const auto& n : names) results.push_back(accept::run_suite(n));
  }

  bool all_pass = true;
  for (const auto& s : results) {
    for (const auto& c : s.checks)
      std::printf("%s.%s measured=%.9e threshold=%.9e cmp=%s pass=%s\n",
                  s.name.c_str(), c.id.c_str(), c.measured, c.threshold,
                  c.at_least ? "ge" : "le", c.pass ? "true" : "false");
    std::printf("suite %s index=%d pass=%s\n", s.name.c_str(), s.index,
                s.pass() ? "true" : "false");
    all_pass = all_pass && s.pass();
  }
  return all_pass ? 0 : 3;
}

int cmd_plot(const std::string& trace_path, std::string prefix) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read trace file %s\n",
                 trace_path.c_str());
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  FlowTrace trace = parse_trace_jsonl(buf.str());

  if (prefix.empty()) {
    prefix = trace_path;
    if (prefix.size() > 6 && prefix.ends_with(".jsonl"))
      prefix.resize(prefix.size() - 6);
  }
  for (const auto& g : trace_svgs(trace)) {
    const std::string path = prefix + "_" + g.name + ".svg";
    write_text_file(path, g.svg);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian-Yang-Mills flow laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "integrate a configured experiment");
  run->add_option("config", config_path, "JSON experiment config")->required();

  auto* hn = app.add_subcommand(
      "hn-type", "Harder-Narasimhan type arithmetic: ext, sym, tensor");
  hn->prefix_command();

  std::vector<std::string> suites;
  auto* acc = app.add_subcommand("accept", "run acceptance suites");
  acc->add_option("suites", suites, "suite names (default: all)");

  std::string trace_path, plot_prefix;
  auto* plot = app.add_subcommand("plot", "render SVG plots from a trace");
  plot->add_option("trace", trace_path, "JSON-lines trace file")->required();
  plot->add_option("--prefix", plot_prefix, "output prefix (default: trace stem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (hn->parsed()) return cmd_hn_type(hn->remaining());
    if (acc->parsed()) return cmd_accept(suites);
    if (plot->parsed()) return cmd_plot(trace_path, plot_prefix);
  } catch (const hymlab::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const hymlab::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 1;
}
