// Copyright 2026 The FairAudit Authors
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

// Command-line front end. Everything goes through the C API in
// fairaudit.h; this translation unit contains no auditing logic.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairaudit.h"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1729;  // fixed, not wall clock

struct ClassHandle {
  fa_class* ptr = nullptr;
  ~ClassHandle() { fa_class_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { fa_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

[[noreturn]] void die_runtime(const std::string& where) {
  std::cerr << "error: " << where << ": " << fa_last_error() << "\n";
  std::exit(2);
}

std::uint64_t resolve_seed(const std::string& seed_flag) {
  if (seed_flag.empty()) return kDefaultSeed;
  if (seed_flag == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(seed_flag, &pos);
    if (pos != seed_flag.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    std::cerr << "error: --seed expects an integer or 'random', got '"
              << seed_flag << "'\n";
    std::exit(1);
  }
}

void write_file_or_die(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(2);
  }
  out << body;
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fa_class* load_class_or_die(const std::string& path) {
  fa_class* cls = nullptr;
  if (fa_class_load(path.c_str(), &cls) != FA_OK) die_runtime("loading " + path);
  return cls;
}

int run_audit(const std::string& class_file, const std::string& method,
              long target, const std::string& remote_url, double eps,
              double delta, long budget, const std::string& seed_flag,
              bool trace, const std::string& out_path,
              const std::string& cal_mode) {
  std::uint64_t seed = resolve_seed(seed_flag);
  std::cout << "seed: " << seed << "\n";

  ClassHandle cls{load_class_or_die(class_file)};
  OwnedString result;
  fa_status status;
  if (!remote_url.empty()) {
    status = fa_audit_remote(cls.ptr, method.c_str(), remote_url.c_str(), eps,
                             delta, budget, seed, cal_mode.c_str(), &result.ptr);
  } else {
    if (target < 0) {
      std::cerr << "error: audit needs --target or --remote\n";
      return 1;
    }
    status = fa_audit(cls.ptr, method.c_str(), static_cast<size_t>(target),
                      eps, delta, budget, seed, cal_mode.c_str(), &result.ptr);
  }
  if (status != FA_OK) die_runtime("audit");

  json j = json::parse(result.str());
  if (trace && j.contains("rounds")) {
    for (const auto& round : j["rounds"]) std::cout << round.dump() << "\n";
  }
  std::cout << "method = " << method << ", eps = " << eps << "\n";
  std::cout << "queries = " << j["queries"].get<long>() << "\n";
  std::cout << "estimate = " << j["estimate"].get<double>() << "\n";
  if (j.contains("diameter")) {
    std::cout << "mp-diameter = " << j["diameter"].get<double>() << "\n";
  }
  if (j.contains("abs_error")) {
    std::cout << "abs-error = " << j["abs_error"].get<double>() << "\n";
  }
  if (j["truncated"].get<bool>()) std::cout << "truncated = true\n";
  if (!out_path.empty()) write_file_or_die(out_path, j.dump(2) + "\n");
  return 0;
}

int run_cost(const std::string& class_file, double eps, bool with_xtd) {
  ClassHandle cls{load_class_or_die(class_file)};
  const char* cache_dir = std::getenv("FAIRAUDIT_CACHE_DIR");
  int c = 0;
  if (fa_cost(cls.ptr, eps, cache_dir, &c) != FA_OK) die_runtime("cost");
  std::cout << "Cost(H) = " << c << "\n";
  if (with_xtd) {
    int t = 0;
    if (fa_xtd(cls.ptr, eps, &t) != FA_OK) die_runtime("xtd");
    std::cout << "XTD(H, mu, eps) = " << t << "\n";
  }
  return 0;
}

int run_specset(const std::string& class_file, double eps,
                const std::string& h_flag, const std::string& mode,
                double delta, const std::string& seed_flag,
                const std::string& out_path) {
  std::uint64_t seed = resolve_seed(seed_flag);
  std::cout << "seed: " << seed << "\n";
  ClassHandle cls{load_class_or_die(class_file)};

  size_t num_h = 0, domain_size = 0;
  double pi1 = 0.0;
  fa_class_info(cls.ptr, &num_h, &domain_size, &pi1);

  // --h takes a hypothesis index or a JSON file with a +/-1 label array.
  std::vector<int8_t> reference(domain_size);
  bool is_index = !h_flag.empty() &&
                  h_flag.find_first_not_of("0123456789") == std::string::npos;
  if (is_index) {
    size_t idx = std::stoull(h_flag);
    if (fa_class_hypothesis(cls.ptr, idx, reference.data()) != FA_OK) {
      die_runtime("resolving --h index");
    }
  } else {
    json labels = json::parse(read_file_or_die(h_flag), nullptr, false);
    if (labels.is_discarded() || !labels.is_array() ||
        labels.size() != domain_size) {
      std::cerr << "error: --h file must hold a label array of length "
                << domain_size << "\n";
      return 1;
    }
    for (size_t i = 0; i < domain_size; ++i) {
      int v = labels[i].get<int>();
      if (v != 1 && v != -1) {
        std::cerr << "error: --h labels must be +1 or -1\n";
        return 1;
      }
      reference[i] = static_cast<int8_t>(v);
    }
  }

  OwnedString result;
  if (fa_specifying_set(cls.ptr, eps, reference.data(), mode.c_str(), delta,
                        seed, &result.ptr) != FA_OK) {
    die_runtime("specset");
  }
  json j = json::parse(result.str());
  std::cout << "mode = " << mode << ", size = " << j["size"].get<size_t>()
            << "\n";
  std::cout << "set = " << j["set"].dump() << "\n";
  if (!out_path.empty()) write_file_or_die(out_path, j.dump(2) + "\n");
  return 0;
}

int run_gaussian(int dim, double eps, const std::string& model_flag,
                 long n_random, bool paper_sign, const std::string& pops_file,
                 const std::string& seed_flag, const std::string& out_path) {
  std::uint64_t seed = resolve_seed(seed_flag);
  std::cout << "seed: " << seed << "\n";

  std::vector<double> a;
  double b = 0.0;
  if (!model_flag.empty()) {
    std::stringstream ss(model_flag);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        std::cerr << "error: --model expects comma-separated numbers\n";
        return 1;
      }
    }
    if (values.size() != static_cast<size_t>(dim) + 1) {
      std::cerr << "error: --model needs " << dim
                << " weights and one offset (a1,...,ad,b)\n";
      return 1;
    }
    b = values.back();
    values.pop_back();
    a = std::move(values);
  } else if (n_random <= 0) {
    std::cerr << "error: gaussian needs --model or --random N\n";
    return 1;
  }

  OwnedString csv;
  if (fa_gaussian_trials(static_cast<size_t>(dim), eps, seed,
                         model_flag.empty() ? n_random : 0,
                         a.empty() ? nullptr : a.data(), b,
                         &csv.ptr) != FA_OK) {
    die_runtime("gaussian trials");
  }
  std::cout << csv.str();
  if (!out_path.empty()) write_file_or_die(out_path, csv.str());

  // Two-group audit for an explicit model; populations default to the
  // canonical shifted pair unless --pops provides them.
  if (!model_flag.empty()) {
    std::string pops;
    if (!pops_file.empty()) pops = read_file_or_die(pops_file);
    OwnedString audit;
    if (fa_gaussian_two_group(static_cast<size_t>(dim), eps, a.data(), b,
                              pops.empty() ? nullptr : pops.c_str(),
                              paper_sign ? 1 : 0, &audit.ptr) != FA_OK) {
      die_runtime("gaussian two-group audit");
    }
    json j = json::parse(audit.str());
    std::cout << "two-group: mu_hat = " << j["mu_hat"].get<double>()
              << ", mu_true = " << j["mu_true"].get<double>()
              << ", abs_error = " << j["abs_error"].get<double>()
              << ", queries = " << j["queries"].get<long>() << "\n";
  } else if (paper_sign) {
    std::cout << "note: --paper-sign affects only the two-group audit "
                 "(give --model)\n";
  }
  return 0;
}

int run_experiment_cmd(const std::string& config_path,
                       const std::string& out_override,
                       const std::string& seed_flag) {
  std::string text = read_file_or_die(config_path);
  json cfg = json::parse(text, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object()) {
    std::cerr << "error: config is not valid JSON\n";
    return 1;
  }
  if (!seed_flag.empty()) cfg["seed"] = resolve_seed(seed_flag);
  if (!out_override.empty()) cfg["out"] = out_override;
  std::cout << "seed: " << cfg.value("seed", std::uint64_t{0}) << "\n";

  OwnedString runs, summary;
  if (fa_experiment_run(cfg.dump().c_str(), &runs.ptr, &summary.ptr) != FA_OK) {
    die_runtime("experiment");
  }
  std::cout << summary.str();
  std::string out = cfg.value("out", "");
  if (!out.empty()) {
    std::cout << "runs written to " << out << " (summary alongside)\n";
  } else {
    std::cout << runs.str();
  }
  return 0;
}

int run_serve(const std::string& class_file, long target,
              const std::string& host, int port) {
  ClassHandle cls{load_class_or_die(class_file)};
  std::cout << "serving " << class_file << "[" << target << "] on " << host
            << ":" << port << "\n"
            << std::flush;
  if (fa_serve(cls.ptr, static_cast<size_t>(target), host.c_str(), port) !=
      FA_OK) {
    die_runtime("serve");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairaudit: query-efficient demographic-parity auditing"};
  app.require_subcommand(1);

  // audit
  auto* audit = app.add_subcommand("audit", "run one auditor against a model");
  std::string a_method, a_class, a_seed, a_out, a_remote, a_cal_mode = "checked";
  long a_target = -1, a_budget = -1;
  double a_eps = 0.1, a_delta = 0.1;
  bool a_trace = false;
  audit->add_option("--method", a_method, "iid | cal | minimax | oracle")
      ->required()
      ->check(CLI::IsMember({"iid", "cal", "minimax", "oracle"}));
  audit->add_option("--class", a_class, "hypothesis-class JSON file")->required();
  audit->add_option("--target", a_target, "audited hypothesis index");
  audit->add_option("--remote", a_remote, "audit a model server at this URL");
  audit->add_option("--eps", a_eps, "target accuracy")->required();
  audit->add_option("--delta", a_delta, "failure probability budget");
  audit->add_option("--budget", a_budget, "label budget (omit for unbounded)");
  audit->add_option("--seed", a_seed, "integer seed or 'random'");
  audit->add_option("--cal-mode", a_cal_mode, "checked | sampled")
      ->check(CLI::IsMember({"checked", "sampled"}));
  audit->add_flag("--trace", a_trace, "print per-round JSON lines");
  audit->add_option("--out", a_out, "write the full result JSON here");

  // cost
  auto* cost_cmd = app.add_subcommand("cost", "minimax query complexity");
  std::string c_class;
  double c_eps = 0.1;
  bool c_xtd = false;
  cost_cmd->add_option("--class", c_class, "hypothesis-class JSON file")
      ->required();
  cost_cmd->add_option("--eps", c_eps, "target accuracy")->required();
  cost_cmd->add_flag("--xtd", c_xtd, "also report the extended teaching dimension");

  // specset
  auto* spec = app.add_subcommand("specset", "specifying sets for a labeling");
  // free the short -h so the spec'd --h option name stays available
  spec->set_help_flag("--help", "print this help message and exit");
  std::string s_class, s_h, s_mode = "exact", s_seed, s_out;
  double s_eps = 0.1, s_delta = 0.05;
  spec->add_option("--class", s_class, "hypothesis-class JSON file")->required();
  spec->add_option("--eps", s_eps, "target accuracy")->required();
  spec->add_option("--h", s_h, "hypothesis index or JSON label-array file")
      ->required();
  spec->add_option("--mode", s_mode, "exact | greedy | online")
      ->check(CLI::IsMember({"exact", "greedy", "online"}));
  spec->add_option("--delta", s_delta, "online-mode failure budget");
  spec->add_option("--seed", s_seed, "integer seed or 'random'");
  spec->add_option("--out", s_out, "write the result JSON here");

  // gaussian
  auto* gauss = app.add_subcommand(
      "gaussian", "audit linear models under Gaussian subpopulations");
  std::string g_model, g_seed, g_out, g_pops;
  int g_dim = 1;
  long g_random = 0;
  double g_eps = 0.05;
  bool g_paper_sign = false;
  gauss->add_option("--dim", g_dim, "feature dimension")->required();
  gauss->add_option("--eps", g_eps, "target accuracy")->required();
  gauss->add_option("--model", g_model, "a1,...,ad,b of the audited model");
  gauss->add_option("--random", g_random, "number of random models to try");
  gauss->add_flag("--paper-sign", g_paper_sign,
                  "report group0 - group1 instead of group1 - group0");
  gauss->add_option("--pops", g_pops, "populations JSON file (m0,m1,s0,s1)");
  gauss->add_option("--seed", g_seed, "integer seed or 'random'");
  gauss->add_option("--out", g_out, "write the trial CSV here");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run the budget-sweep harness");
  std::string e_config, e_out, e_seed;
  exp->add_option("--config", e_config, "experiment config JSON")->required();
  exp->add_option("--out", e_out, "override the config's output path");
  exp->add_option("--seed", e_seed, "override the config's seed");

  // serve
  auto* serve = app.add_subcommand("serve", "expose a model over HTTP");
  std::string v_class, v_host = "0.0.0.0";
  long v_target = 0;
  int v_port = 0;
  serve->add_option("--class", v_class, "hypothesis-class JSON file")->required();
  serve->add_option("--target", v_target, "served hypothesis index")->required();
  serve->add_option("--port", v_port, "listen port")->required();
  serve->add_option("--host", v_host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? 0 : 1;
  }

  if (audit->parsed()) {
    if (!a_remote.empty() && a_target >= 0) {
      std::cerr << "error: --target and --remote are mutually exclusive\n";
      return 1;
    }
    return run_audit(a_class, a_method, a_target, a_remote, a_eps, a_delta,
                     a_budget, a_seed, a_trace, a_out, a_cal_mode);
  }
  if (cost_cmd->parsed()) return run_cost(c_class, c_eps, c_xtd);
  if (spec->parsed()) {
    return run_specset(s_class, s_eps, s_h, s_mode, s_delta, s_seed, s_out);
  }
  if (gauss->parsed()) {
    return run_gaussian(g_dim, g_eps, g_model, g_random, g_paper_sign, g_pops,
                        g_seed, g_out);
  }
  if (exp->parsed()) return run_experiment_cmd(e_config, e_out, e_seed);
  if (serve->parsed()) return run_serve(v_class, v_target, v_host, v_port);
  return 1;
}
