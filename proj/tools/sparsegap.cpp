// Command-line front end. Talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sparsegap.h"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  int n = 1024;
  int d = 10;
  double epsilon = 0.2;
  std::uint64_t seed = 0;
  std::optional<int> k, m;
  std::string seeds;
  std::string partition_source = "pipeline-random";
  std::optional<double> cluster_s, cluster_growth;
  std::optional<int> cluster_levels;
  std::optional<double> useless_budget, bad_budget;
  bool lp_oracle = false;
  bool lp_exact = false;
  bool sample_terminals = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_seeds) {
  cmd->add_option("--config", f.config, "flat key=value config file");
  cmd->add_option("--out", f.out, "artifact directory");
  cmd->add_option("--n", f.n, "vertex count (even)");
  cmd->add_option("--d", f.d, "matchings per vertex");
  cmd->add_option("--epsilon", f.epsilon, "parameter epsilon");
  cmd->add_option("--seed", f.seed, "seed");
  cmd->add_option("--k", f.k, "terminal count override");
  cmd->add_option("--m", f.m, "pair budget override");
  if (with_seeds)
    cmd->add_option("--seeds", f.seeds, "seed list: a,b,c or lo..hi");
  cmd->add_option("--partition-source", f.partition_source,
                  "pipeline-random | singleton | file:<path> | bfs-balls:<r>");
  cmd->add_option("--cluster-s", f.cluster_s, "cluster size base override");
  cmd->add_option("--cluster-growth", f.cluster_growth,
                  "threshold growth exponent override");
  cmd->add_option("--cluster-levels", f.cluster_levels, "level count override");
  cmd->add_option("--useless-budget", f.useless_budget,
                  "useless vertex budget override");
  cmd->add_option("--bad-budget", f.bad_budget, "bad vertex budget override");
  cmd->add_flag("--lp-oracle", f.lp_oracle, "run the LP oracle");
  cmd->add_flag("--lp-exact", f.lp_exact, "exact rational LP mode");
  cmd->add_flag("--sample-terminals", f.sample_terminals,
                "sample terminals instead of lowest ids");
}

std::string render_config(const CommonFlags& f) {
  std::ostringstream os;
  os << "n = " << f.n << "\n";
  os << "d = " << f.d << "\n";
  os << "epsilon = " << f.epsilon << "\n";
  os << "seed = " << f.seed << "\n";
  if (f.k) os << "k = " << *f.k << "\n";
  if (f.m) os << "m = " << *f.m << "\n";
  if (!f.seeds.empty()) os << "seeds = " << f.seeds << "\n";
  os << "partition_source = " << f.partition_source << "\n";
  if (f.cluster_s) os << "cluster_s = " << *f.cluster_s << "\n";
  if (f.cluster_growth) os << "cluster_growth = " << *f.cluster_growth << "\n";
  if (f.cluster_levels) os << "cluster_levels = " << *f.cluster_levels << "\n";
  if (f.useless_budget) os << "useless_budget = " << *f.useless_budget << "\n";
  if (f.bad_budget) os << "bad_budget = " << *f.bad_budget << "\n";
  if (f.lp_oracle) os << "lp_oracle = 1\n";
  if (f.lp_exact) os << "lp_exact = 1\n";
  if (f.sample_terminals) os << "sample_terminals = 1\n";
  return os.str();
}

std::string out_dir(const CommonFlags& f) {
  if (!f.out.empty()) return f.out;
  const char* env = std::getenv("SPARSEGAP_ARTIFACTS");
  std::string root = env ? env : ".";
  return root + "/run_n" + std::to_string(f.n) + "_s" + std::to_string(f.seed);
}

// The C entry points take config paths; when the run is described by flags we
// materialize the config next to the artifacts so it is part of the record.
std::string config_path(const CommonFlags& f, const std::string& dir) {
  if (!f.config.empty()) return f.config;
  std::filesystem::create_directories(dir);
  std::string path = dir + "/config.txt";
  std::ofstream os(path, std::ios::binary);
  os << render_config(f);
  return path;
}

int report_status(int rc, const char* err) {
  if (rc == SG_PARTIAL) {
    std::cerr << "partial certificate (see deviations in certificate.json)\n";
    return 2;
  }
  if (rc != SG_OK) {
    std::cerr << "error: " << err << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gap-instance construction and certification pipeline"};
  app.require_subcommand(1);

  CommonFlags gen_f, cert_f, sweep_f;
  std::string export_dir, export_format = "csv";

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  add_common(gen, gen_f, false);
  CLI::App* certify =
      app.add_subcommand("certify", "full pipeline + gap certificate");
  add_common(certify, cert_f, false);
  CLI::App* sweep = app.add_subcommand("sweep", "multi-seed pipeline sweep");
  add_common(sweep, sweep_f, true);
  CLI::App* exp = app.add_subcommand("export", "export report files");
  exp->add_option("--dir", export_dir, "artifact directory")->required();
  exp->add_option("--format", export_format, "csv | dot");
  app.add_subcommand("oracle", "run the brute-force oracle cross-checks");

  CLI11_PARSE(app, argc, argv);

  char err[1024] = {0};
  if (gen->parsed()) {
    std::string dir = out_dir(gen_f);
    int rc = sg_run_gen(config_path(gen_f, dir).c_str(), dir.c_str(), err,
                        sizeof err);
    if (rc == SG_OK) std::cout << dir << "\n";
    return report_status(rc, err);
  }
  if (certify->parsed()) {
    std::string dir = out_dir(cert_f);
    int rc = sg_run_pipeline(config_path(cert_f, dir).c_str(), dir.c_str(),
                             err, sizeof err);
    if (rc != SG_ERROR) std::cout << dir << "\n";
    return report_status(rc, err);
  }
  if (sweep->parsed()) {
    std::string dir = out_dir(sweep_f);
    int rc = sg_run_sweep(config_path(sweep_f, dir).c_str(), dir.c_str(), err,
                          sizeof err);
    if (rc != SG_ERROR) std::cout << dir << "\n";
    return report_status(rc, err);
  }
  if (exp->parsed()) {
    int rc = sg_export_report(export_dir.c_str(), export_format.c_str(), err,
                              sizeof err);
    return report_status(rc, err);
  }
  // oracle
  std::string buf(8192, '\0');
  int rc = sg_oracle_suite(buf.data(), buf.size());
  std::cout << buf.c_str();
  return rc == SG_OK ? 0 : 1;
}
