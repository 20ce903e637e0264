#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congestion.hpp"
#include "surgery.hpp"

namespace sparsegap {

// Flat key=value config. Unknown keys are hard errors naming the key.
struct PipelineConfig {
  InstanceParams params;
  std::vector<std::uint64_t> seeds;  // nonempty -> sweep
  std::string partition_source = "pipeline-random";
  std::optional<double> cluster_s, cluster_growth;
  std::optional<int> cluster_levels;
  std::optional<double> useless_budget, bad_budget;
  bool lp_oracle = false;
  bool lp_exact = false;
  std::string out_dir;  // falls back to $SPARSEGAP_ARTIFACTS or "."
};

PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::string& path);

ClusterParams effective_cluster_params(const PipelineConfig& cfg);

// The generation stages shared by gen/certify: matching-union expander,
// terminal pick, capacity surgery.
struct BuiltInstance {
  CapacitatedGraph graph;  // finalized capacities
  LayerDecomposition layers;
  CapacityTree tree;
};
BuiltInstance build_instance(const InstanceParams& params);

// Partition per the configured source over the finalized instance.
Partition make_partition(const CapacitatedGraph& g, const std::string& source,
                         std::uint64_t seed);

// Full single run into `dir`: instance.graph, partition.part, demand.dem,
// layers.layers, paths_{a,b,h}.qpaths, certificate.json.
// Returns 0 (full), 2 (partial certificate), 1 (error; message in *err).
int run_pipeline(const PipelineConfig& cfg, const std::string& dir,
                 std::string* err);

// One subdirectory seed_<s> per seed plus aggregate.csv (median row last).
int run_sweep(const PipelineConfig& cfg, const std::string& dir,
              std::string* err);

// Generation only (no certification): instance + layers files.
int run_gen(const PipelineConfig& cfg, const std::string& dir,
            std::string* err);

// csv: report.csv from the certificate; dot: h.dot with load/capacity labels.
int export_report(const std::string& dir, const std::string& format,
                  std::string* err);

// Brute-force cross-check suite; one line per check into *report.
// Returns 0 when every check passes.
int oracle_suite(std::string* report);

std::string artifact_root();

}  // namespace sparsegap
