#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sparsegap {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph file: `g <n> <m> <k>` header, k `t <vertex>` lines, m `e <u> <v>
// <cap>` lines. `#` starts a comment. Save emits canonical bytes (edges by
// id) so identical graphs serialize identically.
CapacitatedGraph load_graph(const std::string& path);
void save_graph(const CapacitatedGraph& g, const std::string& path);
std::string graph_to_string(const CapacitatedGraph& g);
CapacitatedGraph graph_from_string(const std::string& text);

// Partition file: `p <vertex> <cluster>` lines.
Partition load_partition(const std::string& path, int n);
void save_partition(const Partition& p, const std::string& path);

// Demand file: `d <t> <t'> <num>/<den>` lines.
Demand load_demand(const std::string& path);
void save_demand(const Demand& d, const std::string& path);
std::string demand_to_string(const Demand& d);

// Layers audit file: `l <vertex> <layer>` lines.
void save_layers(const std::vector<int>& layer_of, const std::string& path);

// Paths file: one `q <u> <v1> ... <t>` line per path.
void save_paths(const std::vector<std::vector<int>>& paths,
                const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// FNV-1a, used for instance digests in certificates.
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

}  // namespace sparsegap
