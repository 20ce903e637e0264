#include "io.hpp"

#include <fstream>
#include <sstream>

namespace sparsegap {

namespace {

// Strips comments and whitespace-only lines; returns (line number, tokens).
std::vector<std::pair<int, std::vector<std::string>>> tokenize(
    const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) out.emplace_back(lineno, std::move(toks));
  }
  return out;
}

long long parse_int(const std::string& s, int line, const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + ": " + s);
  }
}

}  // namespace

CapacitatedGraph graph_from_string(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty graph file");
  CapacitatedGraph g;
  std::size_t idx = 0;
  {
    auto& [ln, toks] = lines[idx++];
    if (toks.size() != 4 || toks[0] != "g")
      throw ParseError(ln, "expected header `g <n> <m> <k>`");
    g.n = static_cast<int>(parse_int(toks[1], ln, "vertex count"));
    long long m = parse_int(toks[2], ln, "edge count");
    long long k = parse_int(toks[3], ln, "terminal count");
    if (g.n < 0 || m < 0 || k < 0) throw ParseError(ln, "negative count");
    if (lines.size() != idx + static_cast<std::size_t>(k + m))
      throw ParseError(ln, "record count does not match header");
    for (long long i = 0; i < k; ++i) {
      auto& [tl, ttoks] = lines[idx++];
      if (ttoks.size() != 2 || ttoks[0] != "t")
        throw ParseError(tl, "expected `t <vertex>`");
      long long t = parse_int(ttoks[1], tl, "terminal");
      if (t < 0 || t >= g.n) throw ParseError(tl, "terminal out of range");
      for (int prev : g.terminals)
        if (prev == t) throw ParseError(tl, "duplicate terminal");
      g.terminals.push_back(static_cast<int>(t));
    }
    for (long long i = 0; i < m; ++i) {
      auto& [el, etoks] = lines[idx++];
      if (etoks.size() != 4 || etoks[0] != "e")
        throw ParseError(el, "expected `e <u> <v> <cap>`");
      GraphEdge e;
      e.id = static_cast<int>(i);
      e.u = static_cast<int>(parse_int(etoks[1], el, "endpoint"));
      e.v = static_cast<int>(parse_int(etoks[2], el, "endpoint"));
      long long cap = parse_int(etoks[3], el, "capacity");
      if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
        throw ParseError(el, "endpoint out of range");
      if (e.u == e.v) throw ParseError(el, "self-loop");
      if (cap < 0) throw ParseError(el, "negative capacity");
      e.cap = static_cast<std::uint64_t>(cap);
      g.edges.push_back(e);
    }
  }
  return g;
}

CapacitatedGraph load_graph(const std::string& path) {
  return graph_from_string(read_text_file(path));
}

std::string graph_to_string(const CapacitatedGraph& g) {
  std::ostringstream out;
  out << "g " << g.n << " " << g.m() << " " << g.k() << "\n";
  for (int t : g.terminals) out << "t " << t << "\n";
  for (const auto& e : g.edges)
    out << "e " << e.u << " " << e.v << " " << e.cap << "\n";
  return out.str();
}

void save_graph(const CapacitatedGraph& g, const std::string& path) {
  write_text_file(path, graph_to_string(g));
}

Partition load_partition(const std::string& path, int n) {
  auto lines = tokenize(read_text_file(path));
  Partition p;
  p.cluster_of.assign(n, -1);
  int max_cluster = -1;
  for (auto& [ln, toks] : lines) {
    if (toks.size() != 3 || toks[0] != "p")
      throw ParseError(ln, "expected `p <vertex> <cluster>`");
    long long v = parse_int(toks[1], ln, "vertex");
    long long c = parse_int(toks[2], ln, "cluster");
    if (v < 0 || v >= n) throw ParseError(ln, "vertex out of range");
    if (c < 0) throw ParseError(ln, "negative cluster id");
    if (p.cluster_of[v] != -1) throw ParseError(ln, "vertex assigned twice");
    p.cluster_of[v] = static_cast<int>(c);
    max_cluster = std::max(max_cluster, static_cast<int>(c));
  }
  for (int v = 0; v < n; ++v)
    if (p.cluster_of[v] == -1)
      throw ParseError(0, "vertex " + std::to_string(v) + " unassigned");
  p.cluster_count = max_cluster + 1;
  p.check_invariants();
  return p;
}

void save_partition(const Partition& p, const std::string& path) {
  std::ostringstream out;
  for (std::size_t v = 0; v < p.cluster_of.size(); ++v)
    out << "p " << v << " " << p.cluster_of[v] << "\n";
  write_text_file(path, out.str());
}

Demand load_demand(const std::string& path) {
  auto lines = tokenize(read_text_file(path));
  Demand d;
  for (auto& [ln, toks] : lines) {
    if (toks.size() != 4 || toks[0] != "d")
      throw ParseError(ln, "expected `d <t> <t'> <num>/<den>`");
    long long t = parse_int(toks[1], ln, "terminal");
    long long t2 = parse_int(toks[2], ln, "terminal");
    if (t == t2) throw ParseError(ln, "self-pair demand");
    Rational value;
    try {
      value = parse_rational(toks[3]);
    } catch (const std::exception& ex) {
      throw ParseError(ln, ex.what());
    }
    if (value < 0) throw ParseError(ln, "negative demand");
    d.add(static_cast<int>(t), static_cast<int>(t2), value);
  }
  return d;
}

std::string demand_to_string(const Demand& d) {
  std::ostringstream out;
  for (const auto& [key, v] : d.entries)
    out << "d " << key.first << " " << key.second << " " << rational_str(v)
        << "\n";
  return out.str();
}

void save_demand(const Demand& d, const std::string& path) {
  write_text_file(path, demand_to_string(d));
}

void save_layers(const std::vector<int>& layer_of, const std::string& path) {
  std::ostringstream out;
  for (std::size_t v = 0; v < layer_of.size(); ++v)
    if (layer_of[v] >= 0) out << "l " << v << " " << layer_of[v] << "\n";
  write_text_file(path, out.str());
}

void save_paths(const std::vector<std::vector<int>>& paths,
                const std::string& path) {
  std::ostringstream out;
  for (const auto& p : paths) {
    out << "q";
    for (int v : p) out << " " << v;
    out << "\n";
  }
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace sparsegap
