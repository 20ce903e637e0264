#include "pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "expander.hpp"
#include "io.hpp"
#include "json.hpp"
#include "lp.hpp"
#include "rng.hpp"
#include "routing.hpp"

namespace fs = std::filesystem;

namespace sparsegap {

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& value, int line) {
  std::vector<std::uint64_t> seeds;
  auto range = value.find("..");
  try {
    if (range != std::string::npos) {
      std::uint64_t lo = std::stoull(value.substr(0, range));
      std::uint64_t hi = std::stoull(value.substr(range + 2));
      if (hi < lo) throw ParseError(line, "seeds range is empty");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      return seeds;
    }
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) seeds.push_back(std::stoull(tok));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, "bad seeds value '" + value + "'");
  }
  if (seeds.empty()) throw ParseError(line, "seeds list is empty");
  return seeds;
}

}  // namespace

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  bool have_n = false;
  while (std::getline(ss, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    // Trim.
    auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = raw.find_last_not_of(" \t\r");
    std::string entry = raw.substr(b, e - b + 1);
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key=value, got '" + entry + "'");
    std::string key = entry.substr(0, eq);
    std::string value = entry.substr(eq + 1);
    auto ke = key.find_last_not_of(" \t");
    key = key.substr(0, ke == std::string::npos ? 0 : ke + 1);
    auto vb = value.find_first_not_of(" \t");
    value = (vb == std::string::npos) ? "" : value.substr(vb);
    try {
      if (key == "n") {
        cfg.params.n = std::stoi(value);
        have_n = true;
      } else if (key == "d") {
        cfg.params.d = std::stoi(value);
      } else if (key == "epsilon") {
        cfg.params.epsilon = std::stod(value);
      } else if (key == "seed") {
        cfg.params.seed = std::stoull(value);
      } else if (key == "seeds") {
        cfg.seeds = parse_seeds(value, line);
      } else if (key == "k") {
        cfg.params.k_override = std::stoi(value);
      } else if (key == "m") {
        cfg.params.m_override = std::stoi(value);
      } else if (key == "sample_terminals") {
        cfg.params.sample_terminals = (value == "1" || value == "true");
      } else if (key == "partition_source") {
        cfg.partition_source = value;
      } else if (key == "cluster_s") {
        cfg.cluster_s = std::stod(value);
      } else if (key == "cluster_growth") {
        cfg.cluster_growth = std::stod(value);
      } else if (key == "cluster_levels") {
        cfg.cluster_levels = std::stoi(value);
      } else if (key == "useless_budget") {
        cfg.useless_budget = std::stod(value);
      } else if (key == "bad_budget") {
        cfg.bad_budget = std::stod(value);
      } else if (key == "lp_oracle") {
        cfg.lp_oracle = (value == "1" || value == "true");
      } else if (key == "lp_exact") {
        cfg.lp_exact = (value == "1" || value == "true");
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else {
        throw ParseError(line, "unknown config key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line, "bad value for key '" + key + "'");
    }
  }
  if (!have_n) throw ParseError(line, "missing required key 'n'");
  if (cfg.params.n < 2) throw ParseError(line, "n must be >= 2");
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

ClusterParams effective_cluster_params(const PipelineConfig& cfg) {
  ClusterParams cp = ClusterParams::defaults(cfg.params);
  if (cfg.cluster_s) cp.s = *cfg.cluster_s;
  if (cfg.cluster_growth) cp.growth = *cfg.cluster_growth;
  if (cfg.cluster_levels) cp.levels = *cfg.cluster_levels;
  if (cfg.useless_budget) cp.useless_budget = *cfg.useless_budget;
  if (cfg.bad_budget) cp.bad_budget = *cfg.bad_budget;
  cp.small_cluster = cp.s / 200.0;
  return cp;
}

BuiltInstance build_instance(const InstanceParams& params) {
  ExpanderSpec spec{params.n, params.d, params.seed};
  CapacitatedGraph base = gen_matching_union(spec);
  CapacitatedGraph with_terms = pick_terminals(base, params);
  BuiltInstance out;
  out.layers = layer_decomposition(with_terms, params.m());
  out.tree = build_capacity_tree(with_terms, out.layers);
  out.graph = assign_capacities(with_terms, out.tree);
  return out;
}

Partition make_partition(const CapacitatedGraph& g, const std::string& source,
                         std::uint64_t seed) {
  if (source == "singleton") return singleton_partition(g.n);
  if (source.rfind("file:", 0) == 0)
    return load_partition(source.substr(5), g.n);
  if (source == "pipeline-random") {
    // Every vertex joins a uniformly random terminal cluster; terminals pin
    // their own. Always valid and always dense.
    int k = g.k();
    if (k < 1) throw std::invalid_argument("pipeline-random needs terminals");
    SplitMix64 rng(seed ^ 0x706172746974696fULL);
    Partition p;
    p.cluster_count = k;
    p.cluster_of.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      p.cluster_of[v] = static_cast<int>(rng.below(k));
    for (int i = 0; i < k; ++i) p.cluster_of[g.terminals[i]] = i;
    return p;
  }
  if (source.rfind("bfs-balls:", 0) == 0) {
    int radius = std::stoi(source.substr(10));
    if (radius < 0) throw std::invalid_argument("negative ball radius");
    // Non-terminals join the nearest terminal within the radius (lowest
    // terminal index on ties, via multi-source BFS insertion order);
    // leftovers become singleton clusters.
    int k = g.k();
    Partition p;
    p.cluster_of.assign(g.n, -1);
    auto adj = g.adjacency();
    std::vector<int> dist(g.n, kUnreachable);
    std::vector<int> owner(g.n, -1);
    std::vector<int> queue;
    for (int i = 0; i < k; ++i) {
      int t = g.terminals[i];
      dist[t] = 0;
      owner[t] = i;
      queue.push_back(t);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      if (dist[v] >= radius) continue;
      for (auto [w, eid] : adj[v]) {
        if (dist[w] != kUnreachable) continue;
        bool is_term = std::find(g.terminals.begin(), g.terminals.end(), w) !=
                       g.terminals.end();
        if (is_term) continue;  // terminals keep their own cluster
        dist[w] = dist[v] + 1;
        owner[w] = owner[v];
        queue.push_back(w);
      }
    }
    int next = k;
    for (int v = 0; v < g.n; ++v)
      p.cluster_of[v] = (owner[v] >= 0) ? owner[v] : next++;
    p.cluster_count = next;
    return p;
  }
  throw std::invalid_argument("unknown partition_source '" + source + "'");
}

std::string artifact_root() {
  const char* env = std::getenv("SPARSEGAP_ARTIFACTS");
  return env ? std::string(env) : std::string(".");
}

namespace {

void write_artifacts(const std::string& dir, const CapacitatedGraph& g,
                     const Partition& p, const BuiltInstance& inst,
                     const CertifyOutcome& outcome, GapCertificate& cert) {
  fs::create_directories(dir);
  save_graph(g, dir + "/instance.graph");
  save_partition(p, dir + "/partition.part");
  save_demand(outcome.assembly.demand, dir + "/demand.dem");
  save_layers(inst.layers.layer_of, dir + "/layers.layers");
  save_paths(outcome.assembly.qa_paths, dir + "/paths_a.qpaths");
  save_paths(outcome.assembly.qb_paths, dir + "/paths_b.qpaths");
  std::vector<std::vector<int>> hpaths;
  for (const auto& fp : outcome.assembly.h_routing)
    hpaths.push_back(fp.vertices);
  save_paths(hpaths, dir + "/paths_h.qpaths");

  cert.graph_hash = fnv1a64_hex(graph_to_string(g));
  cert.partition_hash = fnv1a64_hex(read_text_file(dir + "/partition.part"));
  cert.demand_hash = fnv1a64_hex(demand_to_string(outcome.assembly.demand));
  cert.paths_a_file = "paths_a.qpaths";
  cert.paths_b_file = "paths_b.qpaths";
  cert.paths_h_file = "paths_h.qpaths";
  write_text_file(dir + "/certificate.json", certificate_json(cert));
}

}  // namespace

int run_gen(const PipelineConfig& cfg, const std::string& dir,
            std::string* err) {
  try {
    BuiltInstance inst = build_instance(cfg.params);
    fs::create_directories(dir);
    save_graph(inst.graph, dir + "/instance.graph");
    save_layers(inst.layers.layer_of, dir + "/layers.layers");
    return 0;
  } catch (const std::exception& e) {
    if (err) *err = e.what();
    return 1;
  }
}

int run_pipeline(const PipelineConfig& cfg, const std::string& dir,
                 std::string* err) {
  try {
    BuiltInstance inst = build_instance(cfg.params);
    Partition p = make_partition(inst.graph, cfg.partition_source,
                                 cfg.params.seed);
    if (auto bad = validate_partition(inst.graph, p)) {
      if (err)
        *err = "invalid partition: terminals " + std::to_string(bad->first) +
               " and " + std::to_string(bad->second) + " share a cluster";
      return 1;
    }
    CertifyOptions opts;
    opts.cparams = effective_cluster_params(cfg);
    opts.m = cfg.params.m();
    opts.lp_oracle = cfg.lp_oracle;
    opts.lp_exact = cfg.lp_exact;
    CertifyOutcome outcome = certify_gap(inst.graph, p, opts);
    GapCertificate& cert = outcome.cert;
    cert.params = cfg.params;
    cert.r = inst.layers.r;
    cert.degenerate_r = inst.layers.degenerate;
    if (inst.layers.degenerate)
      cert.deviations.push_back("layer threshold never reached; r clamped");
    if (cfg.params.k_clamped())
      cert.deviations.push_back("k clamped to its admissible range");
    if (cfg.params.m_clamped())
      cert.deviations.push_back("m clamped to its admissible range");
    write_artifacts(dir, inst.graph, p, inst, outcome, cert);
    return cert.partial ? 2 : 0;
  } catch (const std::exception& e) {
    if (err) *err = e.what();
    return 1;
  }
}

namespace {

struct CsvRow {
  int n = 0;
  std::uint64_t seed = 0;
  int r = 0;
  int m_achieved = 0;
  long long dist_sum = 0;
  double lower_g = 0, upper_h = 0, ratio = 0;
  bool aborted = false;
};

CsvRow row_from_cert(const GapCertificate& cert) {
  CsvRow row;
  row.n = cert.params.n;
  row.seed = cert.params.seed;
  row.r = cert.r;
  row.m_achieved = cert.m_achieved;
  row.dist_sum = cert.dist_sum;
  row.lower_g = cert.lower_infinite ? -1.0 : rational_double(cert.lower_g);
  row.upper_h = rational_double(cert.upper_h);
  row.ratio = cert.lower_infinite ? -1.0 : rational_double(cert.ratio);
  row.aborted = cert.partial;
  return row;
}

std::string csv_line(const CsvRow& row, const std::string& seed_label) {
  std::ostringstream os;
  os << row.n << ',' << seed_label << ',' << row.r << ',' << row.m_achieved
     << ',' << row.dist_sum << ',' << row.lower_g << ',' << row.upper_h << ','
     << row.ratio << ',' << (row.aborted ? 1 : 0) << '\n';
  return os.str();
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : (xs[h - 1] + xs[h]) / 2.0;
}

}  // namespace

int run_sweep(const PipelineConfig& cfg, const std::string& dir,
              std::string* err) {
  if (cfg.seeds.empty()) {
    if (err) *err = "sweep requires a seeds list";
    return 1;
  }
  fs::create_directories(dir);
  std::vector<CsvRow> rows;
  int worst = 0;
  for (std::uint64_t s : cfg.seeds) {
    PipelineConfig one = cfg;
    one.params.seed = s;
    one.seeds.clear();
    std::string sub = dir + "/seed_" + std::to_string(s);
    std::string sub_err;
    int rc = run_pipeline(one, sub, &sub_err);
    if (rc == 1) {
      if (err) *err = "seed " + std::to_string(s) + ": " + sub_err;
      return 1;
    }
    worst = std::max(worst, rc);
    // Re-read the certificate for the aggregate (keeps the CSV honest about
    // what actually landed on disk).
    CsvRow row;
    row.seed = s;
    row.n = one.params.n;
    // Parse the emitted JSON minimally.
    std::string text = read_text_file(sub + "/certificate.json");
    auto j = nlohmann::json::parse(text);
    row.r = j["r"].get<int>();
    row.m_achieved = j["m_achieved"].get<int>();
    row.dist_sum = j["dist_sum"].get<long long>();
    std::string lg = j["lower_g"].get<std::string>();
    std::string uh = j["upper_h"].get<std::string>();
    std::string rt = j["ratio"].get<std::string>();
    row.lower_g = lg == "inf" ? -1.0 : rational_double(parse_rational(lg));
    row.upper_h = rational_double(parse_rational(uh));
    row.ratio = rt == "inf" ? -1.0 : rational_double(parse_rational(rt));
    row.aborted = j["partial"].get<bool>();
    rows.push_back(row);
  }
  std::ostringstream csv;
  csv << "n,seed,r,m_achieved,dist_sum,lower_g,upper_h,ratio,aborted\n";
  for (const auto& row : rows) csv << csv_line(row, std::to_string(row.seed));
  CsvRow med;
  med.n = cfg.params.n;
  std::vector<double> rs, ms, ds, lg, uh, rt;
  int aborted = 0;
  for (const auto& row : rows) {
    rs.push_back(row.r);
    ms.push_back(row.m_achieved);
    ds.push_back(double(row.dist_sum));
    lg.push_back(row.lower_g);
    uh.push_back(row.upper_h);
    rt.push_back(row.ratio);
    aborted += row.aborted;
  }
  med.r = static_cast<int>(median(rs));
  med.m_achieved = static_cast<int>(median(ms));
  med.dist_sum = static_cast<long long>(median(ds));
  med.lower_g = median(lg);
  med.upper_h = median(uh);
  med.ratio = median(rt);
  med.aborted = aborted * 2 > static_cast<int>(rows.size());
  csv << csv_line(med, "median");
  write_text_file(dir + "/aggregate.csv", csv.str());
  return worst;
}

int export_report(const std::string& dir, const std::string& format,
                  std::string* err) {
  try {
    if (format == "csv") {
      std::vector<std::string> certs;
      if (fs::exists(dir + "/certificate.json")) {
        certs.push_back(dir + "/certificate.json");
      } else {
        for (const auto& entry : fs::directory_iterator(dir))
          if (entry.is_directory() &&
              fs::exists(entry.path() / "certificate.json"))
            certs.push_back((entry.path() / "certificate.json").string());
        std::sort(certs.begin(), certs.end());
      }
      if (certs.empty()) {
        if (err) *err = "no certificate.json under " + dir;
        return 1;
      }
      std::ostringstream csv;
      csv << "n,seed,r,m_achieved,dist_sum,lower_g,upper_h,ratio,aborted\n";
      for (const auto& path : certs) {
        auto j = nlohmann::json::parse(read_text_file(path));
        CsvRow row;
        row.n = j["params"]["n"].get<int>();
        row.seed = j["params"]["seed"].get<std::uint64_t>();
        row.r = j["r"].get<int>();
        row.m_achieved = j["m_achieved"].get<int>();
        row.dist_sum = j["dist_sum"].get<long long>();
        std::string lg = j["lower_g"].get<std::string>();
        row.lower_g = lg == "inf" ? -1.0 : rational_double(parse_rational(lg));
        row.upper_h =
            rational_double(parse_rational(j["upper_h"].get<std::string>()));
        std::string rt = j["ratio"].get<std::string>();
        row.ratio = rt == "inf" ? -1.0 : rational_double(parse_rational(rt));
        row.aborted = j["partial"].get<bool>();
        csv << csv_line(row, std::to_string(row.seed));
      }
      write_text_file(dir + "/report.csv", csv.str());
      return 0;
    }
    if (format == "dot") {
      if (!fs::exists(dir + "/certificate.json")) {
        if (err) *err = "no certificate.json under " + dir;
        return 1;
      }
      CapacitatedGraph g = load_graph(dir + "/instance.graph");
      Partition p = load_partition(dir + "/partition.part", g.n);
      ContractedGraph h = contract(g, p);
      // Unit H-paths: per-superedge load is a hop count.
      std::vector<std::uint64_t> load(h.edges.size(), 0);
      std::string text = read_text_file(dir + "/paths_h.qpaths");
      std::stringstream ss(text);
      std::string line;
      while (std::getline(ss, line)) {
        std::stringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag != "q") continue;
        std::vector<int> nodes;
        int v;
        while (ls >> v) nodes.push_back(v);
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
          int se = h.find_superedge(nodes[i], nodes[i + 1]);
          if (se >= 0) load[se] += 1;
        }
      }
      std::ostringstream dot;
      dot << "graph H {\n";
      std::vector<char> is_term_cluster(h.f, 0);
      for (int c : h.terminal_cluster) is_term_cluster[c] = 1;
      for (int c = 0; c < h.f; ++c)
        dot << "  c" << c << " [shape=" << (is_term_cluster[c] ? "doublecircle" : "circle")
            << "];\n";
      for (const auto& e : h.edges)
        dot << "  c" << e.a << " -- c" << e.b << " [label=\"" << load[e.id]
            << "/" << e.cap << "\"];\n";
      dot << "}\n";
      write_text_file(dir + "/h.dot", dot.str());
      return 0;
    }
    if (err) *err = "unknown export format '" + format + "'";
    return 1;
  } catch (const std::exception& e) {
    if (err) *err = e.what();
    return 1;
  }
}

int oracle_suite(std::string* report) {
  std::ostringstream out;
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  // Max-flow against brute-force min-cut on random small auxiliary graphs.
  {
    bool all = true;
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
      int n = 6 + static_cast<int>(rng.below(5));  // n(G*) = n + 2 <= 12
      CapacitatedGraph g;
      g.n = n;
      int edges = n + static_cast<int>(rng.below(2 * n));
      for (int e = 0; e < edges; ++e) {
        int u = static_cast<int>(rng.below(n));
        int v = static_cast<int>(rng.below(n));
        if (u == v) continue;
        g.edges.push_back({static_cast<int>(g.edges.size()), std::min(u, v),
                           std::max(u, v), 1 + rng.below(3)});
      }
      g.terminals = {0};
      std::vector<int> U;
      for (int v = 1; v < n; ++v)
        if (rng.below(2)) U.push_back(v);
      if (U.empty()) U.push_back(n - 1);
      AuxGraph aux = build_aux_graph(g, U, static_cast<int>(U.size()));
      all = all && (maxflow_value(aux) == mincut_brute_oracle(aux));
    }
    check("maxflow equals brute-force mincut on 50 random graphs", all);
  }

  // Cheeger ordering on small matching unions.
  {
    bool all = true;
    for (int seed = 0; seed < 10; ++seed) {
      CapacitatedGraph g = gen_matching_union({12, 4, std::uint64_t(seed)});
      double spectral;
      try {
        spectral = spectral_lower_bound(g);
      } catch (const std::exception&) {
        continue;  // disconnected sample; the bound is about connected graphs
      }
      double phi = rational_double(conductance_brute(g));
      all = all && (spectral <= phi + 1e-6);
    }
    check("spectral lower bound below brute conductance", all);
  }

  // LP pinned examples: single unit edge demand 2, and two disjoint paths.
  {
    std::vector<LpEdge> single = {{0, 1, Rational(1)}};
    LpResult a =
        lp_min_congestion(2, single, {{0, 1, Rational(2)}}, true);
    bool ok = a.feasible && a.value == 2;
    std::vector<LpEdge> par = {{0, 2, 1}, {2, 1, 1}, {0, 3, 1}, {3, 1, 1}};
    LpResult b = lp_min_congestion(4, par, {{0, 1, Rational(2)}}, true);
    ok = ok && b.feasible && b.value == 1;
    check("LP reproduces the pinned single-edge and parallel-path values", ok);
  }

  if (report) *report = out.str();
  return failures == 0 ? 0 : 1;
}

}  // namespace sparsegap
