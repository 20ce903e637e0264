#include "sparsegap.h"

#include <cstring>
#include <string>

#include "expander.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "pipeline.hpp"

using namespace sparsegap;

struct sg_graph {
  CapacitatedGraph g;
};

namespace {

void copy_err(const std::string& msg, char* err, size_t err_len) {
  if (!err || err_len == 0) return;
  size_t n = std::min(msg.size(), err_len - 1);
  std::memcpy(err, msg.data(), n);
  err[n] = '\0';
}

template <typename Fn>
int guarded(Fn&& fn, char* err, size_t err_len) {
  try {
    return fn();
  } catch (const std::exception& e) {
    copy_err(e.what(), err, err_len);
    return SG_ERROR;
  } catch (...) {
    copy_err("unknown error", err, err_len);
    return SG_ERROR;
  }
}

}  // namespace

extern "C" {

int sg_graph_load(const char* path, sg_graph** out, char* err,
                  size_t err_len) {
  if (!path || !out) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        auto* h = new sg_graph{load_graph(path)};
        *out = h;
        return SG_OK;
      },
      err, err_len);
}

int sg_gen_expander(int n, int d, uint64_t seed, sg_graph** out, char* err,
                    size_t err_len) {
  if (!out) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        auto* h = new sg_graph{gen_matching_union({n, d, seed})};
        *out = h;
        return SG_OK;
      },
      err, err_len);
}

int sg_graph_save(const sg_graph* g, const char* path, char* err,
                  size_t err_len) {
  if (!g || !path) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        save_graph(g->g, path);
        return SG_OK;
      },
      err, err_len);
}

int sg_graph_counts(const sg_graph* g, int* n, int* m, int* k) {
  if (!g) return SG_ERROR;
  if (n) *n = g->g.n;
  if (m) *m = g->g.m();
  if (k) *k = g->g.k();
  return SG_OK;
}

void sg_graph_free(sg_graph* g) { delete g; }

int sg_run_pipeline_text(const char* config_text, const char* out_dir,
                         char* err, size_t err_len) {
  if (!config_text || !out_dir) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        PipelineConfig cfg = parse_config(config_text);
        std::string msg;
        int rc = run_pipeline(cfg, out_dir, &msg);
        if (rc == 1) {
          copy_err(msg, err, err_len);
          return SG_ERROR;
        }
        return rc == 2 ? SG_PARTIAL : SG_OK;
      },
      err, err_len);
}

int sg_run_pipeline(const char* config_path, const char* out_dir, char* err,
                    size_t err_len) {
  if (!config_path) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        std::string text = read_text_file(config_path);
        return sg_run_pipeline_text(text.c_str(), out_dir, err, err_len);
      },
      err, err_len);
}

int sg_run_sweep(const char* config_path, const char* out_dir, char* err,
                 size_t err_len) {
  if (!config_path || !out_dir) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        PipelineConfig cfg = load_config(config_path);
        std::string msg;
        int rc = run_sweep(cfg, out_dir, &msg);
        if (rc == 1) {
          copy_err(msg, err, err_len);
          return SG_ERROR;
        }
        return rc == 2 ? SG_PARTIAL : SG_OK;
      },
      err, err_len);
}

int sg_run_gen(const char* config_path, const char* out_dir, char* err,
               size_t err_len) {
  if (!config_path || !out_dir) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        PipelineConfig cfg = load_config(config_path);
        std::string msg;
        int rc = run_gen(cfg, out_dir, &msg);
        if (rc != 0) {
          copy_err(msg, err, err_len);
          return SG_ERROR;
        }
        return SG_OK;
      },
      err, err_len);
}

int sg_export_report(const char* artifact_dir, const char* format, char* err,
                     size_t err_len) {
  if (!artifact_dir || !format) {
    copy_err("null argument", err, err_len);
    return SG_ERROR;
  }
  return guarded(
      [&] {
        std::string msg;
        int rc = export_report(artifact_dir, format, &msg);
        if (rc != 0) {
          copy_err(msg, err, err_len);
          return SG_ERROR;
        }
        return SG_OK;
      },
      err, err_len);
}

int sg_oracle_suite(char* report, size_t report_len) {
  try {
    std::string text;
    int rc = oracle_suite(&text);
    copy_err(text, report, report_len);
    return rc == 0 ? SG_OK : SG_ERROR;
  } catch (...) {
    return SG_ERROR;
  }
}

}  // extern "C"
