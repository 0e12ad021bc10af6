#include "germlab/germlab.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <exception>
#include <string>

#include <json.hpp>

#include "core/analysis.hpp"
#include "core/demos.hpp"
#include "core/examples.hpp"
#include "core/json_io.hpp"
#include "core/sequence_gen.hpp"

using nlohmann::json;
using namespace germlab;

struct germlab_schedule {
  ScaleSchedule s;
};
struct germlab_germ {
  GeneratedGerm g;
};
struct germlab_sequence {
  SequenceGerm a;
};
struct germlab_map {
  MapDescriptor f;
};
struct germlab_dirset {
  DirectionSet d;
};

namespace {

thread_local std::string g_last_error;

germlab_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return GERMLAB_INVALID_ARGUMENT;
    case ErrorCode::Schema:
      return GERMLAB_SCHEMA;
    case ErrorCode::Parse:
      return GERMLAB_PARSE;
    case ErrorCode::Domain:
      return GERMLAB_DOMAIN;
    case ErrorCode::NotPopulated:
      return GERMLAB_NOT_POPULATED;
  }
  return GERMLAB_INTERNAL;
}

template <class F>
germlab_status guarded(F&& body) {
  try {
    body();
    return GERMLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const json::parse_error& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return GERMLAB_PARSE;
  } catch (const json::exception& e) {
    g_last_error = std::string("$: ") + e.what();
    return GERMLAB_SCHEMA;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GERMLAB_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GERMLAB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse(const char* text) {
  need(text, "JSON text");
  return json::parse(text);
}

ScaleSchedule schedule_or_standard(const germlab_schedule* s) { return s ? s->s : ScaleSchedule::standard(); }

HarnessConfig config_of(const char* config_json) {
  if (!config_json) return HarnessConfig{};
  return harness_config_from_json(parse(config_json));
}

void emit(const AnalysisReport& r, char** report, germlab_outcome* outcome) {
  need(report, "report");
  *report = dup_string(r.body.dump());
  if (outcome) *outcome = static_cast<germlab_outcome>(static_cast<int>(r.outcome));
}

std::optional<PointCloud> grid_of(const char* grid_json) {
  if (!grid_json) return std::nullopt;
  return points_from_json(parse(grid_json));
}

}  // namespace

extern "C" {

const char* germlab_version(void) { return GERMLAB_VERSION_STRING; }

const char* germlab_last_error(void) { return g_last_error.c_str(); }

void germlab_free_string(char* s) { std::free(s); }

germlab_status germlab_schedule_create(double t0, double r, int depth, germlab_schedule** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_schedule{make_schedule(t0, r, depth)};
  });
}

germlab_status germlab_schedule_standard(germlab_schedule** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_schedule{ScaleSchedule::standard()};
  });
}

germlab_status germlab_schedule_from_json(const char* text, germlab_schedule** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_schedule{schedule_from_json(parse(text))};
  });
}

germlab_status germlab_schedule_to_json(const germlab_schedule* s, char** out) {
  return guarded([&] {
    need(s, "schedule");
    need(out, "out");
    *out = dup_string(schedule_to_json(s->s).dump());
  });
}

void germlab_schedule_free(germlab_schedule* s) { delete s; }

germlab_status germlab_germ_from_json(const char* text, const germlab_schedule* s, int per_shell, uint64_t seed,
                                      germlab_germ** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_germ{germ_from_document(parse(text), schedule_or_standard(s), per_shell, seed)};
  });
}

germlab_status germlab_germ_to_json(const germlab_germ* g, char** out) {
  return guarded([&] {
    need(g, "germ");
    need(out, "out");
    *out = dup_string(sampled_germ_to_json(g->g.sample).dump());
  });
}

int germlab_germ_dim(const germlab_germ* g) { return g ? g->g.oracle.dim : 0; }

germlab_status germlab_germ_distance(const germlab_germ* g, const double* point, size_t n, double* out) {
  return guarded([&] {
    need(g, "germ");
    need(point, "point");
    need(out, "out");
    if (n != static_cast<size_t>(g->g.oracle.dim)) fail(ErrorCode::InvalidArgument, "point dimension mismatch");
    *out = g->g.oracle.distance(VecView(point, n));
  });
}

void germlab_germ_free(germlab_germ* g) { delete g; }

germlab_status germlab_sequence_family(const char* name, const char* params_json, germlab_sequence** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    const json params = params_json ? parse(params_json) : json::object();
    *out = new germlab_sequence{gen_sequence(name, params)};
  });
}

germlab_status germlab_sequence_from_json(const char* text, germlab_sequence** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_sequence{sequence_from_json(parse(text))};
  });
}

germlab_status germlab_sequence_to_json(const germlab_sequence* a, char** out) {
  return guarded([&] {
    need(a, "sequence");
    need(out, "out");
    *out = dup_string(sequence_to_json(a->a).dump());
  });
}

germlab_status germlab_sequence_value(const germlab_sequence* a, int64_t m, double* out) {
  return guarded([&] {
    need(a, "sequence");
    need(out, "out");
    *out = static_cast<double>(a->a.at(m));
  });
}

void germlab_sequence_free(germlab_sequence* a) { delete a; }

germlab_status germlab_map_from_json(const char* text, germlab_map** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_map{map_from_json(parse(text))};
  });
}

germlab_status germlab_map_to_json(const germlab_map* f, char** out) {
  return guarded([&] {
    need(f, "map");
    need(out, "out");
    *out = dup_string(map_to_json(f->f).dump());
  });
}

int germlab_map_dim_in(const germlab_map* f) { return f ? f->f.dim_in() : 0; }
int germlab_map_dim_out(const germlab_map* f) { return f ? f->f.dim_out() : 0; }

germlab_status germlab_map_eval(const germlab_map* f, const double* x, size_t n, double* y, size_t m) {
  return guarded([&] {
    need(f, "map");
    need(x, "x");
    need(y, "y");
    if (m != static_cast<size_t>(f->f.dim_out())) fail(ErrorCode::InvalidArgument, "output buffer size mismatch");
    const Vec v = f->f(VecView(x, n));
    std::copy(v.begin(), v.end(), y);
  });
}

void germlab_map_free(germlab_map* f) { delete f; }

germlab_status germlab_dirset_from_json(const char* text, germlab_dirset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new germlab_dirset{direction_set_from_json(parse(text))};
  });
}

germlab_status germlab_dirset_to_json(const germlab_dirset* d, char** out) {
  return guarded([&] {
    need(d, "dirset");
    need(out, "out");
    *out = dup_string(direction_set_to_json(d->d).dump());
  });
}

size_t germlab_dirset_size(const germlab_dirset* d) { return d ? d->d.size() : 0; }

void germlab_dirset_free(germlab_dirset* d) { delete d; }

germlab_status germlab_ssp_sequence(const germlab_sequence* a, int64_t horizon, double tol, int64_t window, int k_max,
                                    char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(a, "sequence");
    emit(analyze_sequence(a->a, horizon, tol, window, k_max), report, outcome);
  });
}

germlab_status germlab_ssp_germ(const germlab_germ* g, const germlab_schedule* s, double eps, double tol,
                                char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(g, "germ");
    emit(analyze_germ_ssp(g->g.oracle, schedule_or_standard(s), eps, tol), report, outcome);
  });
}

germlab_status germlab_direction(const germlab_germ* g, const germlab_schedule* s, double eps,
                                 germlab_dirset** dirset, char** report) {
  return guarded([&] {
    need(g, "germ");
    DirectionSet d;
    const AnalysisReport r = analyze_direction(g->g.oracle, schedule_or_standard(s), eps, &d);
    emit(r, report, nullptr);
    if (dirset) *dirset = new germlab_dirset{std::move(d)};
  });
}

germlab_status germlab_dimension(const germlab_dirset* d, const double* resolutions, size_t n_resolutions,
                                 char** report) {
  return guarded([&] {
    need(d, "dirset");
    std::vector<double> res;
    if (n_resolutions > 0) {
      need(resolutions, "resolutions");
      res.assign(resolutions, resolutions + n_resolutions);
    }
    emit(analyze_dimension(d->d, res), report, nullptr);
  });
}

germlab_status germlab_extend(const char* anchors_json, double L, const char* mode, const char* grid_json,
                              germlab_map** ext, char** report) {
  return guarded([&] {
    const AnchorSet anchors = anchors_from_json(parse(anchors_json));
    std::optional<double> lip;
    if (L > 0.0) lip = L;
    std::optional<ExtensionMode> m;
    if (mode) m = parse_extension_mode(mode);
    MapDescriptor out = make_identity(1);
    const AnalysisReport r = analyze_extension(anchors, lip, m, grid_of(grid_json), &out);
    emit(r, report, nullptr);
    if (ext) *ext = new germlab_map{out};
  });
}

germlab_status germlab_pseudo_derivative(const germlab_map* f, const char* grid_json, double tol, int budget,
                                         char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(f, "map");
    emit(analyze_pseudo_derivative(f->f, grid_of(grid_json), tol, budget), report, outcome);
  });
}

germlab_status germlab_cone_invariance(const germlab_germ* a, const germlab_germ* b, const germlab_map* phi,
                                       const char* config_json, char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(a, "germ A");
    need(b, "germ B");
    need(phi, "map");
    const HarnessConfig cfg = config_of(config_json);
    emit(from_harness("cone_invariance", check_cone_invariance(a->g.oracle, b->g.oracle, phi->f, cfg)), report,
         outcome);
  });
}

germlab_status germlab_dimension_equality(const germlab_germ* a, const germlab_germ* b, const germlab_map* h,
                                          const char* config_json, char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(a, "germ A");
    need(b, "germ B");
    need(h, "map");
    const HarnessConfig cfg = config_of(config_json);
    emit(from_harness("dimension_equality", check_dimension_equality(a->g.oracle, b->g.oracle, h->f, cfg)), report,
         outcome);
  });
}

germlab_status germlab_weak_transversality(const germlab_germ* a, const germlab_germ* b, const germlab_map* h,
                                           const char* config_json, char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(a, "germ A");
    need(b, "germ B");
    need(h, "map");
    const HarnessConfig cfg = config_of(config_json);
    emit(from_harness("weak_transversality",
                      check_weak_transversality_preservation(a->g.oracle, b->g.oracle, h->f, cfg)),
         report, outcome);
  });
}

germlab_status germlab_transversality(const germlab_germ* a, const germlab_germ* b, const germlab_map* h,
                                      const char* config_json, char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(a, "germ A");
    need(b, "germ B");
    const HarnessConfig cfg = config_of(config_json);
    emit(analyze_transversality(a->g.oracle, b->g.oracle, h ? &h->f : nullptr, cfg), report, outcome);
  });
}

germlab_status germlab_demo_names(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(json(demo_names()).dump());
  });
}

germlab_status germlab_demo(const char* name, uint64_t seed, char** report, germlab_outcome* outcome) {
  return guarded([&] {
    need(name, "name");
    emit(run_demo(name, seed), report, outcome);
  });
}

germlab_status germlab_report_evidence_csv(const char* report_json, char** csv) {
  return guarded([&] {
    need(csv, "csv");
    const json r = parse(report_json);
    Table t;
    if (r.contains("evidence")) {
      const json& ev = r["evidence"];
      for (const auto& c : ev.at("columns")) t.columns.push_back(c.get<std::string>());
      for (const auto& row : ev.at("rows")) {
        std::vector<double> vals;
        for (const auto& v : row) {
          if (v.is_number()) {
            vals.push_back(v.get<double>());
          } else {
            const std::string s = v.get<std::string>();
            vals.push_back(s == "nan" ? std::numeric_limits<double>::quiet_NaN()
                           : s == "-inf" ? -std::numeric_limits<double>::infinity()
                                         : std::numeric_limits<double>::infinity());
          }
        }
        t.rows.push_back(std::move(vals));
      }
    }
    *csv = dup_string(to_csv(t));
  });
}

}  // extern "C"
