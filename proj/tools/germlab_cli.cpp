// germlab command-line driver. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "germlab/germlab.h"
#include "svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 3;
const double kUnset = std::numeric_limits<double>::quiet_NaN();

/// Usage, IO and library errors; all exit with code 3.
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(germlab_status st) {
  if (st != GERMLAB_OK) throw CliError(germlab_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  germlab_free_string(s);
  return out;
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
std::string read_input(const std::string& arg, const char* what) {
  if (arg.empty()) throw CliError(std::string("missing ") + what);
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw CliError(std::string("cannot read ") + what + " '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  // shared
  std::string out, config;
  std::uint64_t seed = GERMLAB_DEFAULT_SEED;
  int per_shell = 16;
  bool print_json = false;
  // inputs
  std::string family, params, file, germ, schedule, dirset, anchors, grid, map, germ_a, germ_b, spec, mode;
  std::vector<double> resolutions;
  // numeric knobs; NaN / -1 mean "command default"
  std::int64_t horizon = 10000, window = 0;
  int k_max = 8, budget = -1;
  double tol = kUnset, eps = kUnset, ssp_tol = kUnset, dphi_tol = kUnset, eps_int = kUnset, L = kUnset;
  std::string demo;
};

double or_default(double v, double dflt) { return std::isnan(v) ? dflt : v; }

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Report directory (report.json, evidence.csv, plots/*.svg)");
  sub->add_option("--config", o.config, "JSON file whose fields mirror the flags; flags win");
  sub->add_option("--seed", o.seed, "Sampling seed (default 0x5EED, or GERMLAB_SEED)");
  sub->add_option("--per-shell", o.per_shell, "Sample points per shell for generated germs");
  sub->add_flag("--json", o.print_json, "Print the full report JSON to stdout");
}

void add_harness(CLI::App* sub, Options& o) {
  sub->add_option("--schedule", o.schedule, "ScaleSchedule JSON (file or inline)");
  sub->add_option("--eps", o.eps, "Direction-set net resolution (default 0.025)");
  sub->add_option("--eps-int", o.eps_int, "Intersection resolution (default 2 eps)");
  sub->add_option("--ssp-tol", o.ssp_tol, "SSP distance-test tolerance (default 0.05)");
  sub->add_option("--tol", o.tol, "Sphere Hausdorff / excess tolerance (default 0.1)");
  sub->add_option("--dphi-tol", o.dphi_tol, "Pseudo-derivative acceptance tolerance (default 1e-3)");
  sub->add_option("--budget", o.budget, "Pseudo-derivative budget (default 20)");
  sub->add_option("--resolutions", o.resolutions, "Box-counting resolutions for intersections");
}

/// Fills options the user did not pass from the --config document.
void apply_config(CLI::App* sub, const std::string& path) {
  const json cfg = json::parse(read_input(path, "config"));
  if (!cfg.is_object()) throw CliError("$: config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    std::string key = it.key();
    for (char& c : key)
      if (c == '_') c = '-';
    CLI::Option* opt = nullptr;
    for (CLI::Option* cand : sub->get_options()) {
      for (const auto& ln : cand->get_lnames())
        if (ln == key) opt = cand;
    }
    if (!opt || key == "config") throw CliError("$." + it.key() + ": unknown field");
    if (opt->count() > 0) continue;
    std::vector<std::string> vals;
    const json& v = it.value();
    auto scalar = [&](const json& x) -> std::string {
      if (x.is_string()) return x.get<std::string>();
      if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
      if (x.is_number()) return x.dump();
      return x.dump();
    };
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); }) &&
        opt->get_expected_max() > 1) {
      for (const auto& x : v) vals.push_back(scalar(x));
    } else {
      vals.push_back(scalar(v));
    }
    opt->add_result(vals);
    opt->run_callback();
  }
}

std::uint64_t resolve_seed(CLI::App* sub, std::uint64_t flag_value) {
  if (sub->get_option("--seed")->count() > 0) return flag_value;
  if (const char* env = std::getenv("GERMLAB_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw CliError(std::string("GERMLAB_SEED is not an integer: '") + env + "'");
    }
  }
  return flag_value;
}

std::string banner() { return std::string("germlab ") + germlab_version(); }

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw CliError("cannot write '" + p.string() + "'");
  out << text;
}

void write_report(const std::string& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "plots", ec);
  if (ec) throw CliError("cannot create '" + (dir / "plots").string() + "': " + ec.message());
  const json r = json::parse(report);
  write_file(dir / "report.json", r.dump(2) + "\n");
  char* csv = nullptr;
  check(germlab_report_evidence_csv(report.c_str(), &csv));
  write_file(dir / "evidence.csv", take(csv));
  for (const auto& plot : r.value("plots", json::array())) {
    const std::string svg = germlab_cli::render_svg(plot, banner());
    if (!svg.empty()) write_file(dir / "plots" / plot.value("file", "plot.svg"), svg);
  }
}

void print_summary(const std::string& report, bool full) {
  const json r = json::parse(report);
  if (full) {
    std::cout << r.dump(2) << "\n";
    return;
  }
  std::cout << r.value("analysis", "") << (r.contains("demo") ? " " + r["demo"].get<std::string>() : "") << ": "
            << r.value("outcome", "") << "\n";
  if (r.contains("checks")) {
    for (const auto& c : r["checks"])
      std::cout << "  [" << (c["ok"].get<bool>() ? "ok" : "FAIL") << "] " << c["check"].get<std::string>()
                << ": observed " << c["observed"].dump() << ", expected " << c["expected"].get<std::string>() << "\n";
  } else if (r.contains("result")) {
    json res = r["result"];
    for (const char* bulky : {"sequence", "grid", "limit_values", "map", "direction_set", "direction_sets"})
      res.erase(bulky);
    std::cout << res.dump(2) << "\n";
  }
}

int finish(const std::string& report, germlab_outcome outcome, const Options& o) {
  print_summary(report, o.print_json);
  if (!o.out.empty()) write_report(report, o.out);
  return static_cast<int>(outcome);
}

struct Handles {
  germlab_schedule* schedule = nullptr;
  germlab_germ* a = nullptr;
  germlab_germ* b = nullptr;
  germlab_map* map = nullptr;
  germlab_sequence* seq = nullptr;
  germlab_dirset* dirset = nullptr;
  ~Handles() {
    germlab_schedule_free(schedule);
    germlab_germ_free(a);
    germlab_germ_free(b);
    germlab_map_free(map);
    germlab_sequence_free(seq);
    germlab_dirset_free(dirset);
  }
};

germlab_schedule* load_schedule(const std::string& arg) {
  germlab_schedule* s = nullptr;
  if (arg.empty())
    check(germlab_schedule_standard(&s));
  else
    check(germlab_schedule_from_json(read_input(arg, "schedule").c_str(), &s));
  return s;
}

germlab_germ* load_germ(const std::string& arg, const germlab_schedule* s, const Options& o, std::uint64_t seed,
                        const char* what) {
  germlab_germ* g = nullptr;
  check(germlab_germ_from_json(read_input(arg, what).c_str(), s, o.per_shell, seed, &g));
  return g;
}

germlab_map* load_map(const std::string& arg) {
  germlab_map* f = nullptr;
  check(germlab_map_from_json(read_input(arg, "map").c_str(), &f));
  return f;
}

std::string harness_config(const Options& o) {
  json cfg = json::object();
  if (!o.schedule.empty()) cfg["schedule"] = json::parse(read_input(o.schedule, "schedule"));
  if (!std::isnan(o.eps)) cfg["eps"] = o.eps;
  if (!std::isnan(o.eps_int)) cfg["eps_int"] = o.eps_int;
  if (!std::isnan(o.ssp_tol)) cfg["ssp_tol"] = o.ssp_tol;
  if (!std::isnan(o.tol)) cfg["tol"] = o.tol;
  if (!std::isnan(o.dphi_tol)) cfg["dphi_tol"] = o.dphi_tol;
  if (o.budget >= 0) cfg["budget"] = o.budget;
  if (!o.resolutions.empty()) cfg["resolutions"] = o.resolutions;
  return cfg.dump();
}

int run_demo_suite(const Options& o, std::uint64_t seed) {
  char* names_raw = nullptr;
  check(germlab_demo_names(&names_raw));
  const json names = json::parse(take(names_raw));
  std::vector<std::string> todo;
  if (o.demo == "all") {
    for (const auto& n : names) todo.push_back(n.get<std::string>());
  } else {
    todo.push_back(o.demo);
  }
  int worst = 0;
  for (const auto& name : todo) {
    char* report = nullptr;
    germlab_outcome outcome = GERMLAB_PASS;
    check(germlab_demo(name.c_str(), seed, &report, &outcome));
    const std::string text = take(report);
    print_summary(text, o.print_json);
    if (!o.out.empty()) write_report(text, todo.size() > 1 ? fs::path(o.out) / name : fs::path(o.out));
    const int code = static_cast<int>(outcome);
    // fail dominates inconclusive
    if (code == 1 || (code == 2 && worst == 0)) worst = code;
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"germlab: set-germ experiments (SSP, direction sets, Lipschitz extension, transversality)"};
  app.require_subcommand(1);
  Options o;

  auto* ssp_seq = app.add_subcommand("ssp-seq", "Ratio test and definition oracle for a sequence germ");
  ssp_seq->add_option("--family", o.family, "harmonic | log_ratio | power_sqrt | geometric | pb_not_ssp | power");
  ssp_seq->add_option("--params", o.params, "Family parameters as JSON, e.g. '{\"q\":0.5}'");
  ssp_seq->add_option("--file", o.file, "SequenceGerm JSON (file or inline)");
  ssp_seq->add_option("--horizon", o.horizon, "Largest index examined (default 10000)");
  ssp_seq->add_option("--tol", o.tol, "Tolerance (default 1e-2)");
  ssp_seq->add_option("--window", o.window, "Ratio-test window (default horizon/10)");
  ssp_seq->add_option("--k-max", o.k_max, "Largest polynomial-boundedness exponent (default 8)");
  add_common(ssp_seq, o);

  auto* ssp_germ = app.add_subcommand("ssp-germ", "Distance-oracle SSP test for a germ");
  ssp_germ->add_option("--germ", o.germ, "SampledGerm or generator JSON");
  ssp_germ->add_option("--schedule", o.schedule, "ScaleSchedule JSON");
  ssp_germ->add_option("--tol", o.tol, "Tolerance (default 0.05)");
  ssp_germ->add_option("--eps", o.eps, "Direction-set resolution (default 0.025)");
  add_common(ssp_germ, o);

  auto* direction = app.add_subcommand("direction", "Estimate the direction set D(A)");
  direction->add_option("--germ", o.germ, "SampledGerm or generator JSON");
  direction->add_option("--schedule", o.schedule, "ScaleSchedule JSON");
  direction->add_option("--eps", o.eps, "Net resolution (default 0.025)");
  add_common(direction, o);

  auto* dimension = app.add_subcommand("dimension", "Box-counting dimension of a direction set");
  dimension->add_option("--dirset", o.dirset, "DirectionSet JSON");
  dimension->add_option("--resolutions", o.resolutions, "Covering radii (default eps*{16,8,4,2})");
  add_common(dimension, o);

  auto* extend = app.add_subcommand("extend", "Whitney/McShane extension of anchor values");
  extend->add_option("--anchors", o.anchors, "{\"points\":[..],\"values\":[..]}");
  extend->add_option("--L", o.L, "Lipschitz constant (default: empirical)");
  extend->add_option("--mode", o.mode, "inf | sup")->check(CLI::IsMember({"inf", "sup"}));
  extend->add_option("--grid", o.grid, "Evaluation points as a JSON array (default lattice)");
  add_common(extend, o);

  auto* dphi = app.add_subcommand("dphi", "Pseudo-derivative by dyadic rescaling");
  dphi->add_option("--map", o.map, "MapDescriptor JSON");
  dphi->add_option("--tol", o.tol, "Acceptance tolerance (default 1e-3)");
  dphi->add_option("--budget", o.budget, "Largest rescaling exponent j (default 20)");
  dphi->add_option("--grid", o.grid, "Evaluation points as a JSON array (default lattice)");
  add_common(dphi, o);

  CLI::App* harnesses[4];
  const char* harness_names[4][2] = {
      {"cone-invariance", "Tangent-cone invariance under a bi-Lipschitz map"},
      {"dim-equality", "Intersection dimension before and after a bi-Lipschitz map"},
      {"weak-transversality", "Weak transversality before and after a bi-Lipschitz map"},
      {"transversality", "Transversality predicates; with --map also the preservation harnesses"}};
  for (int i = 0; i < 4; ++i) {
    harnesses[i] = app.add_subcommand(harness_names[i][0], harness_names[i][1]);
    harnesses[i]->add_option("--germA", o.germ_a, "Germ A");
    harnesses[i]->add_option("--germB", o.germ_b, "Germ B");
    harnesses[i]->add_option("--map", o.map, i == 3 ? "Optional bi-Lipschitz map" : "Bi-Lipschitz map");
    add_harness(harnesses[i], o);
    add_common(harnesses[i], o);
  }

  auto* demo = app.add_subcommand("demo", "Run a named example end to end (or 'all')");
  demo->add_option("name", o.demo, "Example name or 'all'");
  add_common(demo, o);

  auto* generate = app.add_subcommand("generate", "Write a generated germ (SampledGerm) or sequence as JSON");
  generate->add_option("--spec", o.spec, "Germ generator JSON");
  generate->add_option("--schedule", o.schedule, "ScaleSchedule JSON");
  generate->add_option("--family", o.family, "Sequence family instead of a germ");
  generate->add_option("--params", o.params, "Sequence family parameters");
  add_common(generate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!o.config.empty()) apply_config(sub, o.config);
    const std::uint64_t seed = resolve_seed(sub, o.seed);
    Handles h;
    char* report = nullptr;
    germlab_outcome outcome = GERMLAB_PASS;

    if (sub == ssp_seq) {
      if (o.family.empty() == o.file.empty()) throw CliError("ssp-seq needs exactly one of --family or --file");
      if (!o.family.empty())
        check(germlab_sequence_family(o.family.c_str(), o.params.empty() ? nullptr : o.params.c_str(), &h.seq));
      else
        check(germlab_sequence_from_json(read_input(o.file, "sequence").c_str(), &h.seq));
      check(germlab_ssp_sequence(h.seq, o.horizon, or_default(o.tol, 1e-2), o.window, o.k_max, &report, &outcome));
      return finish(take(report), outcome, o);
    }
    if (sub == ssp_germ) {
      h.schedule = load_schedule(o.schedule);
      h.a = load_germ(o.germ, h.schedule, o, seed, "germ");
      check(germlab_ssp_germ(h.a, h.schedule, or_default(o.eps, 0.025), or_default(o.tol, 0.05), &report, &outcome));
      return finish(take(report), outcome, o);
    }
    if (sub == direction) {
      h.schedule = load_schedule(o.schedule);
      h.a = load_germ(o.germ, h.schedule, o, seed, "germ");
      check(germlab_direction(h.a, h.schedule, or_default(o.eps, 0.025), &h.dirset, &report));
      char* dj = nullptr;
      check(germlab_dirset_to_json(h.dirset, &dj));
      const std::string dirset_json = json::parse(take(dj)).dump(2) + "\n";
      const std::string text = take(report);
      if (o.out.empty()) {
        std::cout << dirset_json;
        return 0;
      }
      const int rc = finish(text, GERMLAB_PASS, o);
      write_file(fs::path(o.out) / "direction_set.json", dirset_json);
      return rc;
    }
    if (sub == dimension) {
      check(germlab_dirset_from_json(read_input(o.dirset, "dirset").c_str(), &h.dirset));
      check(germlab_dimension(h.dirset, o.resolutions.data(), o.resolutions.size(), &report));
      return finish(take(report), GERMLAB_PASS, o);
    }
    if (sub == extend) {
      const std::string anchors = read_input(o.anchors, "anchors");
      const std::string grid = o.grid.empty() ? "" : read_input(o.grid, "grid");
      check(germlab_extend(anchors.c_str(), or_default(o.L, 0.0), o.mode.empty() ? nullptr : o.mode.c_str(),
                           grid.empty() ? nullptr : grid.c_str(), nullptr, &report));
      return finish(take(report), GERMLAB_PASS, o);
    }
    if (sub == dphi) {
      h.map = load_map(o.map);
      const std::string grid = o.grid.empty() ? "" : read_input(o.grid, "grid");
      check(germlab_pseudo_derivative(h.map, grid.empty() ? nullptr : grid.c_str(), or_default(o.tol, 1e-3),
                                      o.budget < 0 ? 20 : o.budget, &report, &outcome));
      return finish(take(report), outcome, o);
    }
    for (int i = 0; i < 4; ++i) {
      if (sub != harnesses[i]) continue;
      h.schedule = load_schedule(o.schedule);
      h.a = load_germ(o.germ_a, h.schedule, o, seed, "germA");
      h.b = load_germ(o.germ_b, h.schedule, o, seed + 1, "germB");
      if (i < 3 || !o.map.empty()) h.map = load_map(o.map);
      const std::string cfg = harness_config(o);
      switch (i) {
        case 0:
          check(germlab_cone_invariance(h.a, h.b, h.map, cfg.c_str(), &report, &outcome));
          break;
        case 1:
          check(germlab_dimension_equality(h.a, h.b, h.map, cfg.c_str(), &report, &outcome));
          break;
        case 2:
          check(germlab_weak_transversality(h.a, h.b, h.map, cfg.c_str(), &report, &outcome));
          break;
        default:
          check(germlab_transversality(h.a, h.b, h.map, cfg.c_str(), &report, &outcome));
      }
      return finish(take(report), outcome, o);
    }
    if (sub == demo) {
      if (o.demo.empty()) throw CliError("demo needs an example name or 'all'");
      return run_demo_suite(o, seed);
    }
    if (sub == generate) {
      std::string text;
      char* out = nullptr;
      if (!o.family.empty()) {
        check(germlab_sequence_family(o.family.c_str(), o.params.empty() ? nullptr : o.params.c_str(), &h.seq));
        check(germlab_sequence_to_json(h.seq, &out));
      } else {
        h.schedule = load_schedule(o.schedule);
        h.a = load_germ(o.spec, h.schedule, o, seed, "spec");
        check(germlab_germ_to_json(h.a, &out));
      }
      text = json::parse(take(out)).dump(2) + "\n";
      if (o.out.empty()) {
        std::cout << text;
      } else {
        std::error_code ec;
        fs::create_directories(o.out, ec);
        write_file(fs::path(o.out) / (o.family.empty() ? "germ.json" : "sequence.json"), text);
      }
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
