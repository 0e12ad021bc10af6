// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).
//
// usage: acceptance [path-to-germlab-cli] [scratch-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/demos.hpp"
#include "core/direction.hpp"
#include "core/examples.hpp"
#include "core/lipschitz.hpp"
#include "core/sequence.hpp"
#include "core/ssp.hpp"
#include "core/transversality.hpp"
#include "germlab/germlab.h"

using namespace germlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Verdict germ_verdict(const GermOracle& g, const ScaleSchedule& s) {
  return ssp_distance_test(g, estimate_direction_set(g, s, 0.025), s, kDefaultDistanceTol).verdict;
}

// 1. Sequence classification matrix.
Result sequences() {
  Result o;
  struct Row {
    const char* name;
    json params;
    Verdict want;
    int pb;  // -1 not checked, 0 not PB up to k=8, k witness
  };
  const std::vector<Row> rows = {{"harmonic", json::object(), Verdict::Satisfied, -1},
                                 {"log_ratio", json::object(), Verdict::Satisfied, 2},
                                 {"power_sqrt", json::object(), Verdict::Satisfied, 0},
                                 {"pb_not_ssp", {{"i_max", 5}}, Verdict::Violated, 2},
                                 {"geometric", {{"q", 0.5}}, Verdict::Violated, -1}};
  for (const Row& r : rows) {
    const SequenceGerm a = gen_sequence(r.name, r.params);
    const SSPVerdict ratio = ssp_ratio_test(a, 10000, 1e-2);
    const SSPVerdict oracle = ssp_definition_oracle(a, 10000, 1e-2);
    o.expect(ratio.verdict == r.want,
             std::string(r.name) + ": ratio test " + to_string(ratio.verdict) + ", want " + to_string(r.want));
    if (ratio.verdict != r.want && r.want == Verdict::Satisfied) {
      // Where the deviation would reach tol: first m with |rho_m - 1| <= 1e-2.
      std::int64_t lo = 10000, hi = 10000;
      while (std::abs(static_cast<double>(a.ratio(hi)) - 1.0) > 1e-2 && hi < (std::int64_t{1} << 40)) hi *= 2;
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (std::abs(static_cast<double>(a.ratio(mid)) - 1.0) > 1e-2 ? lo : hi) = mid;
      }
      o.notes.push_back(std::string(r.name) + ": |rho_m - 1| = " + fmt(std::abs(static_cast<double>(a.ratio(10000)) - 1.0)) +
                        " at m = 1e4, first <= 1e-2 at m = " + std::to_string(hi));
    }
    o.expect(oracle.verdict == r.want,
             std::string(r.name) + ": definition oracle " + to_string(oracle.verdict) + ", want " + to_string(r.want));
    if (r.pb >= 0) {
      const PolyBoundResult pb = polynomial_boundedness_test(a, 8, 10000);
      if (r.pb == 0)
        o.expect(!pb.bounded, std::string(r.name) + ": polynomially bounded, want not PB up to k=8");
      else
        o.expect(pb.bounded && pb.witness == r.pb, std::string(r.name) + ": PB witness mismatch");
    }
  }
  return o;
}

// 2. Closure under sums and products.
bool within_ulp(double a, double b) { return a == b || std::nextafter(a, b) == b; }

SequenceGerm random_ssp_sequence(Rng& rng) {
  switch (rng.below(3)) {
    case 0:
      return gen_sequence("harmonic");
    case 1:
      return gen_sequence("log_ratio");
    default:
      return gen_sequence("power", {{"shift", rng.uniform(0.0, 5.0)}, {"exponent", rng.uniform(0.5, 3.0)}});
  }
}

Result closure() {
  Result o;
  Rng rng(20240601);
  int mediant_bad = 0, product_bad = 0, verdict_bad = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const SequenceGerm a = random_ssp_sequence(rng), b = random_ssp_sequence(rng);
    const SequenceGerm s = seq_sum(a, b), p = seq_product(a, b);
    for (const SequenceGerm* c : {&s, &p}) {
      if (ssp_ratio_test(*c, 10000, 1e-2).verdict != Verdict::Satisfied ||
          ssp_definition_oracle(*c, 10000, 1e-2).verdict != Verdict::Satisfied)
        ++verdict_bad;
    }
    for (std::int64_t m = 1; m < 10000; ++m) {
      const double ra = static_cast<double>(a.ratio(m)), rb = static_cast<double>(b.ratio(m));
      const double rs = static_cast<double>(s.ratio(m)), rp = static_cast<double>(p.ratio(m));
      const double lo = std::min(ra, rb), hi = std::max(ra, rb);
      if (!((rs >= lo || within_ulp(rs, lo)) && (rs <= hi || within_ulp(rs, hi)))) ++mediant_bad;
      if (!within_ulp(rp, static_cast<double>(a.ratio(m) * b.ratio(m)))) ++product_bad;
    }
  }
  o.expect(verdict_bad == 0, std::to_string(verdict_bad) + " sum/product verdicts not SSP");
  o.expect(mediant_bad == 0, std::to_string(mediant_bad) + " mediant bound violations");
  o.expect(product_bad == 0, std::to_string(product_bad) + " product-ratio identity violations");
  return o;
}

// 3. Whitney extension.
Result whitney() {
  Result o;
  Rng rng(3);
  double worst_lip = 0.0;
  int restrict_bad = 0, order_bad = 0;
  double worst_order = 0.0;
  for (int set = 0; set < 20; ++set) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int count = 2 + static_cast<int>(rng.below(49));
    PointCloud anchors(n), values(1);
    std::vector<double> vals;
    for (int i = 0; i < count; ++i) {
      Vec p(static_cast<std::size_t>(n));
      for (double& x : p) x = rng.uniform(-1.0, 1.0);
      anchors.push_back(p);
      vals.push_back(rng.uniform(-2.0, 2.0));
      values.push_back(Vec{vals.back()});
    }
    const double L = empirical_lipschitz(anchors, values);
    const MapDescriptor alpha = whitney_extend(anchors, vals, L, ExtensionMode::Inf);
    const MapDescriptor beta = whitney_extend(anchors, vals, L, ExtensionMode::Sup);
    for (int i = 0; i < count; ++i)
      if (alpha(anchors[static_cast<std::size_t>(i)])[0] != vals[static_cast<std::size_t>(i)] ||
          beta(anchors[static_cast<std::size_t>(i)])[0] != vals[static_cast<std::size_t>(i)])
        ++restrict_bad;
    auto point = [&] {
      Vec p(static_cast<std::size_t>(n));
      for (double& x : p) x = rng.uniform(-1.5, 1.5);
      return p;
    };
    for (int i = 0; i < 1000; ++i) {
      const Vec x = point();
      const double gap = beta(x)[0] - alpha(x)[0];
      if (gap > 0.0) {
        ++order_bad;
        worst_order = std::max(worst_order, gap);
      }
    }
    for (int i = 0; i < 10000; ++i) {
      const Vec x = point(), y = point();
      const double d = dist(x, y);
      worst_lip = std::max(worst_lip, std::abs(alpha(x)[0] - alpha(y)[0]) - L * d);
      worst_lip = std::max(worst_lip, std::abs(beta(x)[0] - beta(y)[0]) - L * d);
    }
  }
  o.expect(restrict_bad == 0, std::to_string(restrict_bad) + " inexact anchor restrictions");
  o.expect(order_bad == 0, std::to_string(order_bad) + " grid points with beta > alpha (max excess " + fmt(worst_order) + ")");
  o.expect(worst_lip <= 1e-9, "Lipschitz excess " + fmt(worst_lip));
  return o;
}

// 4. Doubling identity.
Result doubling() {
  Result o;
  const ZigzagGerm zz = gen_zigzag(1.0, 0.25, false, 30, ScaleSchedule::standard(), 4, kDefaultSeed);
  const std::vector<std::pair<std::string, MapDescriptor>> maps = {{"identity", make_identity(2)},
                                                                   {"2x", make_diag({2.0, 2.0})},
                                                                   {"rotation", make_rotation(0.7)},
                                                                   {"Y+(zigzag)", doubling_plus(zz.map)}};
  Rng rng(4);
  for (const auto& [name, phi] : maps) {
    PointCloud anchors(2), images(2);
    for (int i = 0; i < 100; ++i) {
      const Vec x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      anchors.push_back(x);
      images.push_back(phi(x));
    }
    const double L = empirical_lipschitz(anchors, images), Linv = empirical_lipschitz(images, anchors);
    const MapDescriptor c = doubling_composite(extend_map(anchors, images, L, ExtensionMode::Inf),
                                               extend_map(images, anchors, Linv, ExtensionMode::Inf));
    double worst = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const Vec y = c(Vec{anchors[i][0], anchors[i][1], 0.0, 0.0});
      worst = std::max(worst, dist(y, Vec{0.0, 0.0, images[i][0], images[i][1]}));
    }
    o.expect(worst <= 1e-9, name + ": defect " + fmt(worst));
  }
  return o;
}

// 5. Pseudo-derivative.
Result pseudo() {
  Result o;
  for (const MapDescriptor& lin : {make_rotation(0.9), make_affine(2, 2, {2.0, 1.0, -0.5, 1.5}, {}),
                                   random_bilipschitz_linear(3, 11)}) {
    const PointCloud grid = default_grid(lin.dim_in());
    const PseudoDerivative d = pseudo_derivative(lin, grid, 1e-3, 20);
    bool exact = d.report.converged;
    for (std::size_t i = 0; i < grid.size(); ++i) exact = exact && d.map(grid[i]) == lin(grid[i]);
    o.expect(exact, "linear map not reproduced exactly (dim " + std::to_string(lin.dim_in()) + ")");
  }
  const MapDescriptor quad = make_expr_map("x + x^2", 1);
  const PointCloud grid = default_grid(1);
  const PseudoDerivative d1 = pseudo_derivative(quad, grid, 1e-3, 20);
  const PseudoDerivative d2 = pseudo_derivative(quad, grid, 1e-3, 20);
  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) dev = std::max(dev, std::abs(d1.map(grid[i])[0] - grid[i][0]));
  o.expect(d1.report.converged, "x + x^2: no convergence by budget 20");
  o.expect(dev <= 1e-3, "x + x^2: deviation from identity " + fmt(dev));
  o.expect(d1.report.accepted_indices == d2.report.accepted_indices, "accepted indices differ between runs");
  return o;
}

// 6. Tangent-cone invariance on constructed triples.
Result cone_invariance() {
  Result o;
  const HarnessConfig cfg;
  const int n = kDefaultPerShell;
  const std::uint64_t seed = kDefaultSeed;
  auto rays = union_oracle({ray_oracle({1.0, 0.0}, n, seed), ray_oracle({-0.6, 0.8}, n, seed + 1)});
  auto plane = plane_oracle({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 64, seed);
  struct Triple {
    std::string name;
    GermOracle a;
    MapDescriptor phi;
  };
  const std::vector<Triple> triples = {
      {"ray/linear", ray_oracle({std::cos(0.3), std::sin(0.3)}, n, seed), random_bilipschitz_linear(2, 1)},
      {"ray/perturb_sin", ray_oracle({0.0, 1.0}, n, seed), make_builtin("perturb_sin", {{"amplitude", 0.3}})},
      {"ray/radial_quad", ray_oracle({1.0, 1.0}, n, seed), make_builtin("radial_quad", {{"coeff", 0.5}})},
      {"sector/linear", sector_oracle(0.0, 0.8, n, seed), random_bilipschitz_linear(2, 2)},
      {"sector/perturb_sin", sector_oracle(0.5, 1.5, n, seed), make_builtin("perturb_sin", {{"amplitude", 0.2}})},
      {"plane/linear", plane, random_bilipschitz_linear(3, 3)},
      {"plane/perturb_sin", plane, make_builtin("perturb_sin", {{"amplitude", 0.3}, {"dim", 3}})},
      {"rays/linear", rays, random_bilipschitz_linear(2, 4)},
      {"rays/rotation", rays, make_rotation(2.0)},
      {"rays/radial_quad", rays, make_builtin("radial_quad", {{"coeff", 1.0}})}};
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    const GermOracle b = image_germ(t.a, t.phi, seed + i);
    const HarnessReport r = check_cone_invariance(t.a, b, t.phi, cfg);
    const double h = r.body.value("measured", json::object()).value("sphere_hausdorff", INFINITY);
    worst = std::max(worst, h);
    o.expect(r.status == HarnessStatus::Pass && r.body["mode"] == "two_sided" && h <= 0.1,
             t.name + ": " + to_string(r.status) + ", Hausdorff " + fmt(h));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs <= 60.0, "runtime " + fmt(secs) + " s");
  o.notes.push_back("max Hausdorff " + fmt(worst) + ", " + fmt(secs) + " s");
  return o;
}

// 7. Zigzag obstruction.
Result zigzag() {
  Result o;
  const ScaleSchedule s = ScaleSchedule::standard();
  const ZigzagGerm zz = gen_zigzag(1.0, 0.25, false, 30, s, kDefaultPerShell, kDefaultSeed);
  o.expect(zz.profile.lipschitz().has_value(), "profile is not Lipschitz");
  const GermOracle line = line_oracle({1.0, 0.0}, kDefaultPerShell, kDefaultSeed);
  const MapDescriptor phi = doubling_plus(zz.map);
  const GermOracle image = image_germ(line, phi, kDefaultSeed);
  o.expect(germ_verdict(line, s) == Verdict::Satisfied, "l not SSP");
  const Verdict vi = germ_verdict(image, s);
  o.expect(vi == Verdict::Violated, "phi(l): " + to_string(vi) + ", want violated");
  const ZigzagGerm harm = gen_zigzag(1.0, 0.5, true, 30, s, kDefaultPerShell, kDefaultSeed);
  const Verdict vh = germ_verdict(harm.oracle, s);
  o.expect(vh == Verdict::Satisfied, "SSP zigzag: " + to_string(vh) + ", want satisfied");
  o.expect(!harm.profile.lipschitz().has_value(), "SSP zigzag profile reported Lipschitz");
  return o;
}

// 8. Blow-up chart.
Result blowup() {
  Result o;
  const ScaleSchedule s = ScaleSchedule::standard();
  const ZigzagProfile prof(1.0, 0.5, CornerLaw::Geometric, 30);
  const SampledGerm chart = sample_schedule(zigzag_oracle(prof, true, kDefaultPerShell, kDefaultSeed), s);
  const SampledGerm image = gen_blowup_image(chart);
  double worst = -INFINITY;
  for (std::size_t i = 0; i < image.points().size(); ++i) {
    const VecView p = image.points()[i];
    worst = std::max(worst, std::abs(p[0]) - p[1] * p[1]);
  }
  o.expect(worst <= 0.0, "max |x| - c y^2 = " + fmt(worst));
  const DirectionSet d = estimate_direction_set(sample_to_oracle(image), s, 0.025);
  double far = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) far = std::max(far, dist(d.reps[i], Vec{0.0, 1.0}));
  o.expect(far <= 0.025, "direction set reaches " + fmt(far) + " from (0,1)");
  return o;
}

// 9. Dimension equality and transversality preservation.
Result dimension_equality() {
  Result o;
  const HarnessConfig cfg;
  const int n = 64;
  const Vec e1 = {1, 0, 0}, e2 = {0, 1, 0}, e3 = {0, 0, 1};
  const std::vector<std::pair<GermOracle, GermOracle>> pairs = {
      {plane_oracle(e1, e2, n, 1), plane_oracle(e2, e3, n, 2)},
      {line_oracle(e1, n, 1), plane_oracle(e2, e3, n, 2)},
      {line_oracle(e1, n, 1), line_oracle(e2, n, 2)},
      {plane_oracle(e1, e2, n, 1), line_oracle({1, 1, 0}, n, 2)}};
  for (int k = 0; k < 5; ++k) {
    const MapDescriptor h = random_bilipschitz_linear(3, 1000 + static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const HarnessReport r = check_dimension_equality(pairs[i].first, pairs[i].second, h, cfg);
      const json& m = r.body["measured"];
      const bool same_t = m["transversality"]["transverse"] == m["transversality_image"]["transverse"];
      o.expect(r.status == HarnessStatus::Pass && r.body["mode"] == "equality" && same_t,
               "h" + std::to_string(k) + " pair " + std::to_string(i) + ": dims " + m["dim_intersection"].dump() +
                   " vs " + m["dim_intersection_image"].dump());
    }
  }
  return o;
}

// 10. Weak-transversality preservation.
Result weak_transversality() {
  Result o;
  const HarnessConfig cfg;
  const int n = kDefaultPerShell;
  struct Pair {
    GermOracle a, b;
    bool weak;
  };
  auto ray = [&](double t, std::uint64_t s) { return ray_oracle({std::cos(t), std::sin(t)}, n, s); };
  const std::vector<Pair> pairs = {
      {ray(0.0, 1), ray(1.5, 2), true},
      {ray(0.0, 1), ray(M_PI, 2), true},
      {sector_oracle(0.0, 0.8, n, 1), ray(2.5, 2), true},
      {sector_oracle(0.0, 0.5, n, 1), sector_oracle(1.5, 2.5, n, 2), true},
      {line_oracle({1.0, 0.0}, n, 1), ray(M_PI / 2, 2), true},
      {ray(0.3, 1), ray(0.3, 2), false},
      {sector_oracle(0.0, 0.8, n, 1), ray(0.4, 2), false},
      {sector_oracle(0.0, 1.0, n, 1), sector_oracle(0.5, 2.0, n, 2), false},
      {line_oracle({1.0, 1.0}, n, 1), ray(-3 * M_PI / 4, 2), false},
      {line_oracle({0.0, 1.0}, n, 1), line_oracle({0.0, -1.0}, n, 2), false}};
  const std::vector<MapDescriptor> maps = {random_bilipschitz_linear(2, 77), make_rotation(1.1),
                                           make_builtin("perturb_sin", {{"amplitude", 0.3}})};
  int agree = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < maps.size(); ++j) {
      const HarnessReport r = check_weak_transversality_preservation(pairs[i].a, pairs[i].b, maps[j], cfg);
      const json& m = r.body["measured"];
      const bool ok = r.status == HarnessStatus::Pass && m["weakly_transverse"] == pairs[i].weak;
      agree += ok;
      o.expect(ok, "pair " + std::to_string(i) + " map " + std::to_string(j) + ": " + to_string(r.status));
    }
  o.notes.push_back(std::to_string(agree) + "/30 agree");
  return o;
}

// 11. Union criterion.
Result union_criterion() {
  Result o;
  const ScaleSchedule s = ScaleSchedule::standard();
  auto variant = [&](const Vec& dir, bool ssp) {
    return ssp ? ray_oracle(dir, kDefaultPerShell, kDefaultSeed) : sample_to_oracle(sparse_ray_sample(dir, s));
  };
  const Vec e1 = {1.0, 0.0}, d2 = {-0.5, 0.8};
  for (bool sa : {true, false})
    for (bool sb : {true, false}) {
      const bool pa = germ_verdict(variant(e1, sa), s) == Verdict::Satisfied;
      const bool pb = germ_verdict(variant(d2, sb), s) == Verdict::Satisfied;
      const bool pu = germ_verdict(union_oracle({variant(e1, sa), variant(d2, sb)}), s) == Verdict::Satisfied;
      const std::string tag = std::string(sa ? "ssp" : "sparse") + "/" + (sb ? "ssp" : "sparse");
      o.expect(pa == sa && pb == sb, tag + ": variants misclassified");
      o.expect(pu == (pa && pb), tag + ": union verdict disagrees");
    }
  return o;
}

// 12. Determinism of the demo suite.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Result determinism(const std::string& cli, const std::string& scratch) {
  Result o;
  char* names_c = nullptr;
  if (germlab_demo_names(&names_c) != GERMLAB_OK) {
    o.expect(false, germlab_last_error());
    return o;
  }
  const json names = json::parse(names_c);
  germlab_free_string(names_c);
  for (const auto& nm : names) {
    const std::string name = nm.get<std::string>();
    std::string out[2][2];
    for (int run = 0; run < 2; ++run) {
      char* rep = nullptr;
      char* csv = nullptr;
      if (germlab_demo(name.c_str(), GERMLAB_DEFAULT_SEED, &rep, nullptr) != GERMLAB_OK ||
          germlab_report_evidence_csv(rep, &csv) != GERMLAB_OK) {
        o.expect(false, name + ": " + germlab_last_error());
        germlab_free_string(rep);
        break;
      }
      out[run][0] = rep;
      out[run][1] = csv;
      germlab_free_string(rep);
      germlab_free_string(csv);
    }
    o.expect(out[0][0] == out[1][0] && out[0][1] == out[1][1], name + ": C API output differs between runs");
  }
  if (cli.empty()) {
    o.notes.push_back("CLI not given; C API only");
    return o;
  }
  // The files written by the CLI.
  const fs::path root = fs::path(scratch.empty() ? fs::temp_directory_path().string() : scratch) / "acceptance_demo";
  fs::remove_all(root);
  for (int run = 0; run < 2; ++run) {
    const std::string cmd =
        "\"" + cli + "\" demo all --out \"" + (root / std::to_string(run)).string() + "\" > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    (void)rc;  // the suite's own verdict is not part of this criterion
  }
  int files = 0;
  for (const auto& nm : names) {
    for (const char* f : {"report.json", "evidence.csv"}) {
      const fs::path a = root / "0" / nm.get<std::string>() / f, b = root / "1" / nm.get<std::string>() / f;
      const bool ok = fs::exists(a) && fs::exists(b) && slurp(a) == slurp(b);
      o.expect(ok, nm.get<std::string>() + "/" + f + " differs or is missing");
      files += ok;
    }
  }
  o.notes.push_back(std::to_string(files) + " files byte-identical");
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string scratch = argc > 2 ? argv[2] : "";
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"sequence classification matrix", sequences},
      {"closure under sums and products", closure},
      {"Whitney extension", whitney},
      {"doubling identity", doubling},
      {"pseudo-derivative", pseudo},
      {"tangent-cone invariance", cone_invariance},
      {"zigzag obstruction", zigzag},
      {"blow-up chart", blowup},
      {"dimension equality", dimension_equality},
      {"weak-transversality preservation", weak_transversality},
      {"union criterion", union_criterion},
      {"demo determinism", [&] { return determinism(cli, scratch); }}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %2zu %s%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                detail.empty() ? "" : " | ", detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed > 125 ? 125 : failed;
}
