#include <doctest.h>

#include <cmath>

#include "core/examples.hpp"
#include "core/lipschitz.hpp"
#include "core/map.hpp"
#include "core/sequence_gen.hpp"

using namespace germlab;
using nlohmann::json;

namespace {

Vec random_point(Rng& rng, int n, double r = 1.0) {
  Vec v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.uniform(-r, r);
  return v;
}

// Brute-force reference for the inf/sup extension formulas.
double ref_alpha(const PointCloud& a, const std::vector<double>& v, double L, VecView x) {
  double best = INFINITY;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, v[i] + L * dist(x, a[i]));
  return best;
}
double ref_beta(const PointCloud& a, const std::vector<double>& v, double L, VecView x) {
  double best = -INFINITY;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, v[i] - L * dist(x, a[i]));
  return best;
}

}  // namespace

TEST_CASE("estimate_lipschitz examples") {
  std::vector<PointPair> axis = {{{0.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}};
  CHECK(estimate_lipschitz(make_identity(2), axis) == 1.0);
  CHECK(estimate_lipschitz(make_diag({1.0, 3.0}), axis) == 3.0);
  Rng rng(5);
  std::vector<PointPair> line;
  for (int i = 0; i < 200; ++i) line.push_back({{rng.uniform(-1, 1)}, {rng.uniform(-1, 1)}});
  CHECK(estimate_lipschitz(make_expr_map("abs(x)", 1), line) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<PointPair> bad = {{{1.0}, {1.0}}};
  CHECK_THROWS_AS(estimate_lipschitz(make_identity(1), bad), Error);
}

TEST_CASE("whitney extension examples") {
  PointCloud one(2);
  one.push_back(Vec{0.5, 0.5});
  const MapDescriptor a1 = whitney_extend(one, {2.0}, 3.0, ExtensionMode::Inf);
  CHECK(a1(Vec{0.5, 1.5})[0] == doctest::Approx(5.0).epsilon(1e-15));

  PointCloud two(1);
  two.push_back(Vec{-1.0});
  two.push_back(Vec{1.0});
  CHECK(whitney_extend(two, {1.0, 1.0}, 1.0, ExtensionMode::Inf)(Vec{0.0})[0] == 2.0);
  CHECK(whitney_extend(two, {1.0, 1.0}, 1.0, ExtensionMode::Sup)(Vec{0.0})[0] == 0.0);
  CHECK_THROWS_AS(whitney_extend(two, {0.0, 5.0}, 1.0, ExtensionMode::Inf), Error);
}

TEST_CASE("extensions restrict exactly, are sandwiched and L-Lipschitz") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 3;
    PointCloud anchors(n);
    std::vector<double> vals;
    for (int i = 0; i < 30; ++i) {
      anchors.push_back(random_point(rng, n));
      vals.push_back(rng.uniform(-1, 1));
    }
    PointCloud vc(1);
    for (double v : vals) vc.push_back(Vec{v});
    const double L = empirical_lipschitz(anchors, vc);
    const MapDescriptor al = whitney_extend(anchors, vals, L, ExtensionMode::Inf);
    const MapDescriptor be = whitney_extend(anchors, vals, L, ExtensionMode::Sup);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      CHECK(al(anchors[i])[0] == vals[i]);
      CHECK(be(anchors[i])[0] == vals[i]);
    }
    for (int i = 0; i < 300; ++i) {
      const Vec x = random_point(rng, n, 1.5), y = random_point(rng, n, 1.5);
      // The library rounds outward; the reference rounds to nearest.
      const double ra = ref_alpha(anchors, vals, L, x), rb = ref_beta(anchors, vals, L, x);
      CHECK(std::abs(al(x)[0] - ra) <= 1e-14 * (1.0 + std::abs(ra)));
      CHECK(std::abs(be(x)[0] - rb) <= 1e-14 * (1.0 + std::abs(rb)));
      CHECK(be(x)[0] <= al(x)[0]);
      CHECK(std::abs(al(x)[0] - al(y)[0]) <= L * dist(x, y) + 1e-9);
      CHECK(std::abs(be(x)[0] - be(y)[0]) <= L * dist(x, y) + 1e-9);
    }
  }
}

TEST_CASE("extensions stay ordered where they coincide") {
  // alpha = beta on the segment between anchors realizing L.
  PointCloud a(1);
  a.push_back(Vec{-0.7});
  a.push_back(Vec{0.9});
  const std::vector<double> v = {0.3, -1.1};
  PointCloud vc(1);
  for (double x : v) vc.push_back(Vec{x});
  const double L = empirical_lipschitz(a, vc);
  CHECK(L >= 1.4 / 1.6);
  const MapDescriptor al = whitney_extend(a, v, L, ExtensionMode::Inf), be = whitney_extend(a, v, L, ExtensionMode::Sup);
  for (int i = 1; i < 10000; ++i) {
    const Vec x = {-0.7 + 1.6 * i / 10000.0};
    CHECK(be(x)[0] <= al(x)[0]);
    CHECK(al(x)[0] - be(x)[0] <= 1e-14);
  }
}

TEST_CASE("extend_map") {
  PointCloud grid(2), vals(2);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      grid.push_back(Vec{i * 0.3, j * 0.3});
      vals.push_back(Vec{i * 0.3, j * 0.3});
    }
  const MapDescriptor ext = extend_map(grid, vals, 1.0, ExtensionMode::Inf);
  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Vec x = random_point(rng, 2), y = random_point(rng, 2);
    worst = std::max(worst, dist(ext(x), ext(y)) / dist(x, y));
  }
  CHECK(worst <= std::sqrt(2.0) + 1e-12);
  REQUIRE(ext.lip_upper().has_value());
  CHECK(*ext.lip_upper() == doctest::Approx(std::sqrt(2.0)));

  const MapDescriptor rot = make_rotation(0.4);
  PointCloud rv(2);
  for (std::size_t i = 0; i < grid.size(); ++i) rv.push_back(rot(grid[i]));
  const MapDescriptor rext = extend_map(grid, rv, 1.0 + 1e-12, ExtensionMode::Sup);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(rext(grid[i]) == rv.point(i));

  PointCloud dup(1), dv(1);
  dup.push_back(Vec{0.0});
  dup.push_back(Vec{0.0});
  dv.push_back(Vec{0.0});
  dv.push_back(Vec{0.0});
  CHECK_THROWS_AS(extend_map(dup, dv, 1.0, ExtensionMode::Inf), Error);
}

TEST_CASE("shears") {
  const MapDescriptor zero = make_affine(1, 1, {0.0}, {});
  const MapDescriptor y0 = doubling_plus(zero);
  CHECK(y0(Vec{0.3, -0.7}) == Vec{0.3, -0.7});
  const ScaleSchedule s = ScaleSchedule::standard();
  const ZigzagGerm zz = gen_zigzag(1.0, 0.25, false, 30, s, 4, kDefaultSeed);
  const double L = *zz.profile.lipschitz();
  for (const MapDescriptor& y : {doubling_plus(zz.map), doubling_minus(zz.map)}) {
    const MapDescriptor inv = *y.inverse();
    Rng rng(9);
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const Vec p = random_point(rng, 2), q = random_point(rng, 2);
      CHECK(dist(y(inv(p)), p) <= 1e-12);
      CHECK(dist(inv(y(p)), p) <= 1e-12);
      const double r = dist(y(p), y(q)) / dist(p, q);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi <= 1.0 + L + 1e-12);
    CHECK(lo >= 1.0 / (1.0 + L) - 1e-12);
  }
}

TEST_CASE("doubling composite identity") {
  PointCloud anchors(1);
  for (int i = -10; i <= 10; ++i) anchors.push_back(Vec{i * 0.1});
  for (double k : {1.0, 2.0}) {
    PointCloud img(1);
    for (std::size_t i = 0; i < anchors.size(); ++i) img.push_back(Vec{k * anchors[i][0]});
    const MapDescriptor c = doubling_composite(extend_map(anchors, img, k, ExtensionMode::Inf),
                                               extend_map(img, anchors, 1.0 / k, ExtensionMode::Inf));
    CHECK(doubling_defect(c, anchors, img) <= 1e-9);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const Vec y = c(Vec{anchors[i][0], 0.0});
      CHECK(std::abs(y[0]) <= 1e-12);
      CHECK(y[1] == doctest::Approx(k * anchors[i][0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("rescale") {
  const MapDescriptor quad = make_expr_map("x + x^2", 1);
  CHECK(rescale(quad, 10.0)(Vec{1.0})[0] == doctest::Approx(1.1).epsilon(1e-14));
  const MapDescriptor lin = make_affine(2, 2, {1.0, 2.0, 3.0, 4.0}, {});
  const Vec x = {0.3, -0.2};
  CHECK(dist(rescale(lin, 64.0)(x), lin(x)) <= 1e-15);
  CHECK(std::abs(rescale(quad, 4096.0)(Vec{0.9})[0] - 0.9) <= 0.81 / 4096.0 + 1e-15);
  CHECK_THROWS_AS(rescale(make_expr_map("x + 1", 1), 2.0), Error);

  // Sampled constants agree on correspondingly scaled pairs.
  Rng rng(4);
  std::vector<PointPair> pairs, scaled_pairs;
  for (int i = 0; i < 200; ++i) {
    const Vec p = {rng.uniform(-1, 1)}, q = {rng.uniform(-1, 1)};
    pairs.push_back({scaled(p, 1.0 / 8.0), scaled(q, 1.0 / 8.0)});
    scaled_pairs.push_back({p, q});
  }
  CHECK(estimate_lipschitz(rescale(quad, 8.0), scaled_pairs) ==
        doctest::Approx(estimate_lipschitz(quad, pairs)).epsilon(1e-9));
}

TEST_CASE("pseudo-derivative") {
  const MapDescriptor lin = make_affine(2, 2, {2.0, 1.0, 0.0, 1.0}, {});
  const PointCloud g2 = default_grid(2);
  const PseudoDerivative pl = pseudo_derivative(lin, g2, 1e-3, 20);
  CHECK(pl.report.converged);
  for (std::size_t i = 0; i < g2.size(); ++i) CHECK(pl.map(g2[i]) == lin(g2[i]));

  const MapDescriptor quad = make_expr_map("x + x^2", 1);
  const PointCloud g1 = default_grid(1);
  const PseudoDerivative pq = pseudo_derivative(quad, g1, 1e-3, 20);
  CHECK(pq.report.converged);
  for (std::size_t i = 0; i < g1.size(); ++i) CHECK(std::abs(pq.map(g1[i])[0] - g1[i][0]) <= 1e-3);
  CHECK(pseudo_derivative(quad, g1, 1e-3, 20).report.accepted_indices == pq.report.accepted_indices);

  // Converged reports have trailing deviations within tolerance.
  const auto& r = pq.report;
  for (int j : r.accepted_indices)
    if (j != r.chain_start) CHECK(r.sup_deviations[static_cast<std::size_t>(j)] <= r.tol);

  CHECK_THROWS_AS(pseudo_derivative(quad, g1, 1e-3, 3), Error);
  CHECK_THROWS_AS(pseudo_derivative(make_expr_map("x + 1", 1), g1, 1e-3, 20), Error);
}

TEST_CASE("default grids") {
  const PointCloud g2 = default_grid(2);
  for (std::size_t i = 0; i < g2.size(); ++i) CHECK(norm(g2[i]) <= 1.0 + 1e-12);
  // Lattice points of spacing 0.05 in the unit disk.
  std::size_t count = 0;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j)
      if (i * i + j * j <= 400) ++count;
  CHECK(g2.size() == count);
  CHECK(default_grid(5).size() == 4096);
}
