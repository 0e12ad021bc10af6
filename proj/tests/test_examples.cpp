#include <doctest.h>

#include <cmath>

#include "core/direction.hpp"
#include "core/examples.hpp"
#include "core/lipschitz.hpp"
#include "core/ssp.hpp"

using namespace germlab;
using nlohmann::json;

namespace {

// Brute-force distance to the graph through a dense polyline.
double dense_distance(const ZigzagProfile& f, VecView p) {
  double best = INFINITY;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double x = 2.0 * std::pow(static_cast<double>(i) / n, 3.0);
    best = std::min(best, std::hypot(p[0] - x, p[1] - f(x)));
  }
  return best;
}

Verdict ssp_of(const GermOracle& g, const ScaleSchedule& s) {
  return ssp_distance_test(g, estimate_direction_set(g, s, 0.025), s, kDefaultDistanceTol).verdict;
}

}  // namespace

TEST_CASE("zigzag profile corners and slopes") {
  const ZigzagProfile f(1.0, 0.25, CornerLaw::Geometric, 20);
  for (int k = 0; k < 10; ++k) {
    const double xk = std::pow(0.25, k);
    CHECK(f.corner_x(k) == xk);
    CHECK(f(xk) == doctest::Approx(k % 2 == 0 ? 0.0 : xk).epsilon(1e-12));
  }
  double steepest = 0.0;
  for (int k = 0; k + 1 < f.last_corner(); ++k)
    steepest = std::max(steepest, std::abs((f.corner_y(k + 1) - f.corner_y(k)) / (f.corner_x(k + 1) - f.corner_x(k))));
  REQUIRE(f.lipschitz().has_value());
  CHECK(*f.lipschitz() == doctest::Approx(steepest).epsilon(1e-12));
  CHECK_FALSE(ZigzagProfile(1.0, 0.5, CornerLaw::Harmonic, 10).lipschitz().has_value());
  CHECK_THROWS_AS(ZigzagProfile(1.0, 1.5, CornerLaw::Geometric, 10), Error);
  CHECK_THROWS_AS(ZigzagProfile(0.0, 0.5, CornerLaw::Geometric, 10), Error);
}

TEST_CASE("zigzag distance matches a dense polyline") {
  const ZigzagProfile f(1.0, 0.5, CornerLaw::Geometric, 12);
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    const Vec p = {rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.0)};
    const double d = f.distance(p);
    CHECK(d <= dense_distance(f, p) + 1e-12);
    CHECK(d >= dense_distance(f, p) - 1e-4);
    CHECK(std::hypot(p[0] - f.nearest(p)[0], p[1] - f.nearest(p)[1]) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("zigzag pair: the line is SSP and its doubling image is not") {
  const ScaleSchedule s = ScaleSchedule::standard();
  const ZigzagGerm zz = gen_zigzag(1.0, 0.25, false, 30, s, kDefaultPerShell, kDefaultSeed);
  const MapDescriptor phi = doubling_plus(zz.map);
  for (double t : {0.5, 0.25, 0.1, 1e-3, 1e-7}) {
    const Vec y = phi(Vec{t, 0.0});
    CHECK(y[0] == t);
    CHECK(y[1] == zz.profile(t));
  }
  const GermOracle line = line_oracle({1.0, 0.0}, kDefaultPerShell, kDefaultSeed);
  CHECK(ssp_of(line, s) == Verdict::Satisfied);
  CHECK(ssp_of(zz.oracle, s) == Verdict::Violated);
  const ZigzagGerm harm = gen_zigzag(1.0, 0.5, true, 30, s, kDefaultPerShell, kDefaultSeed);
  CHECK(ssp_of(harm.oracle, s) == Verdict::Satisfied);
}

TEST_CASE("zigzag direction set lies in the arc [0, arctan c]") {
  const ScaleSchedule s = ScaleSchedule::standard();
  for (double c : {0.5, 1.0, 2.0}) {
    const ZigzagGerm zz = gen_zigzag(c, 0.5, false, 30, s, kDefaultPerShell, kDefaultSeed);
    const DirectionSet d = estimate_direction_set(zz.oracle, s, 0.025);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double t = std::atan2(d.reps[i][1], d.reps[i][0]);
      CHECK(t >= -1e-12);
      CHECK(t <= std::atan(c) + 1e-12);
    }
  }
}

TEST_CASE("blow-up image lies in the region and is tangent to the y-axis") {
  const ScaleSchedule s = ScaleSchedule::standard();
  const ZigzagProfile prof(1.0, 0.5, CornerLaw::Geometric, 30);
  const SampledGerm chart = sample_schedule(zigzag_oracle(prof, true, kDefaultPerShell, kDefaultSeed), s);
  const SampledGerm image = gen_blowup_image(chart);
  CHECK(blowup_region_excess(image, 1.0) <= 1e-12);
  for (std::size_t i = 0; i < chart.points().size(); ++i) {
    const VecView p = chart.points()[i], q = image.points()[i];
    CHECK(q[0] == p[0] * p[1]);
    CHECK(q[1] == p[1]);
  }
  const DirectionSet d = estimate_direction_set(sample_to_oracle(image), s, 0.025);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(dist(d.reps[i], Vec{0.0, 1.0}) <= 0.025);
  CHECK(blowup_map()(Vec{2.0, 3.0}) == Vec{6.0, 3.0});
}

TEST_CASE("generators") {
  const ScaleSchedule s = ScaleSchedule::standard();
  const GeneratedGerm ray = generate_germ(json{{"kind", "ray"}, {"dir", {0.0, 2.0}}}, s, 4, kDefaultSeed);
  CHECK(ray.sample.covers(s));
  CHECK(ray.oracle.distance(Vec{0.0, 0.5}) == 0.0);
  CHECK(ray.oracle.distance(Vec{0.0, -0.5}) == doctest::Approx(0.5));
  CHECK(ray.oracle.distance(Vec{0.3, 0.4}) == doctest::Approx(0.3));

  const GeneratedGerm plane =
      generate_germ(json{{"kind", "plane"}, {"basis", {{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}}}}, s, 4, kDefaultSeed);
  CHECK(plane.oracle.distance(Vec{0.3, -0.2, 0.4}) == doctest::Approx(0.4));

  const GeneratedGerm sector =
      generate_germ(json{{"kind", "sector"}, {"theta1", 0.0}, {"theta2", M_PI / 2}}, s, 4, kDefaultSeed);
  CHECK(sector.oracle.distance(Vec{0.2, 0.1}) == 0.0);
  CHECK(sector.oracle.distance(Vec{-0.3, -0.4}) == doctest::Approx(0.5));

  const GeneratedGerm uni = generate_germ(
      json{{"kind", "union"}, {"parts", {{{"kind", "ray"}, {"dir", {1.0, 0.0}}}, {{"kind", "ray"}, {"dir", {0.0, 1.0}}}}}},
      s, 4, kDefaultSeed);
  CHECK(uni.oracle.distance(Vec{0.5, 0.2}) == doctest::Approx(0.2));

  const GeneratedGerm sparse = generate_germ(json{{"kind", "sparse_ray"}, {"dir", {1.0, 0.0}}}, s, 4, kDefaultSeed);
  for (std::size_t i = 0; i < sparse.sample.points().size(); ++i) {
    const double r = sparse.sample.points()[i][0];
    CHECK(std::log2(r) == doctest::Approx(std::round(std::log2(r))).epsilon(1e-12));
  }

  // Generated samples are seed-deterministic.
  const GeneratedGerm z1 = generate_germ(json{{"kind", "zigzag"}, {"c", 1.0}, {"ratio", 0.5}}, s, 8, 42);
  const GeneratedGerm z2 = generate_germ(json{{"kind", "zigzag"}, {"c", 1.0}, {"ratio", 0.5}}, s, 8, 42);
  CHECK(z1.sample.points().raw() == z2.sample.points().raw());

  CHECK_THROWS_WITH_AS(generate_germ(json{{"kind", "blob"}}, s, 4, kDefaultSeed), doctest::Contains("kind"), Error);
  CHECK_THROWS_AS(generate_germ(json{{"kind", "ray"}, {"dir", {0.0, 0.0}}}, s, 4, kDefaultSeed), Error);
  CHECK_THROWS_AS(generate_germ(json{{"kind", "ray"}, {"dir", {1.0}}, {"extra", 1}}, s, 4, kDefaultSeed), Error);
}

TEST_CASE("image germ oracle bounds the true distance") {
  const ScaleSchedule s = ScaleSchedule::standard();
  const MapDescriptor rot = make_rotation(0.5);
  const GermOracle a = ray_oracle({1.0, 0.0}, 8, kDefaultSeed);
  const GermOracle b = image_oracle(a, rot, *rot.inverse(), 1.1, 1.1);
  const Vec u = {std::cos(0.5), std::sin(0.5)};
  CHECK(b.distance(scaled(u, 0.3)) <= 1e-15);
  const PointCloud pts = b.sample(s.shell(3));
  REQUIRE_FALSE(pts.empty());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(in_shell(norm(pts[i]), s.shell(3)));
    CHECK(dist(normalized(pts[i]), u) <= 1e-12);
  }
}
