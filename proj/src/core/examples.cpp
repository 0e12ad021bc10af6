#include "core/examples.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>

#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/json_util.hpp"

namespace germlab {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586;

double radial_offset(std::uint64_t seed) { return unit_from_bits(splitmix64(seed ^ 0xA5A5A5A5ULL)); }

double stratified_radius(const Shell& sh, int i, int n, double offset) {
  const double u = (i + offset) / n;
  return sh.inner * std::pow(sh.outer / sh.inner, u);
}

Kronecker angular(const Shell& sh, std::uint64_t seed) { return Kronecker(1, seed ^ std::bit_cast<std::uint64_t>(sh.outer)); }

Vec unit_or_throw(const Vec& v, const char* what) {
  if (v.empty()) fail(ErrorCode::InvalidArgument, std::string(what) + ": empty direction");
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::InvalidArgument, std::string(what) + ": direction must be nonzero");
  return scaled(v, 1.0 / n);
}

GermOracle from_nearest(int dim, std::function<Vec(VecView)> nearest, std::function<PointCloud(const Shell&)> sample) {
  GermOracle g;
  g.dim = dim;
  g.nearest = nearest;
  g.distance = [nearest](VecView p) { return dist(p, nearest(p)); };
  g.sample = std::move(sample);
  return g;
}

Vec ray_nearest(const Vec& u, VecView p) {
  const double s = dot(p, u);
  return s > 0.0 ? scaled(u, s) : Vec(u.size(), 0.0);
}

}  // namespace

GermOracle ray_oracle(const Vec& dir, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  const Vec u = unit_or_throw(dir, "ray");
  const double off = radial_offset(seed);
  return from_nearest(
      static_cast<int>(u.size()), [u](VecView p) { return ray_nearest(u, p); },
      [u, per_shell, off](const Shell& sh) {
        PointCloud out(static_cast<int>(u.size()));
        for (int i = 0; i < per_shell; ++i) out.push_back(scaled(u, stratified_radius(sh, i, per_shell, off)));
        return out;
      });
}

GermOracle line_oracle(const Vec& dir, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  const Vec u = unit_or_throw(dir, "line");
  const double off = radial_offset(seed);
  return from_nearest(
      static_cast<int>(u.size()), [u](VecView p) { return scaled(u, dot(p, u)); },
      [u, per_shell, off, seed](const Shell& sh) {
        PointCloud out(static_cast<int>(u.size()));
        const Kronecker ang = angular(sh, seed);
        for (int i = 0; i < per_shell; ++i) {
          const double sign = ang.at(static_cast<std::uint64_t>(i), 0) < 0.5 ? 1.0 : -1.0;
          out.push_back(scaled(u, sign * stratified_radius(sh, i, per_shell, off)));
        }
        return out;
      });
}

GermOracle plane_oracle(const Vec& b1, const Vec& b2, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  require(b1.size() == b2.size() && b1.size() >= 2, "plane basis vectors must share a dimension >= 2");
  const Vec e1 = unit_or_throw(b1, "plane");
  Vec w = sub(b2, scaled(e1, dot(b2, e1)));
  if (!(norm(w) > 1e-12 * std::max(1.0, norm(b2)))) fail(ErrorCode::InvalidArgument, "plane basis is degenerate");
  const Vec e2 = unit_or_throw(w, "plane");
  const double off = radial_offset(seed);
  return from_nearest(
      static_cast<int>(e1.size()), [e1, e2](VecView p) { return add(scaled(e1, dot(p, e1)), scaled(e2, dot(p, e2))); },
      [e1, e2, per_shell, off, seed](const Shell& sh) {
        PointCloud out(static_cast<int>(e1.size()));
        const Kronecker ang = angular(sh, seed);
        for (int i = 0; i < per_shell; ++i) {
          const double r = stratified_radius(sh, i, per_shell, off);
          const double t = kTwoPi * ang.at(static_cast<std::uint64_t>(i), 0);
          out.push_back(add(scaled(e1, r * std::cos(t)), scaled(e2, r * std::sin(t))));
        }
        return out;
      });
}

GermOracle sector_oracle(double theta1, double theta2, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  const double width = theta2 - theta1;
  if (!(width > 0.0 && width < kTwoPi)) fail(ErrorCode::InvalidArgument, "sector: need 0 < theta2 - theta1 < 2 pi");
  const Vec u1{std::cos(theta1), std::sin(theta1)};
  const Vec u2{std::cos(theta2), std::sin(theta2)};
  const double off = radial_offset(seed);
  auto nearest = [theta1, width, u1, u2](VecView p) -> Vec {
    if (p[0] == 0.0 && p[1] == 0.0) return {0.0, 0.0};
    double rel = std::fmod(std::atan2(p[1], p[0]) - theta1, kTwoPi);
    if (rel < 0.0) rel += kTwoPi;
    if (rel <= width) return {p[0], p[1]};
    const Vec a = ray_nearest(u1, p), b = ray_nearest(u2, p);
    return dist(p, a) <= dist(p, b) ? a : b;
  };
  return from_nearest(2, nearest, [theta1, width, per_shell, off, seed](const Shell& sh) {
    PointCloud out(2);
    const Kronecker ang = angular(sh, seed);
    for (int i = 0; i < per_shell; ++i) {
      const double r = stratified_radius(sh, i, per_shell, off);
      const double t = theta1 + width * ang.at(static_cast<std::uint64_t>(i), 0);
      const double pt[2] = {r * std::cos(t), r * std::sin(t)};
      out.push_back(pt);
    }
    return out;
  });
}

GermOracle cone_oracle(const DirectionSet& d, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  if (d.empty()) fail(ErrorCode::InvalidArgument, "cone over an empty direction set");
  auto reps = std::make_shared<PointCloud>(d.reps);
  const int each = std::max(1, per_shell / static_cast<int>(d.size()));
  const double off = radial_offset(seed);
  auto nearest = [reps](VecView p) {
    Vec best(p.size(), 0.0);
    double bd = norm(p);
    for (std::size_t i = 0; i < reps->size(); ++i) {
      const Vec u = reps->point(i);
      const Vec q = ray_nearest(u, p);
      const double dq = dist(p, q);
      if (dq < bd) {
        bd = dq;
        best = q;
      }
    }
    return best;
  };
  return from_nearest(d.dim, nearest, [reps, each, off](const Shell& sh) {
    PointCloud out(reps->dim());
    for (std::size_t k = 0; k < reps->size(); ++k)
      for (int i = 0; i < each; ++i) out.push_back(scaled((*reps)[k], stratified_radius(sh, i, each, off)));
    return out;
  });
}

GermOracle zigzag_oracle(const ZigzagProfile& f, bool transpose, int per_shell, std::uint64_t seed) {
  require(per_shell >= 1, "per_shell must be >= 1");
  auto prof = std::make_shared<const ZigzagProfile>(f);
  auto swap_if = [transpose](Vec v) {
    if (transpose) std::swap(v[0], v[1]);
    return v;
  };
  auto nearest = [prof, swap_if](VecView p) {
    require(p.size() == 2, "zigzag germ lives in R^2");
    return swap_if(prof->nearest(swap_if(Vec(p.begin(), p.end()))));
  };
  return from_nearest(2, nearest, [prof, transpose, per_shell, seed](const Shell& sh) {
    PointCloud pts = prof->sample(sh, per_shell, seed);
    if (!transpose) return pts;
    PointCloud out(2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double q[2] = {pts[i][1], pts[i][0]};
      out.push_back(q);
    }
    return out;
  });
}

GermOracle image_oracle(const GermOracle& a, const MapDescriptor& phi, const MapDescriptor& phi_inv, double expand,
                        double contract) {
  if (phi.dim_in() != a.dim || phi_inv.dim_out() != a.dim || phi_inv.dim_in() != phi.dim_out())
    fail(ErrorCode::InvalidArgument, "image oracle: map dimensions do not match the germ");
  if (!(expand >= 1.0) || !(contract >= 1.0) || !std::isfinite(expand) || !std::isfinite(contract))
    fail(ErrorCode::InvalidArgument, "image oracle: distortion factors must be finite and >= 1");
  auto nearest = [a, phi, phi_inv](VecView y) { return phi(a.nearest(phi_inv(y))); };
  return from_nearest(phi.dim_out(), nearest, [a, phi, expand, contract](const Shell& sh) {
    const PointCloud src = a.sample(Shell{sh.inner / expand, sh.outer * contract});
    PointCloud out(phi.dim_out());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Vec y = phi(src[i]);
      if (in_shell(norm(y), sh)) out.push_back(y);
    }
    return out;
  });
}

std::pair<double, double> radial_distortion(const MapDescriptor& phi, std::uint64_t seed) {
  Rng rng(seed);
  Vec x(static_cast<std::size_t>(phi.dim_in()));
  double expand = 0.0, contract = 0.0;
  for (int it = 0; it < 2000; ++it) {
    double r;
    do {
      for (auto& v : x) v = rng.uniform(-1.0, 1.0);
      r = norm(x);
    } while (r > 1.0 || r < 1e-6);
    const double ry = norm(phi(x));
    if (!(ry > 0.0)) fail(ErrorCode::Domain, "map sends a nonzero point to the origin");
    expand = std::max(expand, ry / r);
    contract = std::max(contract, r / ry);
  }
  return {std::max(1.0, 1.1 * expand), std::max(1.0, 1.1 * contract)};
}

SampledGerm sparse_ray_sample(const Vec& dir, const ScaleSchedule& s) {
  const Vec u = unit_or_throw(dir, "sparse ray");
  const double hi = s.scale(0);
  const double lo = s.shell(s.depth() - 1).inner;
  PointCloud pts(static_cast<int>(u.size()));
  for (int j = 0; j < 2000; ++j) {
    const double r = std::ldexp(1.0, -2 * j);
    if (r < lo * (1.0 - kShellRelTol)) break;
    if (r <= hi * (1.0 + kShellRelTol)) pts.push_back(scaled(u, r));
  }
  if (pts.empty()) fail(ErrorCode::NotPopulated, "sparse ray has no point inside the schedule");
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    mn = std::min(mn, norm(pts[i]));
    mx = std::max(mx, norm(pts[i]));
  }
  return SampledGerm(std::move(pts), mn, mx);
}

ZigzagGerm gen_zigzag(double c, double ratio, bool ssp, int depth, const ScaleSchedule& s, int per_shell,
                      std::uint64_t seed) {
  const CornerLaw law = ssp ? CornerLaw::Harmonic : CornerLaw::Geometric;
  ZigzagProfile prof(c, ratio, law, depth);
  GermOracle oracle = zigzag_oracle(prof, false, per_shell, seed);
  SampledGerm sample = sample_schedule(oracle, s);
  MapDescriptor map =
      make_builtin("zigzag", json{{"c", c}, {"ratio", ratio}, {"law", to_string(law)}, {"depth", depth}});
  return ZigzagGerm{prof, std::move(sample), std::move(oracle), std::move(map)};
}

MapDescriptor blowup_map() { return make_builtin("blowup", json::object()); }

SampledGerm gen_blowup_image(const SampledGerm& b) {
  if (b.dim() != 2) fail(ErrorCode::InvalidArgument, "blow-up chart input must lie in R^2");
  PointCloud out(2);
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (std::size_t i = 0; i < b.points().size(); ++i) {
    const VecView p = b.points()[i];
    const double q[2] = {p[0] * p[1], p[1]};
    const double r = std::hypot(q[0], q[1]);
    if (!(r > 0.0)) fail(ErrorCode::Domain, "blow-up sends sample point " + std::to_string(i) + " to the origin");
    out.push_back(q);
    mn = std::min(mn, r);
    mx = std::max(mx, r);
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "blow-up of an empty sample");
  return SampledGerm(std::move(out), mn, mx);
}

double blowup_region_excess(const SampledGerm& g, double c) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.points().size(); ++i) {
    const VecView p = g.points()[i];
    worst = std::max(worst, std::abs(p[0]) - c * p[1] * p[1]);
  }
  return worst;
}

namespace {

Vec vec_field(const json& j, const std::string& path, const char* key) {
  return jsonu::as_numbers(jsonu::field(j, path, key), jsonu::child(path, key));
}

GermOracle oracle_from_spec(const json& spec, const std::string& path, const ScaleSchedule& s, int per_shell,
                            std::uint64_t seed, std::optional<SampledGerm>& fixed_sample) {
  using namespace jsonu;
  if (!spec.is_object()) schema_error(path, "expected a generator object");
  const std::string kind = string(spec, path, "kind");
  if (kind == "ray" || kind == "line" || kind == "sparse_ray") {
    expect_object(spec, path, {"kind", "dir"});
    const Vec dir = vec_field(spec, path, "dir");
    if (kind == "ray") return ray_oracle(dir, per_shell, seed);
    if (kind == "line") return line_oracle(dir, per_shell, seed);
    fixed_sample = sparse_ray_sample(dir, s);
    return sample_to_oracle(*fixed_sample);
  }
  if (kind == "plane") {
    expect_object(spec, path, {"kind", "basis"});
    const json& b = field(spec, path, "basis");
    const std::string bp = child(path, "basis");
    if (!b.is_array() || b.size() != 2) schema_error(bp, "expected two basis vectors");
    return plane_oracle(as_numbers(b[0], index(bp, 0)), as_numbers(b[1], index(bp, 1)), per_shell, seed);
  }
  if (kind == "sector") {
    expect_object(spec, path, {"kind", "theta1", "theta2"});
    return sector_oracle(number(spec, path, "theta1"), number(spec, path, "theta2"), per_shell, seed);
  }
  if (kind == "cone_over") {
    expect_object(spec, path, {"kind", "dirset"});
    return cone_oracle(direction_set_from_json(field(spec, path, "dirset"), child(path, "dirset")), per_shell, seed);
  }
  if (kind == "union") {
    expect_object(spec, path, {"kind", "parts"});
    const json& parts = field(spec, path, "parts");
    const std::string pp = child(path, "parts");
    if (!parts.is_array() || parts.empty()) schema_error(pp, "expected a nonempty array of generators");
    std::vector<GermOracle> os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::optional<SampledGerm> ignored;
      os.push_back(oracle_from_spec(parts[i], index(pp, i), s, per_shell, seed + i, ignored));
      if (os.back().dim != os.front().dim) schema_error(index(pp, i), "parts have different dimensions");
    }
    return union_oracle(os);
  }
  if (kind == "zigzag") {
    expect_object(spec, path, {"kind", "c", "ratio", "ssp", "depth", "transpose"});
    const bool ssp = boolean_or(spec, path, "ssp", false);
    const ZigzagProfile prof(number_or(spec, path, "c", 1.0), number_or(spec, path, "ratio", 0.5),
                             ssp ? CornerLaw::Harmonic : CornerLaw::Geometric,
                             static_cast<int>(integer_or(spec, path, "depth", 30)));
    return zigzag_oracle(prof, boolean_or(spec, path, "transpose", false), per_shell, seed);
  }
  if (kind == "blowup" || kind == "image") {
    if (kind == "blowup")
      expect_object(spec, path, {"kind", "of"});
    else
      expect_object(spec, path, {"kind", "of", "map"});
    std::optional<SampledGerm> ignored;
    const GermOracle a = oracle_from_spec(field(spec, path, "of"), child(path, "of"), s, per_shell, seed, ignored);
    if (kind == "blowup") {
      // On the chart region |X| <= c|Y| inside the unit ball, |pi(x)|/|x| <= sqrt 2;
      // the reverse factor is sampled since it depends on c.
      const MapDescriptor pi = blowup_map();
      double contract = 1.0;
      for (int k = s.first_fine_shell(); k < s.depth(); ++k) {
        const PointCloud pts = a.sample(s.shell(k));
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const double ry = norm(pi(pts[i]));
          if (ry > 0.0) contract = std::max(contract, norm(pts[i]) / ry);
        }
      }
      return image_oracle(a, pi, *pi.inverse(), std::sqrt(2.0), 1.25 * contract);
    }
    const MapDescriptor phi = map_from_json(field(spec, path, "map"), child(path, "map"));
    const auto inv = phi.inverse();
    if (!inv) schema_error(child(path, "map"), "image generator needs an invertible map (declare \"inverse\")");
    const auto [expand, contract] = radial_distortion(phi, seed);
    return image_oracle(a, phi, *inv, expand, contract);
  }
  if (kind == "sampled") {
    expect_object(spec, path, {"kind", "germ"});
    fixed_sample = sampled_germ_from_json(field(spec, path, "germ"), child(path, "germ"));
    return sample_to_oracle(*fixed_sample);
  }
  schema_error(child(path, "kind"), "unknown generator kind '" + kind + "'");
}

}  // namespace

GeneratedGerm generate_germ(const json& spec, const ScaleSchedule& s, int per_shell, std::uint64_t seed) {
  if (per_shell < 1 || per_shell > 100000) fail(ErrorCode::InvalidArgument, "per_shell must lie in [1, 100000]");
  std::optional<SampledGerm> fixed;
  GermOracle oracle = oracle_from_spec(spec, "", s, per_shell, seed, fixed);
  SampledGerm sample = fixed ? *fixed : sample_schedule(oracle, s);
  return GeneratedGerm{std::move(oracle), std::move(sample), spec};
}

GeneratedGerm germ_from_document(const json& doc, const ScaleSchedule& s, int per_shell, std::uint64_t seed) {
  if (doc.is_object() && doc.contains("points") && !doc.contains("kind")) {
    SampledGerm g = sampled_germ_from_json(doc);
    GermOracle o = sample_to_oracle(g);
    return GeneratedGerm{std::move(o), std::move(g), json{{"kind", "sampled"}}};
  }
  return generate_germ(doc, s, per_shell, seed);
}

}  // namespace germlab
