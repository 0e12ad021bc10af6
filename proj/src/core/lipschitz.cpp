#include "core/lipschitz.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>

#include "core/error.hpp"
#include "core/sequence_gen.hpp"

namespace germlab {

double estimate_lipschitz(const MapDescriptor& f, const std::vector<PointPair>& pairs) {
  if (pairs.empty()) fail(ErrorCode::InvalidArgument, "estimate_lipschitz needs at least one pair");
  double best = 0.0;
  for (const auto& [x, y] : pairs) {
    const double d = dist(x, y);
    if (d == 0.0) fail(ErrorCode::InvalidArgument, "estimate_lipschitz: coincident pair");
    best = std::max(best, dist(f(x), f(y)) / d);
  }
  return best;
}

namespace {

// |a - b| under the current rounding mode, rounded in its direction.
double directed_dist(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = std::max(a[i] - b[i], b[i] - a[i]);
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace

double empirical_lipschitz(const PointCloud& anchors, const PointCloud& values) {
  require(anchors.size() == values.size(), "one value per anchor required");
  // Rounded up: never below the exact constant of the data.
  const int saved = std::fegetround();
  double best = 0.0;
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::fesetround(FE_DOWNWARD);
      const double d = directed_dist(anchors[i], anchors[j]);
      std::fesetround(FE_UPWARD);
      const double r = directed_dist(values[i], values[j]) / d;
      std::fesetround(saved);
      if (d == 0.0) fail(ErrorCode::InvalidArgument, "duplicate anchor " + std::to_string(i));
      best = std::max(best, r);
    }
  return best;
}

namespace {

void check_compatible(const PointCloud& anchors, const PointCloud& values, double L) {
  if (anchors.empty()) fail(ErrorCode::InvalidArgument, "extension needs at least one anchor");
  if (anchors.size() != values.size()) fail(ErrorCode::InvalidArgument, "extension needs one value per anchor");
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorCode::InvalidArgument, "extension constant L must be positive");
  const double bound = L * (1.0 + kLipCompatRelTol);
  const auto m = static_cast<std::size_t>(values.dim());
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double d = dist(anchors[i], anchors[j]);
      if (d == 0.0) fail(ErrorCode::InvalidArgument, "duplicate anchor " + std::to_string(i));
      for (std::size_t k = 0; k < m; ++k)
        if (std::abs(values[i][k] - values[j][k]) > bound * d)
          fail(ErrorCode::InvalidArgument, "anchors " + std::to_string(j) + " and " + std::to_string(i) +
                                               " are not L-compatible (component " + std::to_string(k) + ")");
    }
}

}  // namespace

MapDescriptor whitney_extend(const PointCloud& anchors, const std::vector<double>& values, double L,
                             ExtensionMode mode) {
  PointCloud v(1);
  for (double x : values) v.push_back(VecView(&x, 1));
  return extend_map(anchors, v, L, mode);
}

MapDescriptor extend_map(const PointCloud& anchors, const PointCloud& values, double L, ExtensionMode mode) {
  check_compatible(anchors, values, L);
  return make_extension(anchors, values, L, mode);
}

MapDescriptor doubling_plus(const MapDescriptor& f) { return make_shear(f, true, false); }
MapDescriptor doubling_minus(const MapDescriptor& f) { return make_shear(f, false, false); }

MapDescriptor doubling_composite(const MapDescriptor& phi_ext, const MapDescriptor& phi_inv_ext) {
  if (phi_ext.dim_in() != phi_inv_ext.dim_out() || phi_ext.dim_out() != phi_inv_ext.dim_in())
    fail(ErrorCode::InvalidArgument, "doubling: extension domains are inconsistent");
  return make_compose(make_shear(phi_inv_ext, false, true), make_shear(phi_ext, true, false));
}

double doubling_defect(const MapDescriptor& composite, const PointCloud& anchors, const PointCloud& phi_values) {
  require(anchors.size() == phi_values.size(), "one image per anchor required");
  const auto n = static_cast<std::size_t>(anchors.dim());
  const auto m = static_cast<std::size_t>(phi_values.dim());
  if (static_cast<std::size_t>(composite.dim_in()) != n + m)
    fail(ErrorCode::InvalidArgument, "doubling composite has the wrong dimension");
  double worst = 0.0;
  Vec in(n + m, 0.0), want(n + m, 0.0);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    std::copy(anchors[i].begin(), anchors[i].end(), in.begin());
    std::copy(phi_values[i].begin(), phi_values[i].end(), want.begin() + static_cast<std::ptrdiff_t>(n));
    worst = std::max(worst, dist(composite(in), want));
  }
  return worst;
}

MapDescriptor rescale(const MapDescriptor& f, double n) {
  const Vec origin(static_cast<std::size_t>(f.dim_in()), 0.0);
  if (norm(f(origin)) > kRescaleOriginTol) fail(ErrorCode::InvalidArgument, "rescale: f(0) != 0");
  return make_rescaled(f, n);
}

PointCloud default_grid(int dim) {
  require(dim >= 1, "grid dimension must be positive");
  PointCloud g(dim);
  if (dim <= 3) {
    const int steps = 20;  // spacing 1/20
    std::vector<int> idx(static_cast<std::size_t>(dim), -steps);
    Vec p(static_cast<std::size_t>(dim));
    for (;;) {
      double r2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        p[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k)] / static_cast<double>(steps);
        r2 += idx[static_cast<std::size_t>(k)] * idx[static_cast<std::size_t>(k)];
      }
      if (r2 <= steps * steps) g.push_back(p);
      int k = dim - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == steps) idx[static_cast<std::size_t>(k--)] = -steps;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
    }
    return g;
  }
  Rng rng(kDefaultSeed);
  Vec p(static_cast<std::size_t>(dim));
  while (g.size() < 4096) {
    for (auto& v : p) v = rng.uniform(-1.0, 1.0);
    if (norm(p) <= 1.0) g.push_back(p);
  }
  return g;
}

namespace {

PointCloud table_for(const MapDescriptor& f, const PointCloud& grid, double n) {
  const MapDescriptor psi = make_rescaled(f, n);
  PointCloud t(f.dim_out());
  for (std::size_t i = 0; i < grid.size(); ++i) t.push_back(psi(grid[i]));
  return t;
}

double sup_deviation(const PointCloud& a, const PointCloud& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, dist(a[i], b[i]));
  return worst;
}

}  // namespace

PseudoDerivative pseudo_derivative(const MapDescriptor& f, const PointCloud& grid, double tol, int budget) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "pseudo_derivative: grid is empty");
  if (grid.dim() != f.dim_in()) fail(ErrorCode::InvalidArgument, "pseudo_derivative: grid dimension mismatch");
  if (budget < 4) fail(ErrorCode::InvalidArgument, "pseudo_derivative: budget must be >= 4");
  if (budget > 60) fail(ErrorCode::InvalidArgument, "pseudo_derivative: budget must be <= 60");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "pseudo_derivative: tol must be positive");
  const Vec origin(static_cast<std::size_t>(f.dim_in()), 0.0);
  if (norm(f(origin)) > kRescaleOriginTol) fail(ErrorCode::InvalidArgument, "pseudo_derivative: f(0) != 0");

  std::vector<PointCloud> tables;
  for (int j = 0; j <= budget; ++j) tables.push_back(table_for(f, grid, std::ldexp(1.0, j)));

  RescalingReport rep;
  rep.tol = tol;
  int final_last = budget;
  for (int s = 0; s <= budget && !rep.converged; ++s) {
    std::vector<int> chain{s};
    int last = s;
    for (int j = s + 1; j <= budget; ++j) {
      const double allowed = tol * std::ldexp(1.0, -static_cast<int>(chain.size() - 1));
      if (sup_deviation(tables[static_cast<std::size_t>(j)], tables[static_cast<std::size_t>(last)]) <= allowed) {
        chain.push_back(j);
        last = j;
        if (chain.size() == 4) {
          rep.converged = true;
          break;
        }
      }
    }
    if (rep.converged) {
      rep.chain_start = s;
      rep.accepted_indices = chain;
      final_last = last;
    }
  }
  if (!rep.converged) {
    rep.chain_start = budget;
    rep.accepted_indices = {budget};
  }

  // Evidence rows replay the winning chain.
  {
    int last = rep.chain_start;
    for (int j = 0; j <= budget; ++j) {
      const bool acc = std::find(rep.accepted_indices.begin(), rep.accepted_indices.end(), j) !=
                       rep.accepted_indices.end();
      const double dev =
          sup_deviation(tables[static_cast<std::size_t>(j)], tables[static_cast<std::size_t>(last)]);
      rep.indices.push_back(j);
      rep.n_values.push_back(std::ldexp(1.0, j));
      rep.sup_deviations.push_back(dev);
      rep.accepted.push_back(acc);
      if (acc) last = j;
    }
  }

  rep.grid = grid;
  rep.limit_values = tables[static_cast<std::size_t>(final_last)];
  double L = empirical_lipschitz(rep.grid, rep.limit_values);
  if (f.lip_upper()) L = std::max(L, *f.lip_upper());
  if (!(L > 0.0)) L = 1.0;
  MapDescriptor limit = make_extension(rep.grid, rep.limit_values, L * (1.0 + kLipCompatRelTol), ExtensionMode::Inf);
  return PseudoDerivative{limit, std::move(rep)};
}

Table RescalingReport::table() const {
  Table t;
  t.columns = {"j", "n_j", "sup_deviation", "accepted"};
  for (std::size_t i = 0; i < indices.size(); ++i)
    t.rows.push_back({static_cast<double>(indices[i]), n_values[i], sup_deviations[i], accepted[i] ? 1.0 : 0.0});
  return t;
}

nlohmann::json RescalingReport::to_json() const {
  nlohmann::json grid_rows = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid_rows.push_back({{"x", grid.point(i)}, {"value", limit_values.point(i)}});
  return {{"indices", indices},
          {"n", n_values},
          {"sup_deviations", sup_deviations},
          {"accepted", accepted},
          {"accepted_indices", accepted_indices},
          {"chain_start", chain_start},
          {"converged", converged},
          {"tol", tol},
          {"limit_grid", grid_rows}};
}

}  // namespace germlab
