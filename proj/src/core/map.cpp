#include "core/map.hpp"

#include <cfenv>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/json_util.hpp"
#include "core/sequence_gen.hpp"
#include "core/zigzag.hpp"

namespace germlab {

using nlohmann::json;

std::string to_string(ExtensionMode m) { return m == ExtensionMode::Inf ? "inf" : "sup"; }

ExtensionMode parse_extension_mode(const std::string& s) {
  if (s == "inf") return ExtensionMode::Inf;
  if (s == "sup") return ExtensionMode::Sup;
  fail(ErrorCode::InvalidArgument, "extension mode must be 'inf' or 'sup', got '" + s + "'");
}

MapDescriptor::MapDescriptor(std::shared_ptr<const MapNode> node) : node_(std::move(node)) {
  require(node_ != nullptr, "null map node");
}

int MapDescriptor::dim_in() const { return node_->dim_in; }
int MapDescriptor::dim_out() const { return node_->dim_out; }
std::optional<double> MapDescriptor::lip_upper() const { return node_->lip; }

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

MapDescriptor wrap(MapNode::Body body, int din, int dout, std::optional<double> lip) {
  auto n = std::make_shared<MapNode>();
  n->body = std::move(body);
  n->dim_in = din;
  n->dim_out = dout;
  n->lip = lip;
  return MapDescriptor(std::move(n));
}

struct BuiltinInfo {
  int din = 0;
  int dout = 0;
  std::optional<double> lip;
  json params;  // normalized
};

BuiltinInfo builtin_info(const std::string& name, const json& params) {
  const std::string path = "$.params";
  BuiltinInfo info;
  if (name == "zigzag") {
    jsonu::expect_object(params, path, {"c", "ratio", "law", "depth"});
    const double c = jsonu::number_or(params, path, "c", 1.0);
    const double ratio = jsonu::number_or(params, path, "ratio", 0.5);
    const std::string law = jsonu::string_or(params, path, "law", "geometric");
    const auto depth = jsonu::integer_or(params, path, "depth", 30);
    const ZigzagProfile prof(c, ratio, parse_corner_law(law), static_cast<int>(depth));
    info = {1, 1, prof.lipschitz(), json{{"c", c}, {"ratio", ratio}, {"law", law}, {"depth", depth}}};
    return info;
  }
  if (name == "perturb_sin" || name == "perturb_sin_inv") {
    jsonu::expect_object(params, path, {"amplitude", "dim"});
    const double a = jsonu::number(params, path, "amplitude");
    const auto dim = jsonu::integer_or(params, path, "dim", 2);
    if (!(a >= 0.0 && a < 1.0)) fail(ErrorCode::InvalidArgument, name + ": amplitude must lie in [0,1)");
    if (dim < 1 || dim > 64) fail(ErrorCode::InvalidArgument, name + ": dim must lie in [1, 64]");
    const double lip = name == "perturb_sin" ? 1.0 + a : 1.0 / (1.0 - a);
    info = {static_cast<int>(dim), static_cast<int>(dim), lip, json{{"amplitude", a}, {"dim", dim}}};
    return info;
  }
  if (name == "radial_quad" || name == "radial_quad_inv") {
    jsonu::expect_object(params, path, {"coeff", "dim"});
    const double c = jsonu::number(params, path, "coeff");
    const auto dim = jsonu::integer_or(params, path, "dim", 2);
    if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::InvalidArgument, name + ": coeff must be >= 0");
    if (dim < 1 || dim > 64) fail(ErrorCode::InvalidArgument, name + ": dim must lie in [1, 64]");
    std::optional<double> lip;
    if (c == 0.0) lip = 1.0;
    else if (name == "radial_quad_inv") lip = 1.0;  // r -> r(1+cr) is expanding, so its inverse is 1-Lipschitz
    info = {static_cast<int>(dim), static_cast<int>(dim), lip, json{{"coeff", c}, {"dim", dim}}};
    return info;
  }
  if (name == "blowup" || name == "blowup_inv") {
    jsonu::expect_object(params, path, {});
    info = {2, 2, std::nullopt, json::object()};
    return info;
  }
  fail(ErrorCode::InvalidArgument, "unknown builtin map '" + name + "'");
}

Vec eval_builtin(const mapkind::Builtin& b, VecView x) {
  const std::string& name = b.name;
  if (name == "zigzag") {
    const ZigzagProfile prof(b.params.at("c").get<double>(), b.params.at("ratio").get<double>(),
                             parse_corner_law(b.params.at("law").get<std::string>()),
                             b.params.at("depth").get<int>());
    return {prof(std::abs(x[0]))};
  }
  if (name == "perturb_sin") {
    const double a = b.params.at("amplitude").get<double>();
    const std::size_t n = x.size();
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * std::sin(x[(i + 1) % n]);
    return y;
  }
  if (name == "perturb_sin_inv") {
    // Fixed point of x = y - a sin(P x); a contraction for a < 1.
    const double a = b.params.at("amplitude").get<double>();
    const std::size_t n = x.size();
    Vec cur(x.begin(), x.end()), next(n);
    for (int it = 0; it < 400; ++it) {
      double change = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = x[i] - a * std::sin(cur[(i + 1) % n]);
        change = std::max(change, std::abs(next[i] - cur[i]));
      }
      cur.swap(next);
      if (change <= 1e-17 * (1.0 + norm(x))) break;
    }
    return cur;
  }
  if (name == "radial_quad") {
    const double c = b.params.at("coeff").get<double>();
    return scaled(x, 1.0 + c * norm(x));
  }
  if (name == "radial_quad_inv") {
    const double c = b.params.at("coeff").get<double>();
    const double ry = norm(x);
    if (ry == 0.0 || c == 0.0) return Vec(x.begin(), x.end());
    const double r = 2.0 * ry / (1.0 + std::sqrt(1.0 + 4.0 * c * ry));
    return scaled(x, r / ry);
  }
  if (name == "blowup_inv") {
    // Chart inverse off the exceptional line; points with y = 0 have no
    // preimage and are sent to the origin.
    if (x[1] == 0.0) return {0.0, 0.0};
    return {x[0] / x[1], x[1]};
  }
  return {x[0] * x[1], x[1]};
}

Vec eval_node(const MapNode& node, VecView x);

// Euclidean distance under upward rounding; never below the exact value.
double upper_dist(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = std::max(a[i] - b[i], b[i] - a[i]);
    s += t * t;
  }
  return std::sqrt(s);
}

struct Evaluator {
  VecView x;

  Vec operator()(const mapkind::Builtin& b) const { return eval_builtin(b, x); }

  Vec operator()(const mapkind::Affine& a) const {
    Vec y(a.offset);
    for (int r = 0; r < a.rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < a.cols; ++c) s += a.matrix[static_cast<std::size_t>(r * a.cols + c)] * x[c];
      y[r] += s;
    }
    return y;
  }

  Vec operator()(const mapkind::Sum& s) const {
    Vec y = s.terms.front()(x);
    for (std::size_t i = 1; i < s.terms.size(); ++i) {
      const Vec t = s.terms[i](x);
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += t[k];
    }
    return y;
  }

  Vec operator()(const mapkind::Compose& c) const { return c.outer(c.inner(x)); }

  Vec operator()(const mapkind::Shear& s) const {
    Vec out(x.begin(), x.end());
    const double sign = s.inverted ? -1.0 : 1.0;
    if (s.plus) {
      const auto n = static_cast<std::size_t>(s.f.dim_in());
      const Vec fx = s.f(x.subspan(0, n));
      for (std::size_t k = 0; k < fx.size(); ++k) out[n + k] += sign * fx[k];
    } else {
      const auto n = static_cast<std::size_t>(s.f.dim_out());
      const Vec fy = s.f(x.subspan(n));
      for (std::size_t k = 0; k < fy.size(); ++k) out[k] += sign * fy[k];
    }
    return out;
  }

  // Outward rounding: alpha is evaluated rounding up and beta rounding down,
  // against distances bounded from above, so beta <= alpha holds for the
  // computed values as it does exactly.
  Vec operator()(const mapkind::Extension& e) const {
    const std::size_t na = e.anchors.size();
    std::vector<double> d(na);
    const int saved = std::fegetround();
    std::fesetround(FE_UPWARD);
    for (std::size_t i = 0; i < na; ++i) {
      d[i] = upper_dist(x, e.anchors[i]);
      // The infimum (supremum) is attained at a coincident anchor; returning
      // its value avoids rounding in f(a') + L d(a, a').
      if (d[i] == 0.0) {
        std::fesetround(saved);
        return e.values.point(i);
      }
    }
    if (e.mode == ExtensionMode::Sup) std::fesetround(FE_DOWNWARD);
    const auto m = static_cast<std::size_t>(e.values.dim());
    Vec y(m);
    for (std::size_t k = 0; k < m; ++k) {
      double best = e.mode == ExtensionMode::Inf ? std::numeric_limits<double>::infinity()
                                                 : -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < na; ++i) {
        if (e.mode == ExtensionMode::Inf)
          best = std::min(best, e.values[i][k] + e.L * d[i]);
        else
          best = std::max(best, e.values[i][k] + (-e.L) * d[i]);
      }
      y[k] = best;
    }
    std::fesetround(saved);
    return y;
  }

  Vec operator()(const mapkind::Rescaled& r) const {
    const Vec inner = r.base(scaled(x, 1.0 / r.n));
    return scaled(inner, r.n);
  }

  Vec operator()(const mapkind::ExprMap& e) const { return {eval_expr(*e.expr, x)}; }
};

Vec eval_node(const MapNode& node, VecView x) { return std::visit(Evaluator{x}, node.body); }

}  // namespace

Vec MapDescriptor::operator()(VecView x) const {
  if (static_cast<int>(x.size()) != node_->dim_in)
    fail(ErrorCode::InvalidArgument, "map expects input dimension " + std::to_string(node_->dim_in) + ", got " +
                                         std::to_string(x.size()));
  return eval_node(*node_, x);
}

MapDescriptor MapDescriptor::with_inverse(const MapDescriptor& inv) const {
  if (inv.dim_in() != dim_out() || inv.dim_out() != dim_in())
    fail(ErrorCode::InvalidArgument, "inverse has incompatible dimensions");
  auto n = std::make_shared<MapNode>(*node_);
  n->inverse = inv.node_;
  return MapDescriptor(std::move(n));
}

MapDescriptor MapDescriptor::with_lip_upper(double lip) const {
  if (!(lip > 0.0) || !std::isfinite(lip)) fail(ErrorCode::InvalidArgument, "lip_upper must be a positive real");
  auto n = std::make_shared<MapNode>(*node_);
  n->lip = lip;
  return MapDescriptor(std::move(n));
}

std::optional<MapDescriptor> MapDescriptor::inverse() const {
  if (node_->inverse) return MapDescriptor(node_->inverse);
  const auto& body = node_->body;
  if (const auto* a = std::get_if<mapkind::Affine>(&body)) {
    if (a->rows != a->cols) return std::nullopt;
    const Eigen::Map<const Matrix> A(a->matrix.data(), a->rows, a->cols);
    const Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible()) return std::nullopt;
    const Matrix inv = lu.inverse();
    const Eigen::Map<const Eigen::VectorXd> b(a->offset.data(), a->rows);
    const Eigen::VectorXd c = -(inv * b);
    return make_affine(a->rows, a->cols, std::vector<double>(inv.data(), inv.data() + inv.size()),
                       Vec(c.data(), c.data() + c.size()));
  }
  if (const auto* b = std::get_if<mapkind::Builtin>(&body)) {
    if (b->name == "perturb_sin") return make_builtin("perturb_sin_inv", b->params);
    if (b->name == "perturb_sin_inv") return make_builtin("perturb_sin", b->params);
    if (b->name == "radial_quad") return make_builtin("radial_quad_inv", b->params);
    if (b->name == "radial_quad_inv") return make_builtin("radial_quad", b->params);
    if (b->name == "blowup") return make_builtin("blowup_inv", b->params);
    if (b->name == "blowup_inv") return make_builtin("blowup", b->params);
    return std::nullopt;
  }
  if (const auto* s = std::get_if<mapkind::Shear>(&body)) return make_shear(s->f, s->plus, !s->inverted);
  if (const auto* c = std::get_if<mapkind::Compose>(&body)) {
    auto io = c->outer.inverse();
    auto ii = c->inner.inverse();
    if (!io || !ii) return std::nullopt;
    return make_compose(*ii, *io);
  }
  if (const auto* r = std::get_if<mapkind::Rescaled>(&body)) {
    auto ib = r->base.inverse();
    if (!ib) return std::nullopt;
    return make_rescaled(*ib, r->n);
  }
  return std::nullopt;
}

MapDescriptor make_builtin(const std::string& name, const json& params) {
  const BuiltinInfo info = builtin_info(name, params);
  return wrap(mapkind::Builtin{name, info.params}, info.din, info.dout, info.lip);
}

MapDescriptor make_affine(int rows, int cols, std::vector<double> matrix, Vec offset) {
  if (rows < 1 || cols < 1) fail(ErrorCode::InvalidArgument, "affine map needs a nonempty matrix");
  if (matrix.size() != static_cast<std::size_t>(rows * cols))
    fail(ErrorCode::InvalidArgument, "affine matrix has the wrong number of entries");
  if (offset.empty()) offset.assign(static_cast<std::size_t>(rows), 0.0);
  if (offset.size() != static_cast<std::size_t>(rows))
    fail(ErrorCode::InvalidArgument, "affine offset length must equal the number of rows");
  for (double v : matrix)
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "affine matrix entries must be finite");
  const Eigen::Map<const Matrix> A(matrix.data(), rows, cols);
  const Eigen::JacobiSVD<Matrix> svd(A);
  const double opnorm = svd.singularValues()(0);
  std::optional<double> lip;
  if (opnorm > 0.0) lip = opnorm;
  return wrap(mapkind::Affine{rows, cols, std::move(matrix), std::move(offset)}, cols, rows, lip);
}

MapDescriptor make_identity(int dim) {
  std::vector<double> m(static_cast<std::size_t>(dim * dim), 0.0);
  for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i * dim + i)] = 1.0;
  return make_affine(dim, dim, std::move(m), {});
}

MapDescriptor make_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return make_affine(2, 2, {c, -s, s, c}, {});
}

MapDescriptor make_diag(const Vec& values) {
  const int n = static_cast<int>(values.size());
  require(n >= 1, "diag needs at least one value");
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = values[static_cast<std::size_t>(i)];
  return make_affine(n, n, std::move(m), {});
}

MapDescriptor make_sum(std::vector<MapDescriptor> terms) {
  require(!terms.empty(), "sum needs at least one term");
  std::optional<double> lip = 0.0;
  for (const auto& t : terms) {
    if (t.dim_in() != terms.front().dim_in() || t.dim_out() != terms.front().dim_out())
      fail(ErrorCode::InvalidArgument, "sum terms have different dimensions");
    if (lip && t.lip_upper())
      *lip += *t.lip_upper();
    else
      lip.reset();
  }
  if (lip && !(*lip > 0.0)) lip.reset();
  const int din = terms.front().dim_in(), dout = terms.front().dim_out();
  return wrap(mapkind::Sum{std::move(terms)}, din, dout, lip);
}

MapDescriptor make_compose(const MapDescriptor& outer, const MapDescriptor& inner) {
  if (outer.dim_in() != inner.dim_out())
    fail(ErrorCode::InvalidArgument, "composition: inner output dimension does not match outer input");
  std::optional<double> lip;
  if (outer.lip_upper() && inner.lip_upper()) lip = *outer.lip_upper() * *inner.lip_upper();
  return wrap(mapkind::Compose{outer, inner}, inner.dim_in(), outer.dim_out(), lip);
}

MapDescriptor make_shear(const MapDescriptor& f, bool plus, bool inverted) {
  const int d = f.dim_in() + f.dim_out();
  std::optional<double> lip;
  if (f.lip_upper()) lip = 1.0 + *f.lip_upper();
  return wrap(mapkind::Shear{f, plus, inverted}, d, d, lip);
}

MapDescriptor make_extension(PointCloud anchors, PointCloud values, double L, ExtensionMode mode) {
  if (anchors.empty()) fail(ErrorCode::InvalidArgument, "extension needs at least one anchor");
  if (anchors.size() != values.size()) fail(ErrorCode::InvalidArgument, "extension needs one value per anchor");
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorCode::InvalidArgument, "extension constant L must be positive");
  const int din = anchors.dim(), dout = values.dim();
  const double lip = std::sqrt(static_cast<double>(dout)) * L;
  return wrap(mapkind::Extension{std::move(anchors), std::move(values), L, mode}, din, dout, lip);
}

MapDescriptor make_rescaled(const MapDescriptor& base, double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) fail(ErrorCode::InvalidArgument, "rescaling factor n must be >= 1");
  return wrap(mapkind::Rescaled{base, n}, base.dim_in(), base.dim_out(), base.lip_upper());
}

MapDescriptor make_expr_map(const std::string& src, int dim_in) {
  if (dim_in < 1 || dim_in > 9) fail(ErrorCode::InvalidArgument, "expression maps take 1 to 9 inputs");
  ExprPtr e = parse_expr(src);
  const int used = max_variable(*e);
  if (used > dim_in)
    fail(ErrorCode::InvalidArgument, "unbound variable x" + std::to_string(used) + " for dim_in " +
                                         std::to_string(dim_in));
  // Pair sampling on the unit ball; a lower bound on the true constant.
  Rng rng(kDefaultSeed);
  double lip = 0.0;
  Vec a(static_cast<std::size_t>(dim_in)), b(a.size());
  for (int it = 0; it < 4096; ++it) {
    for (;;) {
      for (auto& v : a) v = rng.uniform(-1.0, 1.0);
      if (norm(a) <= 1.0) break;
    }
    for (;;) {
      for (auto& v : b) v = rng.uniform(-1.0, 1.0);
      if (norm(b) <= 1.0) break;
    }
    const double d = dist(a, b);
    if (d == 0.0) continue;
    try {
      lip = std::max(lip, std::abs(eval_expr(*e, a) - eval_expr(*e, b)) / d);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Domain) throw;
    }
  }
  std::optional<double> l;
  if (lip > 0.0) l = lip;
  return wrap(mapkind::ExprMap{e, src}, dim_in, 1, l);
}

MapDescriptor make_embed_first(int n, int m) {
  std::vector<double> mat(static_cast<std::size_t>((n + m) * n), 0.0);
  for (int i = 0; i < n; ++i) mat[static_cast<std::size_t>(i * n + i)] = 1.0;
  return make_affine(n + m, n, std::move(mat), {});
}

MapDescriptor make_project_second(int n, int m) {
  std::vector<double> mat(static_cast<std::size_t>(m * (n + m)), 0.0);
  for (int i = 0; i < m; ++i) mat[static_cast<std::size_t>(i * (n + m) + n + i)] = 1.0;
  return make_affine(m, n + m, std::move(mat), {});
}

namespace {

json cloud_to_json(const PointCloud& c) {
  json a = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) a.push_back(c.point(i));
  return a;
}

PointCloud cloud_from_json(const json& j, const std::string& path, int dim) {
  if (!j.is_array() || j.empty()) jsonu::schema_error(path, "expected a nonempty array of points");
  if (dim < 0) {
    if (!j[0].is_array()) jsonu::schema_error(jsonu::index(path, 0), "expected an array of numbers");
    dim = static_cast<int>(j[0].size());
  }
  if (dim < 1) jsonu::schema_error(jsonu::index(path, 0), "points must have positive dimension");
  PointCloud c(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = jsonu::as_numbers(j[i], jsonu::index(path, i));
    if (static_cast<int>(v.size()) != dim) jsonu::schema_error(jsonu::index(path, i), "wrong point dimension");
    c.push_back(v);
  }
  return c;
}

struct ToJson {
  json operator()(const mapkind::Builtin& b) const { return {{"kind", b.name}, {"params", b.params}}; }
  json operator()(const mapkind::Affine& a) const {
    json rows = json::array();
    for (int r = 0; r < a.rows; ++r)
      rows.push_back(std::vector<double>(a.matrix.begin() + r * a.cols, a.matrix.begin() + (r + 1) * a.cols));
    return {{"kind", "affine"}, {"params", {{"matrix", rows}, {"offset", a.offset}}}};
  }
  json operator()(const mapkind::Sum& s) const {
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back(map_to_json(t));
    return {{"kind", "sum"}, {"params", {{"terms", terms}}}};
  }
  json operator()(const mapkind::Compose& c) const {
    return {{"kind", "compose"}, {"params", {{"outer", map_to_json(c.outer)}, {"inner", map_to_json(c.inner)}}}};
  }
  json operator()(const mapkind::Shear& s) const {
    std::string kind = s.plus ? "shear_plus" : "shear_minus";
    if (s.inverted) kind += "_inv";
    return {{"kind", kind}, {"params", {{"f", map_to_json(s.f)}}}};
  }
  json operator()(const mapkind::Extension& e) const {
    return {{"kind", "extension"},
            {"params",
             {{"anchors", cloud_to_json(e.anchors)},
              {"values", cloud_to_json(e.values)},
              {"L", e.L},
              {"mode", to_string(e.mode)}}}};
  }
  json operator()(const mapkind::Rescaled& r) const {
    return {{"kind", "rescaled"}, {"params", {{"base", map_to_json(r.base)}, {"n", r.n}}}};
  }
  json operator()(const mapkind::ExprMap&) const { return json::object(); }
};

}  // namespace

json map_to_json(const MapDescriptor& f) {
  const MapNode& n = f.node();
  json j;
  if (const auto* e = std::get_if<mapkind::ExprMap>(&n.body))
    j = {{"kind", "expr"}, {"src", e->src}, {"dim_in", n.dim_in}};
  else
    j = std::visit(ToJson{}, n.body);
  if (n.inverse) j["inverse"] = map_to_json(MapDescriptor(n.inverse));
  if (n.lip) j["lip_upper"] = *n.lip;
  return j;
}

MapDescriptor map_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  if (!j.is_object()) schema_error(path, "expected an object");
  const std::string kind = string(j, path, "kind");
  if (kind == "expr") {
    expect_object(j, path, {"kind", "src", "dim_in", "inverse", "lip_upper"});
  } else {
    expect_object(j, path, {"kind", "params", "inverse", "lip_upper"});
  }
  const json params = j.contains("params") ? j.at("params") : json::object();
  const std::string pp = child(path, "params");
  std::optional<MapDescriptor> f;

  if (kind == "expr") {
    f = make_expr_map(string(j, path, "src"), static_cast<int>(integer_or(j, path, "dim_in", 1)));
  } else if (kind == "identity") {
    expect_object(params, pp, {"dim"});
    f = make_identity(static_cast<int>(integer_or(params, pp, "dim", 2)));
  } else if (kind == "rotation") {
    expect_object(params, pp, {"angle"});
    f = make_rotation(number(params, pp, "angle"));
  } else if (kind == "diag") {
    expect_object(params, pp, {"values"});
    f = make_diag(as_numbers(field(params, pp, "values"), child(pp, "values")));
  } else if (kind == "affine") {
    expect_object(params, pp, {"matrix", "offset"});
    const json& m = field(params, pp, "matrix");
    const std::string mp = child(pp, "matrix");
    if (!m.is_array() || m.empty()) schema_error(mp, "expected a nonempty array of rows");
    std::vector<double> flat;
    std::size_t cols = 0;
    for (std::size_t r = 0; r < m.size(); ++r) {
      const auto row = as_numbers(m[r], index(mp, r));
      if (r == 0) cols = row.size();
      if (row.size() != cols || cols == 0) schema_error(index(mp, r), "rows must have equal positive length");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    Vec offset;
    if (params.contains("offset")) offset = as_numbers(params.at("offset"), child(pp, "offset"));
    f = make_affine(static_cast<int>(m.size()), static_cast<int>(cols), std::move(flat), std::move(offset));
  } else if (kind == "sum") {
    expect_object(params, pp, {"terms"});
    const json& t = field(params, pp, "terms");
    if (!t.is_array() || t.empty()) schema_error(child(pp, "terms"), "expected a nonempty array of maps");
    std::vector<MapDescriptor> terms;
    for (std::size_t i = 0; i < t.size(); ++i) terms.push_back(map_from_json(t[i], index(child(pp, "terms"), i)));
    f = make_sum(std::move(terms));
  } else if (kind == "compose") {
    expect_object(params, pp, {"outer", "inner"});
    f = make_compose(map_from_json(field(params, pp, "outer"), child(pp, "outer")),
                     map_from_json(field(params, pp, "inner"), child(pp, "inner")));
  } else if (kind == "shear_plus" || kind == "shear_minus" || kind == "shear_plus_inv" || kind == "shear_minus_inv") {
    expect_object(params, pp, {"f"});
    const bool plus = kind.rfind("shear_plus", 0) == 0;
    const bool inv = kind.size() > 4 && kind.compare(kind.size() - 4, 4, "_inv") == 0;
    f = make_shear(map_from_json(field(params, pp, "f"), child(pp, "f")), plus, inv);
  } else if (kind == "extension") {
    expect_object(params, pp, {"anchors", "values", "L", "mode"});
    PointCloud anchors = cloud_from_json(field(params, pp, "anchors"), child(pp, "anchors"), -1);
    PointCloud values = cloud_from_json(field(params, pp, "values"), child(pp, "values"), -1);
    f = make_extension(std::move(anchors), std::move(values), number(params, pp, "L"),
                       parse_extension_mode(string_or(params, pp, "mode", "inf")));
  } else if (kind == "rescaled") {
    expect_object(params, pp, {"base", "n"});
    f = make_rescaled(map_from_json(field(params, pp, "base"), child(pp, "base")), number(params, pp, "n"));
  } else {
    static const char* const kBuiltins[] = {"zigzag", "perturb_sin", "perturb_sin_inv", "radial_quad",
                                            "radial_quad_inv", "blowup", "blowup_inv"};
    bool known = false;
    for (const char* b : kBuiltins) known = known || kind == b;
    if (!known) schema_error(child(path, "kind"), "unknown map kind '" + kind + "'");
    try {
      f = make_builtin(kind, params);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Schema) {
        // builtin_info reports paths relative to the params object
        const std::string msg = e.what();
        fail(ErrorCode::Schema, pp + msg.substr(std::string("$.params").size()));
      }
      throw;
    }
  }
  if (j.contains("lip_upper")) f = f->with_lip_upper(as_number(j.at("lip_upper"), child(path, "lip_upper")));
  if (j.contains("inverse")) f = f->with_inverse(map_from_json(j.at("inverse"), child(path, "inverse")));
  return *f;
}

}  // namespace germlab
