#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "core/expr.hpp"
#include "core/geometry.hpp"

namespace germlab {

enum class ExtensionMode { Inf, Sup };

std::string to_string(ExtensionMode m);
ExtensionMode parse_extension_mode(const std::string& s);

struct MapNode;

/// Evaluable map R^n -> R^m built from a closed catalog and combinators.
/// Descriptors are immutable and cheap to copy.
class MapDescriptor {
 public:
  explicit MapDescriptor(std::shared_ptr<const MapNode> node);

  int dim_in() const;
  int dim_out() const;

  /// Throws InvalidArgument on a dimension mismatch.
  Vec operator()(VecView x) const;

  std::optional<double> lip_upper() const;

  /// Declared inverse if present, otherwise one derived structurally
  /// (affine, shears, compositions, rescalings, catalog pairs), or empty.
  std::optional<MapDescriptor> inverse() const;

  MapDescriptor with_inverse(const MapDescriptor& inv) const;
  MapDescriptor with_lip_upper(double lip) const;

  const MapNode& node() const { return *node_; }

 private:
  std::shared_ptr<const MapNode> node_;
};

namespace mapkind {

/// Catalog entries evaluated by name: zigzag, perturb_sin, perturb_sin_inv,
/// radial_quad, radial_quad_inv, blowup, blowup_inv.
struct Builtin {
  std::string name;
  nlohmann::json params;
};

/// x -> A x + b, A stored row-major.
struct Affine {
  int rows = 0;
  int cols = 0;
  std::vector<double> matrix;
  Vec offset;
};

struct Sum {
  std::vector<MapDescriptor> terms;
};

/// outer(inner(x)).
struct Compose {
  MapDescriptor outer;
  MapDescriptor inner;
};

/// Graph shears on R^{n+m}. plus:  (x, y) -> (x, y + f(x)) for f: R^n -> R^m;
/// minus: (x, y) -> (x + f(y), y) for f: R^m -> R^n. `inverted` flips the sign.
struct Shear {
  MapDescriptor f;
  bool plus = true;
  bool inverted = false;
};

/// Componentwise McShane/Whitney extension of anchor values.
struct Extension {
  PointCloud anchors;
  PointCloud values;
  double L = 0.0;
  ExtensionMode mode = ExtensionMode::Inf;
};

/// x -> n * base(x / n).
struct Rescaled {
  MapDescriptor base;
  double n = 1.0;
};

struct ExprMap {
  ExprPtr expr;
  std::string src;
};

}  // namespace mapkind

struct MapNode {
  using Body = std::variant<mapkind::Builtin, mapkind::Affine, mapkind::Sum, mapkind::Compose, mapkind::Shear,
                            mapkind::Extension, mapkind::Rescaled, mapkind::ExprMap>;
  Body body;
  int dim_in = 0;
  int dim_out = 0;
  std::optional<double> lip;
  std::shared_ptr<const MapNode> inverse;
};

// Constructors. All validate dimensions and parameters.
MapDescriptor make_builtin(const std::string& name, const nlohmann::json& params);
MapDescriptor make_affine(int rows, int cols, std::vector<double> matrix, Vec offset);
MapDescriptor make_identity(int dim);
MapDescriptor make_rotation(double angle);
MapDescriptor make_diag(const Vec& values);
MapDescriptor make_sum(std::vector<MapDescriptor> terms);
MapDescriptor make_compose(const MapDescriptor& outer, const MapDescriptor& inner);
MapDescriptor make_shear(const MapDescriptor& f, bool plus, bool inverted);
MapDescriptor make_extension(PointCloud anchors, PointCloud values, double L, ExtensionMode mode);
MapDescriptor make_rescaled(const MapDescriptor& base, double n);
MapDescriptor make_expr_map(const std::string& src, int dim_in);

/// x -> (x, 0) from R^n into R^{n+m}, and (x, y) -> y from R^{n+m} onto R^m.
MapDescriptor make_embed_first(int n, int m);
MapDescriptor make_project_second(int n, int m);

nlohmann::json map_to_json(const MapDescriptor& f);
MapDescriptor map_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace germlab
