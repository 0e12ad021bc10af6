#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace germlab {

using Vec = std::vector<double>;
using VecView = std::span<const double>;

inline double dot(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(VecView a) { return std::sqrt(dot(a, a)); }

inline double dist(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec scaled(VecView a, double s) {
  Vec out(a.begin(), a.end());
  for (double& v : out) v *= s;
  return out;
}

inline Vec sub(VecView a, VecView b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec add(VecView a, VecView b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// x / |x|; the caller guarantees x != 0.
inline Vec normalized(VecView a) {
  const double n = norm(a);
  if (!(n > 0.0)) fail(ErrorCode::Domain, "cannot normalize a zero vector");
  return scaled(a, 1.0 / n);
}

inline bool lex_less(VecView a, VecView b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

/// Flat row-major storage for a set of points of common dimension.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }

  VecView operator[](std::size_t i) const {
    return VecView(coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
  }

  void push_back(VecView p) {
    if (static_cast<int>(p.size()) != dim_) fail(ErrorCode::InvalidArgument, "point dimension mismatch");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  void append(const PointCloud& other) {
    if (other.empty()) return;
    if (other.dim_ != dim_) fail(ErrorCode::InvalidArgument, "point dimension mismatch");
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  }

  Vec point(std::size_t i) const {
    auto v = (*this)[i];
    return Vec(v.begin(), v.end());
  }

  const std::vector<double>& raw() const { return coords_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace germlab
