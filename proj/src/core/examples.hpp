#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/direction.hpp"
#include "core/germ.hpp"
#include "core/map.hpp"
#include "core/schedule.hpp"
#include "core/sequence_gen.hpp"
#include "core/zigzag.hpp"

namespace germlab {

inline constexpr int kDefaultPerShell = 16;

// Exact oracles. Samplers place points radially stratified within each shell
// (with a germ-level offset, so dyadic shells see scaled copies of one
// pattern) and angularly along a seeded Kronecker sequence.
GermOracle ray_oracle(const Vec& dir, int per_shell, std::uint64_t seed);
GermOracle line_oracle(const Vec& dir, int per_shell, std::uint64_t seed);
/// Span of two vectors (orthonormalized) in R^n.
GermOracle plane_oracle(const Vec& b1, const Vec& b2, int per_shell, std::uint64_t seed);
/// Solid planar sector {r (cos t, sin t) : theta1 <= t <= theta2}.
GermOracle sector_oracle(double theta1, double theta2, int per_shell, std::uint64_t seed);
/// Union of the rays through the representatives of d.
GermOracle cone_oracle(const DirectionSet& d, int per_shell, std::uint64_t seed);
/// Graph of a zigzag profile; `transpose` swaps the coordinates.
GermOracle zigzag_oracle(const ZigzagProfile& f, bool transpose, int per_shell, std::uint64_t seed);

/// Oracle for phi(A): nearest_B(y) = phi(nearest_A(phi^{-1}(y))), which bounds
/// the true distance from above. Shells of B are filled from A-shells widened
/// by the factors: |x| in [inner/expand, outer*contract] must contain every
/// preimage of the B-shell.
GermOracle image_oracle(const GermOracle& a, const MapDescriptor& phi, const MapDescriptor& phi_inv, double expand,
                        double contract);

/// Bounds max |phi(x)|/|x| and max |x|/|phi(x)| over seeded points of the
/// punctured unit ball, inflated by 10%.
std::pair<double, double> radial_distortion(const MapDescriptor& phi, std::uint64_t seed);

/// Points {4^{-j} dir} inside the schedule: populated on every closed dyadic
/// shell but with relative gaps 1/2 at odd shells.
SampledGerm sparse_ray_sample(const Vec& dir, const ScaleSchedule& s);

struct ZigzagGerm {
  ZigzagProfile profile;
  SampledGerm sample;
  GermOracle oracle;
  MapDescriptor map;  ///< x -> f(|x|)
};

/// ssp = false: corners ratio^k (similar triangles). ssp = true: corners
/// 1/(k+1), whose consecutive ratio tends to 1.
ZigzagGerm gen_zigzag(double c, double ratio, bool ssp, int depth, const ScaleSchedule& s, int per_shell,
                      std::uint64_t seed);

/// (X, Y) -> (XY, Y) pointwise.
SampledGerm gen_blowup_image(const SampledGerm& b);
MapDescriptor blowup_map();
/// max over points of |x| - c y^2 (<= 0 inside the region).
double blowup_region_excess(const SampledGerm& g, double c);

/// Generated germ: an exact (or image) oracle together with its sample over
/// a schedule.
struct GeneratedGerm {
  GermOracle oracle;
  SampledGerm sample;
  nlohmann::json spec;
};

/// Generator documents:
///   {"kind":"ray"|"line","dir":[..]}
///   {"kind":"plane","basis":[[..],[..]]}
///   {"kind":"sector","theta1":..,"theta2":..}
///   {"kind":"cone_over","dirset":{..}}
///   {"kind":"union","parts":[..]}
///   {"kind":"zigzag","c":..,"ratio":..,"ssp":bool,"depth":..,"transpose":bool}
///   {"kind":"sparse_ray","dir":[..]}
///   {"kind":"blowup","of":{..}}
///   {"kind":"image","of":{..},"map":{..}}
///   {"kind":"sampled","germ":{SampledGerm}}
GeneratedGerm generate_germ(const nlohmann::json& spec, const ScaleSchedule& s, int per_shell, std::uint64_t seed);

/// A SampledGerm document (has "points") or a generator document (has "kind").
GeneratedGerm germ_from_document(const nlohmann::json& doc, const ScaleSchedule& s, int per_shell,
                                 std::uint64_t seed);

}  // namespace germlab
