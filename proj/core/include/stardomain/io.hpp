#pragma once

#include "stardomain/approximation.hpp"
#include "stardomain/geometry.hpp"
#include "stardomain/mesh.hpp"
#include "stardomain/spectra.hpp"
#include "stardomain/transforms.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace stardomain {

using Json = nlohmann::json;

/// {"kind":"polygon","vertices":[[x,y],...]}, {"kind":"radial","angles":[...],
/// "radii":[...]} or {"kind":"ball","radius":r}. Throws InvalidInput on
/// malformed input and InvalidDomain on bad geometry.
StarDomain domain_from_json(const Json& j);
Json domain_to_json(const StarDomain& domain);
StarDomain load_domain(const std::string& path);

Json metrics_to_json(const DomainMetrics& metrics);

/// {"vertices":[[x,y],...],"triangles":[[a,b,c],...]}
Json mesh_to_json(const TriangleMesh& mesh);
TriangleMesh mesh_from_json(const Json& j);

/// {"empirical","bound","pairs","witness":[[x],[y]],"pass"}
Json lipschitz_to_json(const LipschitzReport& report);
Json chord_angle_to_json(const ChordAngleReport& report);

/// {"pf":{"0","1"},"hodge":{"0","1","2"},"bounds":[...],"ordering_pass"} plus
/// mesh and tolerance details.
Json spectrum_to_json(const SpectrumReport& report);
Json bounds_to_json(const std::vector<BoundCheck>& bounds);

/// Header "eps,C0,C1,delta0,delta1,lam_k_j..."; the first row is the
/// reference domain with eps = 0.
void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study);

/// Header "angle,s_base,s_eps,diff" for `rays` equally spaced directions.
void write_approximation_csv(std::ostream& out, const SmoothApproximation& approx, std::size_t rays);

/// Shortest round-trip decimal for a double, as used in CSV output.
std::string format_double(double value);

} // namespace stardomain
