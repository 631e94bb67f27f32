#pragma once

namespace diriop::tol {

// All quantities below are closed-form in double precision; the thresholds
// sit well above rounding noise and below any meaningful geometric gap.
inline constexpr double degenerate   = 1e-10;  // |det| floor, relative to coefficient scale
inline constexpr double map_eq       = 1e-10;  // coefficient match on canonical representatives
inline constexpr double classify     = 1e-9;   // |a| vs cos(theta/2) in the trichotomy
inline constexpr double fixed_point  = 1e-10;  // fixed-point residual and set matching
inline constexpr double automorphism = 1e-10;  // image-circle deviation from the unit circle
inline constexpr double sup_slack    = 1e-10;  // self-map test: sup norm <= 1 + sup_slack
inline constexpr double line_image   = 1e-10;  // ||c| - |d|| floor for a circular image
inline constexpr double pole         = 1e-10;  // |cz + d| floor when evaluating
inline constexpr double boundary     = 1e-14;  // kernel points must satisfy |w| < 1 - boundary
inline constexpr double ratio_clamp  = 1e-12;  // allowed negative rounding residue of norm ratios

}  // namespace diriop::tol
