#pragma once

#include <string>

#include "diriop/mobius.hpp"

namespace diriop {

/// Parses a textual map specification into a MobiusMap. Accepted forms:
///   "id"
///   "rot:<theta>"                      rotation by theta radians
///   "hyp:t=<t>"                        (z + t)/(1 + tz), t real in (-1, 1)
///   "auto:a=<complex>,theta=<real>"    canonical automorphism form
///   "a=<c>,b=<c>,c=<c>,d=<c>"          named coefficients
///   "<c>,<c>,<c>,<c>"                  bare coefficients a,b,c,d
/// Complex literals are "x", "yi", "x+yi", "i", "-i" with optional exponents;
/// radians only, locale-free. Failures throw SpecParseError with a 0-based
/// position into the input.
MobiusMapd parse_map_spec(const std::string& spec);

/// Renders the canonical coefficients in a form parse_map_spec accepts.
std::string format_map_spec(const MobiusMapd& m);

}  // namespace diriop
