#pragma once

#include <cstddef>
#include <string>

#include "qwr/code.hpp"

namespace qwr::fixtures {

/// Toric code on the L x L square cellulation of the torus: qubits on
/// edges (horizontal edges first), X-stabilizers on vertices, Z-stabilizers
/// on faces.
CssCode toric(std::size_t L);

/// The [[7,1,3]] Steane code.
CssCode steane();

/// Toric code whose cellulation has one n-gon face, obtained by merging a
/// row of (n-2)/2 squares. `n` must be even and at least 4; L defaults to
/// the smallest torus that keeps the polygon from wrapping (at least 4).
/// meta["polygon_face"] names the Z-stabilizer of the polygon.
CssCode fig1(std::size_t n, std::size_t L = 0);

/// Toric code on a sphere made of two L x L grids glued along their
/// boundary, with the front face (0,0) and the back face (L-1,L-1) removed.
/// With `joint_stabilizer` the product of Z around both punctures is added
/// as one more (unreasonable) Z-stabilizer.
CssCode punctured_sphere(std::size_t L, bool joint_stabilizer = false);

/// Dispatch by name: toric | steane | fig1 | punctured-sphere.
CssCode by_name(const std::string &name, std::size_t size, bool joint_stabilizer = false);

}  // namespace qwr::fixtures
