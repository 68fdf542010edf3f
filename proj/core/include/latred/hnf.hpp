#pragma once

#include "latred/numeric_types.hpp"

namespace latred {

/// Column-style Hermite normal form H = M * U of a nonsingular integer matrix.
///
/// H is lower triangular with a positive diagonal, and every entry left of
/// the diagonal is reduced into [0, H(i, i)). U is unimodular. Because H is
/// lower triangular, {z : 0 <= z_i < H(i, i)} is a complete residue system of
/// Z^n / M Z^n.
struct HermiteForm {
  IntegerMatrix h;
  IntegerMatrix u;
};

HermiteForm hermite_normal_form(const IntegerMatrix& m);

}  // namespace latred
