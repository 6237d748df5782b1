#pragma once

#include "toricjk/poly.hpp"
#include "toricjk/weights.hpp"

namespace toricjk {

// Invariant pushforward along the circle generated by e1 for a torus acting
// linearly on an odd-dimensional sphere. Each entry of `ws` contributes the
// factor <w, xi + z e1>^mult to the denominator of the contour integrand
//
//     x(xi + z e1) / prod_nu <w_nu, xi + z e1>^{n_nu}
//
// and the contour encloses all poles.

/// Sum over all poles, via total_residue. Requires <w, e1> != 0 for every
/// occupied entry and no two occupied weights negative multiples of each
/// other. The result is e1-shift invariant (checked).
MultiPoly sphere_pushforward(const WeightSystem& ws, const MultiPoly& x, const IntegerVector& e1);

/// Same integral for positively colinear weights, computed as the single
/// residue at z = -<w, xi>/<w, e1> by recentering and reading off one
/// coefficient. Used as an independent check of sphere_pushforward.
MultiPoly colinear_pushforward(const WeightSystem& ws, const MultiPoly& x, const IntegerVector& e1);

}  // namespace toricjk
