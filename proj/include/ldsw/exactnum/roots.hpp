#pragma once

#include <vector>

#include "ldsw/exactnum/interval.hpp"
#include "ldsw/exactnum/poly.hpp"

namespace ldsw {

struct IsolatedRoot {
  Box box;
  bool real = false;  // box symmetric about R (or a real point): the root is real
};

// p square-free with degree >= 1. Boxes pairwise disjoint, each holding exactly
// one root; real roots get boxes symmetric about the real axis, rational roots
// with denominator dividing lead(p) get point boxes.
std::vector<IsolatedRoot> isolate_roots(const IntPoly& p);

// Box of side <= width inside r.box still holding the same root.
IsolatedRoot refine_root(const IntPoly& p, const IsolatedRoot& r, const Rational& width);

CInterval eval_poly(const IntPoly& p, const CInterval& z);
CInterval eval_poly(const QPoly& p, const CInterval& z);
Interval eval_poly(const QPoly& p, const Interval& x);

}  // namespace ldsw
