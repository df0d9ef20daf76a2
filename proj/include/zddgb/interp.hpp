// Point sets in {0,1}^n as ZDDs: zeros, Boolean interpolation, normal forms
// against a variety and the lex Groebner basis of a vanishing ideal.
#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "zddgb/boolpoly.hpp"

namespace zddgb {

/// Point v <-> the set {i : v_i = 1}.
using PointSet = Zdd;

/// Partial Boolean function: value 0 on z, value 1 on o.
struct PartialFn {
  PointSet z;
  PointSet o;
};

PointSet point_set(const BoolRing& ring, const std::vector<Point>& points);
std::vector<Point> points_of(const BoolRing& ring, PointSet s);
/// The full cube {0,1}^n.
PointSet full_cube(const BoolRing& ring);

PointSet zeros(const BoolPoly& p, PointSet s);
PointSet ones(const BoolPoly& p, PointSet s);

PartialFn add_partial(const PartialFn& f, const PartialFn& g);

BoolPoly interpolate_simple(const BoolRing& ring, const PartialFn& b);
/// Smallest interpolant under the lex extension of lex to polynomials.
BoolPoly interpolate_smallest_lex(const BoolRing& ring, const PartialFn& b);

/// Reduced lex normal form of f modulo I(P).
BoolPoly nf_by_interpolate(const BoolPoly& f, PointSet points);

/// Divisor-closed set of lex standard monomials of I(P).
Zdd standard_monomials(const BoolRing& ring, PointSet points, std::uint64_t seed,
                       unsigned max_iterations = 64);
/// Members of s with no proper divisor in s.
Zdd minimal_elements(Zdd s);
/// All divisors of members of s.
Zdd divisor_closure(Zdd s);
Zdd leading_monomials_variety(const BoolRing& ring, PointSet points, std::uint64_t seed = 1);
/// Reduced lex Groebner basis (Boolean part) of I(P), descending leads.
std::vector<BoolPoly> points_gb(const BoolRing& ring, PointSet points, std::uint64_t seed = 1);

/// One 0/1 string of length n per line; blank lines and '#' comments skipped.
std::vector<Point> read_points(std::istream& in, std::size_t n);
/// "bits value" per line, value 0 or 1.
PartialFn read_partial_fn(const BoolRing& ring, std::istream& in);

}  // namespace zddgb
