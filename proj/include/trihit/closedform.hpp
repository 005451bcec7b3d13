#pragma once
#include "trihit/engine.hpp"
#include "trihit/lattice.hpp"

namespace trihit {

enum class ClosedFormKind {
    needle,
    santalo_equilateral,
    rectangle_acute,
    rectangle_obtuse,
    ellipse,
    half_disc,
};

// Which rectangle corollary applies: acute when every angle is <= pi/2,
// obtuse otherwise.  Right triangles satisfy both (tested to coincide).
ClosedFormKind classify_rectangle(const TriangleLattice& lat);

// Markov's needle probability p(1) evaluated exactly as displayed.
double markov_p1(double ell, const TriangleLattice& lat);

// Needle of length ell (works on every lattice; F = 0 kills the obtuse
// correction terms).
HitDistribution needle_distribution(double ell, const TriangleLattice& lat, bool force = false);

// Needle on the equilateral lattice R_{a,a,a}; requires ell <= sqrt(3) a / 2.
HitDistribution santalo_equilateral(double ell, double a);

// Rectangle g x h; dispatches between the acute/right and obtuse corollaries.
HitDistribution rectangle_distribution(double g, double h, const TriangleLattice& lat,
                                       bool force = false);
// The two corollary branches, exposed for the boundary-consistency check.
HitDistribution rectangle_acute_distribution(double g, double h, const TriangleLattice& lat,
                                             bool force = false);
HitDistribution rectangle_obtuse_distribution(double g, double h, const TriangleLattice& lat,
                                              bool force = false);

// Ellipse with full axis lengths g >= h; I(x) by quadrature of the
// width-product integrand, u = 2 g E(mu) with E by AGM.
HitDistribution ellipse_distribution(double g, double h, const TriangleLattice& lat,
                                     double abs_tol = 1e-10, bool force = false);

// Half disc of radius r; the closed form needs an acute or right lattice
// (obtuse lattices are served by the generic engine).
HitDistribution half_disc_distribution(double r, const TriangleLattice& lat, bool force = false);

}  // namespace trihit
