#pragma once
#include <functional>
#include <string>
#include <vector>

#include "trihit/geometry.hpp"

namespace trihit {

// Plane convex body described by its support function relative to a
// body-fixed reference point O: s(phi) is the signed distance from O to the
// supporting line perpendicular to the direction phi, i.e.
// s(phi) = max over body points p of p.(cos phi, sin phi).
// The support map support_point(phi) returns a boundary point achieving that
// maximum.  Width w(phi) = s(phi) + s(phi + pi).
struct ConvexBody {
    std::function<double(double)> support;
    std::function<Vec2(double)> support_point;
    double u = 0.0;                    // perimeter
    double F = 0.0;                    // area (0 allowed: needle, point)
    double max_radius = 0.0;           // max distance from O to the boundary
    std::vector<double> kink_angles;   // sorted angles in [0, 2pi) where s is non-smooth
    bool centrally_symmetric = false;  // w(phi) == 2 s(phi) for every phi
    std::string name = "body";

    double width(double phi) const { return support(phi) + support(phi + pi); }
};

// Segment of length ell, O at the midpoint, initially along the x-axis.
ConvexBody make_needle(double ell);

// Axis-aligned g x h rectangle, O at the center.
ConvexBody make_rectangle(double g, double h);

// Ellipse with full axis lengths g >= h, O at the center, major axis along x.
ConvexBody make_ellipse(double g, double h);

// Half disc of radius r: flat side on the x-axis from (-r,0) to (r,0), arc in
// y <= 0, O at the flat-side midpoint.  This makes the support function
//   s = r cos phi on [0,pi/2),  -r cos phi on [pi/2,pi),  r on [pi,2pi).
ConvexBody make_half_disc(double r);

// Disc of radius r, O at the center.
ConvexBody make_disc(double r);

// Convex hull of the given points (collinear points merged, interior points
// absorbed), O at the centroid.  Needs at least 2 points.
ConvexBody make_polygon(std::vector<Vec2> vertices);

// Reads polygon vertices from a text file: one "x y" pair per line,
// '#' starts a comment, blank lines ignored.
ConvexBody load_polygon(const std::string& path);

// The same body magnified by factor > 0 (support, perimeter ~ factor,
// area ~ factor^2).
ConvexBody scaled(const ConvexBody& body, double factor);

// Rigid placement for the simulator: rotate the body by phi about O, then
// translate O to t.  Keeps a pointer to the body; the caller owns lifetimes.
struct PlacedBody {
    const ConvexBody* body = nullptr;
    double phi = 0.0;
    Vec2 t;

    double support(double theta) const {
        return body->support(theta - phi) + dot(t, unit_dir(theta));
    }
    Vec2 support_point(double theta) const {
        return rotated(body->support_point(theta - phi), phi) + t;
    }
};

PlacedBody rotate_translate(const ConvexBody& body, double phi, Vec2 t);

}  // namespace trihit
