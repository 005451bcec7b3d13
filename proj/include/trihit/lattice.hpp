#pragma once
#include <array>
#include <cstdint>
#include <tuple>
#include <vector>

#include "trihit/geometry.hpp"

namespace trihit {

enum class Parity : std::uint8_t { lower, upper };

// Index of one triangle of the lattice.  Each fundamental parallelogram holds
// a lower triangle (congruent to the reference triangle) and an upper one
// (its point reflection).
struct CellIndex {
    long k_row = 0;  // steps along the row vector (side-b direction)
    long k_col = 0;  // steps along the column vector (side-c direction)
    Parity parity = Parity::lower;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex& l, const CellIndex& r) {
        return std::tie(l.k_row, l.k_col, l.parity) <=> std::tie(r.k_row, r.k_col, r.parity);
    }
};

// Lattice of congruent triangles with sides a, b, c and opposite angles
// alpha, beta, gamma.  The reference triangle sits with side c on the x-axis:
// vertices (0,0), (c,0), (b cos alpha, b sin alpha).  Translating it by
// integer combinations of v_col = (c, 0) and v_row = (b cos alpha, b sin alpha)
// and adding the point-reflected upper triangles tiles the plane; the union of
// the two triangles of one cell is the fundamental parallelogram of area Q.
struct TriangleLattice {
    double a = 0, b = 0, c = 0;
    double alpha = 0, beta = 0, gamma = 0;
    double Q = 0;                    // area of the fundamental parallelogram
    double h_a = 0, h_b = 0, h_c = 0;  // altitudes of the triangle
    double rho = 0;                  // incircle radius, Q / (a + b + c)

    Vec2 v_col() const { return {c, 0.0}; }
    Vec2 v_row() const { return {b * std::cos(alpha), b * std::sin(alpha)}; }
    double max_side() const { return std::max(a, std::max(b, c)); }
    double max_angle() const { return std::max(alpha, std::max(beta, gamma)); }
};

// Builds the lattice from the three sides; angles come from the law of
// cosines.  Throws DegenerateTriangle for non-positive sides, violated
// triangle inequality, or area <= 1e-14 * max(a,b,c)^2.
TriangleLattice lattice_from_sides(double a, double b, double c);

// Vertices of the indexed triangle (counter-clockwise).
std::array<Vec2, 3> cell_vertices(const TriangleLattice& lat, const CellIndex& idx);

// Every cell whose triangle can intersect the closed disc around center; a
// conservative superset obtained from a bounding box in parallelogram (shear)
// coordinates, expanded by one cell in each direction.
std::vector<CellIndex> cells_near(const TriangleLattice& lat, Vec2 center, double radius);

// Same, appending into a caller-owned buffer (hot path of the simulator).
void cells_near_into(const TriangleLattice& lat, Vec2 center, double radius,
                     std::vector<CellIndex>& out);

}  // namespace trihit
