#include "trihit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trihit/errors.hpp"

namespace trihit {

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

// Numerically stable Heron (Kahan): needs x >= y >= z.
double triangle_area(double x, double y, double z) {
    double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    return t <= 0.0 ? 0.0 : 0.25 * std::sqrt(t);
}

}  // namespace

TriangleLattice lattice_from_sides(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw DegenerateTriangle("lattice sides must be positive, got (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ", " + std::to_string(c) + ")");

    double x = a, y = b, z = c;  // sort descending for the stable Heron form
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    if (!(z - (x - y) > 0.0))
        throw DegenerateTriangle("triangle inequality violated for sides (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
    double area = triangle_area(x, y, z);
    if (area <= 1e-14 * x * x)
        throw DegenerateTriangle("triangle with sides (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ", " + std::to_string(c) +
                                 ") is numerically flat");

    TriangleLattice lat;
    lat.a = a;
    lat.b = b;
    lat.c = c;
    lat.alpha = clamped_acos((b * b + c * c - a * a) / (2.0 * b * c));
    lat.beta = clamped_acos((a * a + c * c - b * b) / (2.0 * a * c));
    lat.gamma = clamped_acos((a * a + b * b - c * c) / (2.0 * a * b));
    lat.Q = 2.0 * area;
    lat.h_a = lat.Q / a;
    lat.h_b = lat.Q / b;
    lat.h_c = lat.Q / c;
    lat.rho = lat.Q / (a + b + c);
    return lat;
}

std::array<Vec2, 3> cell_vertices(const TriangleLattice& lat, const CellIndex& idx) {
    Vec2 shift = static_cast<double>(idx.k_col) * lat.v_col() +
                 static_cast<double>(idx.k_row) * lat.v_row();
    Vec2 A{0.0, 0.0};
    Vec2 B = lat.v_col();
    Vec2 C = lat.v_row();
    if (idx.parity == Parity::lower) return {shift + A, shift + B, shift + C};
    // upper triangle: point reflection of the lower one through the midpoint
    // of the parallelogram diagonal B--C (counter-clockwise order kept)
    return {shift + B, shift + B + C, shift + C};
}

void cells_near_into(const TriangleLattice& lat, Vec2 center, double radius,
                     std::vector<CellIndex>& out) {
    // shear coordinates: p = row * v_row + col * v_col, so
    //   row = y / h_c   (v_row has height h_c = b sin alpha)
    //   col = (x - y * cot_alpha) / c
    double cot_alpha = lat.v_row().x / lat.v_row().y;
    double row_lo = (center.y - radius) / lat.h_c;
    double row_hi = (center.y + radius) / lat.h_c;
    double ucoord = center.x - center.y * cot_alpha;
    double du = radius * (1.0 + std::fabs(cot_alpha));
    long r0 = static_cast<long>(std::floor(row_lo)) - 1;
    long r1 = static_cast<long>(std::floor(row_hi)) + 1;
    long c0 = static_cast<long>(std::floor((ucoord - du) / lat.c)) - 1;
    long c1 = static_cast<long>(std::floor((ucoord + du) / lat.c)) + 1;
    for (long r = r0; r <= r1; ++r)
        for (long k = c0; k <= c1; ++k) {
            out.push_back({r, k, Parity::lower});
            out.push_back({r, k, Parity::upper});
        }
}

std::vector<CellIndex> cells_near(const TriangleLattice& lat, Vec2 center, double radius) {
    std::vector<CellIndex> out;
    cells_near_into(lat, center, radius, out);
    return out;
}

}  // namespace trihit
