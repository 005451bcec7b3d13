#include "trihit/body.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "trihit/elliptic.hpp"
#include "trihit/errors.hpp"

namespace trihit {

namespace {

void require_nonnegative(double v, const char* what) {
    if (v < 0.0)
        throw NegativeLength(std::string(what) + " must be non-negative, got " + std::to_string(v));
}

// Monotone-chain convex hull, counter-clockwise, collinear points merged.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 l, Vec2 r) {
        return l.x < r.x || (l.x == r.x && l.y < r.y);
    });
    double span = 0.0;
    for (const Vec2& p : pts)
        span = std::max(span, std::max(std::fabs(p.x - pts[0].x), std::fabs(p.y - pts[0].y)));
    const double pt_tol = 1e-12 * std::max(span, 1e-300);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](Vec2 l, Vec2 r) {
                              return std::fabs(l.x - r.x) <= pt_tol && std::fabs(l.y - r.y) <= pt_tol;
                          }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;

    const double cross_tol = 1e-12 * span * span;  // treat as collinear below this
    std::vector<Vec2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= cross_tol) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= cross_tol) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point equals the first
    return hull;
}

}  // namespace

ConvexBody make_needle(double ell) {
    require_nonnegative(ell, "needle length");
    const double half = 0.5 * ell;
    ConvexBody body;
    body.support = [half](double phi) { return half * std::fabs(std::cos(phi)); };
    body.support_point = [half](double phi) {
        return Vec2{std::copysign(half, std::cos(phi)), 0.0};
    };
    body.u = 2.0 * ell;
    body.F = 0.0;
    body.max_radius = half;
    if (ell > 0.0) body.kink_angles = {0.5 * pi, 1.5 * pi};
    body.centrally_symmetric = true;
    body.name = "needle";
    return body;
}

ConvexBody make_rectangle(double g, double h) {
    require_nonnegative(g, "rectangle side g");
    require_nonnegative(h, "rectangle side h");
    const double gx = 0.5 * g, hy = 0.5 * h;
    ConvexBody body;
    body.support = [gx, hy](double phi) {
        return gx * std::fabs(std::cos(phi)) + hy * std::fabs(std::sin(phi));
    };
    body.support_point = [gx, hy](double phi) {
        return Vec2{std::copysign(gx, std::cos(phi)), std::copysign(hy, std::sin(phi))};
    };
    body.u = 2.0 * (g + h);
    body.F = g * h;
    body.max_radius = std::hypot(gx, hy);
    if (g > 0.0 && h > 0.0)
        body.kink_angles = {0.0, 0.5 * pi, pi, 1.5 * pi};
    else if (g > 0.0)
        body.kink_angles = {0.5 * pi, 1.5 * pi};
    else if (h > 0.0)
        body.kink_angles = {0.0, pi};
    body.centrally_symmetric = true;
    body.name = "rectangle";
    return body;
}

ConvexBody make_ellipse(double g, double h) {
    require_nonnegative(g, "ellipse axis g");
    require_nonnegative(h, "ellipse axis h");
    if (h > g)
        throw AxisOrder("ellipse axes must satisfy g >= h, got g=" + std::to_string(g) +
                        " h=" + std::to_string(h));
    const double A = 0.5 * g, B = 0.5 * h;  // semi-axes
    ConvexBody body;
    body.support = [A, B](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        return std::sqrt(A * A * c * c + B * B * s * s);
    };
    body.support_point = [A, B](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        const double sv = std::sqrt(A * A * c * c + B * B * s * s);
        if (sv < 1e-300) return Vec2{0.0, 0.0};  // degenerate direction along a zero axis
        return Vec2{A * A * c / sv, B * B * s / sv};
    };
    const double mu = g > 0.0 ? std::sqrt(std::max(0.0, 1.0 - (h / g) * (h / g))) : 0.0;
    body.u = 2.0 * g * elliptic_E(mu);
    body.F = 0.25 * pi * g * h;
    body.max_radius = A;
    if (h == 0.0 && g > 0.0) body.kink_angles = {0.5 * pi, 1.5 * pi};
    body.centrally_symmetric = true;
    body.name = "ellipse";
    return body;
}

ConvexBody make_half_disc(double r) {
    require_nonnegative(r, "half-disc radius");
    ConvexBody body;
    body.support = [r](double phi) {
        return std::sin(phi) > 0.0 ? r * std::fabs(std::cos(phi)) : r;
    };
    body.support_point = [r](double phi) {
        if (std::sin(phi) > 0.0) return Vec2{std::copysign(r, std::cos(phi)), 0.0};
        return Vec2{r * std::cos(phi), r * std::sin(phi)};
    };
    body.u = (pi + 2.0) * r;
    body.F = 0.5 * pi * r * r;
    body.max_radius = r;
    if (r > 0.0) body.kink_angles = {0.0, 0.5 * pi, pi};
    body.centrally_symmetric = (r == 0.0);
    body.name = "half_disc";
    return body;
}

ConvexBody make_disc(double r) {
    require_nonnegative(r, "disc radius");
    ConvexBody body;
    body.support = [r](double) { return r; };
    body.support_point = [r](double phi) { return Vec2{r * std::cos(phi), r * std::sin(phi)}; };
    body.u = two_pi * r;
    body.F = pi * r * r;
    body.max_radius = r;
    body.centrally_symmetric = true;
    body.name = "disc";
    return body;
}

ConvexBody make_polygon(std::vector<Vec2> vertices) {
    if (vertices.empty()) throw EmptyInput("polygon has no vertices");
    if (vertices.size() < 2) throw EmptyInput("polygon needs at least 2 vertices");

    std::vector<Vec2> hull = convex_hull(std::move(vertices));
    const size_t m = hull.size();

    // centroid: area centroid when the hull has area, vertex average otherwise
    double area2 = 0.0;
    for (size_t i = 0; i < m; ++i) area2 += cross(hull[i], hull[(i + 1) % m]);
    Vec2 centroid{0.0, 0.0};
    if (std::fabs(area2) > 1e-300) {
        for (size_t i = 0; i < m; ++i) {
            const Vec2 p = hull[i], q = hull[(i + 1) % m];
            const double w = cross(p, q);
            centroid = centroid + (w / (3.0 * area2)) * (p + q);
        }
    } else {
        for (const Vec2& p : hull) centroid = centroid + (1.0 / static_cast<double>(m)) * p;
    }
    for (Vec2& p : hull) p = p - centroid;

    ConvexBody body;
    body.F = 0.5 * std::fabs(area2);
    double radius = 0.0;
    for (const Vec2& p : hull) radius = std::max(radius, norm(p));
    body.max_radius = radius;

    if (m >= 2) {
        for (size_t i = 0; i < m; ++i) {
            const Vec2 e = hull[(i + 1) % m] - hull[i];
            body.u += norm(e);
            body.kink_angles.push_back(wrap_angle(std::atan2(e.y, e.x) - 0.5 * pi));
        }
        std::sort(body.kink_angles.begin(), body.kink_angles.end());
    }

    // centrally symmetric iff the vertex set equals its own point reflection
    const double sym_tol = 1e-9 * std::max(radius, 1e-300);
    bool symmetric = true;
    for (const Vec2& p : hull) {
        bool found = false;
        for (const Vec2& q : hull)
            if (norm(p + q) <= sym_tol) {
                found = true;
                break;
            }
        if (!found) {
            symmetric = false;
            break;
        }
    }
    body.centrally_symmetric = symmetric;

    body.support = [hull](double phi) {
        const Vec2 u = unit_dir(phi);
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec2& p : hull) best = std::max(best, dot(p, u));
        return best;
    };
    body.support_point = [hull](double phi) {
        const Vec2 u = unit_dir(phi);
        Vec2 arg = hull[0];
        double best = dot(arg, u);
        for (const Vec2& p : hull)
            if (dot(p, u) > best) {
                best = dot(p, u);
                arg = p;
            }
        return arg;
    };
    body.name = "polygon";
    return body;
}

ConvexBody load_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open polygon file: " + path);
    std::vector<Vec2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double x, y;
        if (ss >> x) {
            if (!(ss >> y))
                throw Error(path + ":" + std::to_string(lineno) + ": expected \"x y\" pair");
            pts.push_back({x, y});
        } else if (!std::all_of(line.begin(), line.end(),
                                [](unsigned char ch) { return std::isspace(ch); })) {
            throw Error(path + ":" + std::to_string(lineno) + ": expected \"x y\" pair");
        }
    }
    if (pts.empty()) throw EmptyInput("polygon file has no vertices: " + path);
    return make_polygon(std::move(pts));
}

ConvexBody scaled(const ConvexBody& body, double factor) {
    if (!(factor > 0.0))
        throw NegativeLength("scale factor must be positive, got " + std::to_string(factor));
    ConvexBody out;
    auto s = body.support;
    auto sp = body.support_point;
    out.support = [s, factor](double phi) { return factor * s(phi); };
    out.support_point = [sp, factor](double phi) { return factor * sp(phi); };
    out.u = factor * body.u;
    out.F = factor * factor * body.F;
    out.max_radius = factor * body.max_radius;
    out.kink_angles = body.kink_angles;
    out.centrally_symmetric = body.centrally_symmetric;
    out.name = body.name;
    return out;
}

PlacedBody rotate_translate(const ConvexBody& body, double phi, Vec2 t) {
    return PlacedBody{&body, phi, t};
}

}  // namespace trihit
