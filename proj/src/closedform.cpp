#include "trihit/closedform.hpp"

#include <cmath>
#include <string>

#include "trihit/elliptic.hpp"
#include "trihit/errors.hpp"
#include "trihit/quadrature.hpp"

namespace trihit {

namespace {

// shared fit guard: closed forms are only valid under the fit condition
FitResult guard_fit(const ConvexBody& body, const TriangleLattice& lat, bool force) {
    FitResult fit = check_fit(body, lat);
    if (fit.margin < 0.0 && !force)
        throw BodyTooLarge(fit.margin, body.name + " does not satisfy the fit condition (margin " +
                                           std::to_string(fit.margin) +
                                           "); pass force to extrapolate");
    return fit;
}

HitDistribution finish(HitDistribution d, const FitResult& fit) {
    d.method = Method::closed_form;
    d.condition_margin = fit.margin;
    d.extrapolated = fit.margin < 0.0;
    return d;
}

}  // namespace

ClosedFormKind classify_rectangle(const TriangleLattice& lat) {
    return lat.max_angle() <= 0.5 * pi ? ClosedFormKind::rectangle_acute
                                       : ClosedFormKind::rectangle_obtuse;
}

double markov_p1(double ell, const TriangleLattice& lat) {
    const double Q = lat.Q;
    const double angsq = lat.alpha * lat.a * lat.a + lat.beta * lat.b * lat.b +
                         lat.gamma * lat.c * lat.c;
    return 1.0 + ell * ell * angsq / (2.0 * pi * Q * Q) -
           ell * (4.0 * lat.a + 4.0 * lat.b + 4.0 * lat.c - 3.0 * ell) / (2.0 * pi * Q);
}

HitDistribution needle_distribution(double ell, const TriangleLattice& lat, bool force) {
    const ConvexBody body = make_needle(ell);
    const FitResult fit = guard_fit(body, lat, force);

    const double Q = lat.Q, Q2 = Q * Q, l2 = ell * ell;
    const double sum2 = lat.a * lat.a + lat.b * lat.b + lat.c * lat.c;
    const double angsq = lat.alpha * lat.a * lat.a + lat.beta * lat.b * lat.b +
                         lat.gamma * lat.c * lat.c;
    const double U = 2.0 * (lat.a + lat.b + lat.c) * ell / (pi * Q);
    const double W = angsq * l2 / (2.0 * pi * Q2);
    const double S = sum2 * l2 / (4.0 * Q2);
    const double T = 3.0 * l2 / (2.0 * pi * Q);

    HitDistribution d;
    d.p = {1.0 - U + W + T, U - S - W - T, 2.0 * S - W - T, T - S + W, 0.0, 0.0};
    d.expectation = 1.0 + U;
    return finish(d, fit);
}

HitDistribution santalo_equilateral(double ell, double a) {
    if (!(a > 0.0)) throw DegenerateTriangle("equilateral side must be positive");
    if (ell < 0.0) throw NegativeLength("needle length must be non-negative");
    const double limit = 0.5 * std::sqrt(3.0) * a;
    if (ell > limit)
        throw NeedleTooLong("needle length " + std::to_string(ell) +
                            " exceeds the equilateral bound sqrt(3) a / 2 = " +
                            std::to_string(limit));

    const TriangleLattice lat = lattice_from_sides(a, a, a);
    const FitResult fit = check_fit(make_needle(ell), lat);

    const double t = ell / a;
    const double s3pi = std::sqrt(3.0) / pi;
    HitDistribution d;
    d.p[0] = 1.0 - 4.0 * s3pi * t + (s3pi + 2.0 / 3.0) * t * t;
    d.p[1] = 4.0 * s3pi * t - (s3pi + 5.0 / 3.0) * t * t;
    d.p[2] = (4.0 / 3.0 - s3pi) * t * t;
    d.p[3] = (s3pi - 1.0 / 3.0) * t * t;
    d.p[4] = 0.0;
    d.p[5] = 0.0;
    d.expectation = 1.0 + 3.0 * a * 2.0 * ell / (pi * lat.Q);
    return finish(d, fit);
}

namespace {

struct RectTerms {
    double U, W, S, T, FQ, F, Q, Q2;
};

RectTerms rect_terms(double g, double h, const TriangleLattice& lat) {
    RectTerms t;
    t.Q = lat.Q;
    t.Q2 = lat.Q * lat.Q;
    const double gh2 = g * g + h * h;
    const double angsq = lat.alpha * lat.a * lat.a + lat.beta * lat.b * lat.b +
                         lat.gamma * lat.c * lat.c;
    const double sum2 = lat.a * lat.a + lat.b * lat.b + lat.c * lat.c;
    t.U = (lat.a + lat.b + lat.c) * 2.0 * (g + h) / (pi * t.Q);
    t.W = angsq * gh2 / (2.0 * pi * t.Q2);
    t.S = sum2 * gh2 / (4.0 * t.Q2);
    t.T = 3.0 * gh2 / (2.0 * pi * t.Q);
    t.F = g * h;
    t.FQ = t.F / t.Q;
    return t;
}

}  // namespace

HitDistribution rectangle_acute_distribution(double g, double h, const TriangleLattice& lat,
                                             bool force) {
    // 1e-12 slack: lattices built from a Pythagorean side triple land a hair
    // past pi/2 in floating point and must still take the acute branch
    if (lat.max_angle() > 0.5 * pi + 1e-12)
        throw ObtuseLatticeUnsupported("acute rectangle corollary needs all angles <= pi/2");
    const ConvexBody body = make_rectangle(g, h);
    const FitResult fit = guard_fit(body, lat, force);

    const RectTerms t = rect_terms(g, h, lat);
    const double sum2 = lat.a * lat.a + lat.b * lat.b + lat.c * lat.c;
    const double AF = sum2 * t.F / (pi * t.Q2);

    HitDistribution d;
    d.p[0] = 1.0 - t.U + t.W + t.T + AF + t.FQ;
    d.p[1] = t.U - t.S - t.W - t.T - 2.0 * AF - t.FQ;
    d.p[2] = 2.0 * t.S - t.W - t.T + AF - t.FQ;
    d.p[3] = t.T - t.S + t.W;
    d.p[4] = 0.0;
    d.p[5] = t.FQ;
    d.expectation = 1.0 + t.U + 2.0 * t.FQ;
    return finish(d, fit);
}

HitDistribution rectangle_obtuse_distribution(double g, double h, const TriangleLattice& lat,
                                              bool force) {
    // relabel so the obtuse (or right) angle plays the role of alpha
    double sides[3] = {lat.a, lat.b, lat.c};
    double angles[3] = {lat.alpha, lat.beta, lat.gamma};
    int im = 0;
    for (int i = 1; i < 3; ++i)
        if (angles[i] > angles[im]) im = i;
    if (angles[im] < 0.5 * pi - 1e-12)
        throw Error("obtuse rectangle corollary needs an angle >= pi/2");
    const double alpha = angles[im];
    const double sa = sides[im];
    const double sb = sides[(im + 1) % 3], sc = sides[(im + 2) % 3];

    const ConvexBody body = make_rectangle(g, h);
    const FitResult fit = guard_fit(body, lat, force);

    const RectTerms t = rect_terms(g, h, lat);
    const double a2 = sa * sa, bc2 = sb * sb + sc * sc;
    const double piQ2 = pi * t.Q2;
    const double corr = 2.0 * alpha * t.F / (pi * t.Q);

    HitDistribution d;
    d.p[0] = 1.0 - t.U + t.W + t.T + 2.0 * a2 * t.F / piQ2 + 2.0 * t.FQ - corr;
    d.p[1] = t.U - t.S - t.W - t.T - (3.0 * a2 + bc2) * t.F / piQ2 - 2.0 * t.FQ + corr;
    d.p[2] = 2.0 * t.S - t.W - t.T + 2.0 * bc2 * t.F / piQ2 - 2.0 * t.FQ + corr;
    d.p[3] = t.T - t.S + t.W - (bc2 - a2) * t.F / piQ2 + t.FQ - corr;
    d.p[4] = 0.0;
    d.p[5] = t.FQ;
    d.expectation = 1.0 + t.U + 2.0 * t.FQ;
    return finish(d, fit);
}

HitDistribution rectangle_distribution(double g, double h, const TriangleLattice& lat,
                                       bool force) {
    return classify_rectangle(lat) == ClosedFormKind::rectangle_acute
               ? rectangle_acute_distribution(g, h, lat, force)
               : rectangle_obtuse_distribution(g, h, lat, force);
}

HitDistribution ellipse_distribution(double g, double h, const TriangleLattice& lat,
                                     double abs_tol, bool force) {
    const ConvexBody body = make_ellipse(g, h);  // validates g >= h >= 0
    const FitResult fit = guard_fit(body, lat, force);

    // normalized copy keeps the absolute quadrature tolerance meaningful
    const double S = lat.max_side();
    const TriangleLattice L = lattice_from_sides(lat.a / S, lat.b / S, lat.c / S);
    const double gn = g / S, hn = h / S;
    const double mu = gn > 0.0 ? std::sqrt(std::max(0.0, 1.0 - (hn / gn) * (hn / gn))) : 0.0;
    const double mu2 = mu * mu;

    auto I_of = [&](double x) {
        if (gn == 0.0) return 0.0;
        std::vector<double> cuts;
        if (mu == 1.0) {  // the degenerate (needle) integrand |cos phi cos(phi+x)|
            cuts.push_back(0.5 * pi);
            double k = std::fmod(0.5 * pi - x, pi);
            if (k < 0) k += pi;
            cuts.push_back(k);
        }
        QuadResult r = integrate(
            [&](double phi) {
                const double sp = std::sin(phi), sq = std::sin(phi + x);
                return gn * gn *
                       std::sqrt(std::max(0.0, (1.0 - mu2 * sp * sp) * (1.0 - mu2 * sq * sq)));
            },
            0.0, pi, cuts, abs_tol);
        return r.value;
    };

    const double I0 = I_of(0.0), Ia = I_of(L.alpha), Ib = I_of(L.beta), Ig = I_of(L.gamma);
    const double Q = L.Q, Q2 = Q * Q;
    const double sum2 = L.a * L.a + L.b * L.b + L.c * L.c;
    const double un = 2.0 * gn * elliptic_E(mu);
    const double U = (L.a + L.b + L.c) * un / (pi * Q);
    const double IL = sum2 * I0 / (4.0 * pi * Q2);
    const double M2 = (L.b * L.c * Ia + L.c * L.a * Ib + L.a * L.b * Ig) / (2.0 * pi * Q2);
    const double FQ = 0.25 * pi * gn * hn / Q;

    HitDistribution d;
    d.p[0] = 1.0 - U + IL + M2;
    d.p[1] = U - 3.0 * IL - M2;
    d.p[2] = 3.0 * IL - M2;
    d.p[3] = M2 - IL - FQ;
    d.p[4] = 0.0;
    d.p[5] = FQ;
    d.expectation = 1.0 + U + 2.0 * FQ;
    return finish(d, fit);
}

HitDistribution half_disc_distribution(double r, const TriangleLattice& lat, bool force) {
    if (lat.max_angle() > 0.5 * pi + 1e-12)
        throw ObtuseLatticeUnsupported(
            "half-disc closed form needs an acute or right lattice; use the generic engine");
    const ConvexBody body = make_half_disc(r);
    const FitResult fit = guard_fit(body, lat, force);

    const double Q = lat.Q, Q2 = Q * Q, r2 = r * r;
    const double a = lat.a, b = lat.b, c = lat.c;
    const double al = lat.alpha, be = lat.beta, ga = lat.gamma;
    const double sum2 = a * a + b * b + c * c;
    const double prodsum = a * b + b * c + c * a;
    const double angsq = al * a * a + be * b * b + ga * c * c;
    const double angprod = al * b * c + be * c * a + ga * a * b;
    const double u = (pi + 2.0) * r;
    const double F = 0.5 * pi * r2;
    const double U = (a + b + c) * u / (pi * Q);

    HitDistribution d;
    d.p[0] = 1.0 - U + sum2 * r2 / Q2 + 4.0 * prodsum * r2 / (pi * Q2) -
             angsq * r2 / (2.0 * pi * Q2) + angprod * r2 / (pi * Q2) - 9.0 * r2 / (2.0 * pi * Q);
    d.p[1] = U - 13.0 * sum2 * r2 / (4.0 * Q2) - (8.0 - pi) * prodsum * r2 / (pi * Q2) +
             5.0 * angsq * r2 / (2.0 * pi * Q2) - 3.0 * angprod * r2 / (pi * Q2) +
             33.0 * r2 / (2.0 * pi * Q);
    d.p[2] = 7.0 * sum2 * r2 / (2.0 * Q2) + (4.0 - 2.0 * pi) * prodsum * r2 / (pi * Q2) -
             7.0 * angsq * r2 / (2.0 * pi * Q2) + 3.0 * angprod * r2 / (pi * Q2) -
             39.0 * r2 / (2.0 * pi * Q);
    d.p[3] = prodsum * r2 / Q2 - 5.0 * sum2 * r2 / (4.0 * Q2) +
             3.0 * angsq * r2 / (2.0 * pi * Q2) - angprod * r2 / (pi * Q2) +
             15.0 * r2 / (2.0 * pi * Q) - F / Q;
    d.p[4] = 0.0;
    d.p[5] = F / Q;
    d.expectation = 1.0 + U + 2.0 * F / Q;
    return finish(d, fit);
}

}  // namespace trihit
