#include "trihit/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "trihit/errors.hpp"
#include "trihit/quadrature.hpp"

namespace trihit {

const char* method_name(Method m) {
    switch (m) {
        case Method::theorem1: return "theorem1";
        case Method::symmetric_fastpath: return "symmetric_fastpath";
        case Method::closed_form: return "closed_form";
        case Method::simulation: return "simulation";
    }
    return "?";
}

double c_star(const ConvexBody& body, const TriangleLattice& lat, double phi) {
    // Smallest homothet of the reference cell containing the body rotated by
    // phi.  The cell's outward normals point along pi/2 + alpha (side b),
    // pi/2 - beta (side a) and -pi/2 (side c); making all three sides tangent
    // and eliminating the translation gives
    //   c*(phi) = s(pi/2 + alpha - phi) csc(alpha)
    //           + s(pi/2 - beta - phi) csc(beta)
    //           + s(-pi/2 - phi) (cot(alpha) + cot(beta)),
    // where s(theta - phi) is the rotated body's support in direction theta.
    const double sa = std::sin(lat.alpha), sb = std::sin(lat.beta);
    const double cots = std::cos(lat.alpha) / sa + std::cos(lat.beta) / sb;
    const double half_pi = 0.5 * pi;
    return body.support(half_pi + lat.alpha - phi) / sa +
           body.support(half_pi - lat.beta - phi) / sb +
           body.support(-half_pi - phi) * cots;
}

FitResult check_fit(const ConvexBody& body, const TriangleLattice& lat) {
    constexpr int N_fit = 4096;
    const double h = two_pi / N_fit;

    double cmax = 0.0, wmax = 0.0;
    for (int k = 0; k < N_fit; ++k) {
        const double phi = k * h;
        cmax = std::max(cmax, c_star(body, lat, phi));
        if (2 * k < N_fit) wmax = std::max(wmax, body.width(phi));  // w is pi-periodic
    }

    // s is R-Lipschitz in phi with R = max boundary distance from O, so the
    // sampled maxima miss at most L*h/2.
    const double R = body.max_radius;
    const double coeff_sum = 1.0 / std::sin(lat.alpha) + 1.0 / std::sin(lat.beta) +
                             std::cos(lat.alpha) / std::sin(lat.alpha) +
                             std::cos(lat.beta) / std::sin(lat.beta);
    const double Lc = R * coeff_sum;

    FitResult res;
    res.margin = lat.c - cmax;
    res.fast_accept = (wmax + R * h) <= 2.0 * lat.rho;  // width Lipschitz const is 2R
    res.certified = res.fast_accept || res.margin < 0.0 || res.margin - 0.5 * Lc * h >= 0.0;
    return res;
}

namespace {

// breakpoints of phi -> g(phi) g(phi+x) on [0, period] given the kinks of g
std::vector<double> panel_cuts(const std::vector<double>& kinks, double x, double period) {
    std::vector<double> cuts;
    cuts.reserve(2 * kinks.size());
    for (double k : kinks) {
        double k1 = std::fmod(k, period);
        if (k1 < 0) k1 += period;
        double k2 = std::fmod(k - x, period);
        if (k2 < 0) k2 += period;
        cuts.push_back(k1);
        cuts.push_back(k2);
    }
    return cuts;
}

double I_integral(const ConvexBody& body, double x, double abs_tol, double* err) {
    QuadResult r = integrate([&](double phi) { return body.width(phi) * body.width(phi + x); },
                             0.0, pi, panel_cuts(body.kink_angles, x, pi), abs_tol);
    *err = std::max(*err, r.error);
    return r.value;
}

double J_integral(const ConvexBody& body, double x, double abs_tol, double* err) {
    QuadResult r = integrate([&](double phi) { return body.support(phi) * body.support(phi + x); },
                             0.0, two_pi, panel_cuts(body.kink_angles, x, two_pi), abs_tol);
    *err = std::max(*err, r.error);
    return r.value;
}

}  // namespace

AutocorrelationIntegrals autocorrelation(const ConvexBody& body, const TriangleLattice& lat,
                                         double abs_tol) {
    if (!(abs_tol > 0.0)) throw Error("autocorrelation: abs_tol must be positive");
    AutocorrelationIntegrals out;
    out.I0 = I_integral(body, 0.0, abs_tol, &out.tol);
    out.Ialpha = I_integral(body, lat.alpha, abs_tol, &out.tol);
    out.Ibeta = I_integral(body, lat.beta, abs_tol, &out.tol);
    out.Igamma = I_integral(body, lat.gamma, abs_tol, &out.tol);
    out.J0 = J_integral(body, 0.0, abs_tol, &out.tol);
    out.Jalpha = J_integral(body, lat.alpha, abs_tol, &out.tol);
    out.Jbeta = J_integral(body, lat.beta, abs_tol, &out.tol);
    out.Jgamma = J_integral(body, lat.gamma, abs_tol, &out.tol);
    return out;
}

HitDistribution hit_probabilities(const ConvexBody& body, const TriangleLattice& lat,
                                  double abs_tol, bool force, EnginePath path) {
    if (!(abs_tol > 0.0)) throw Error("hit_probabilities: abs_tol must be positive");
    const FitResult fit = check_fit(body, lat);
    if (fit.margin < 0.0 && !force)
        throw BodyTooLarge(fit.margin,
                           "body does not satisfy the fit condition (margin " +
                               std::to_string(fit.margin) + "); pass force to extrapolate");

    const bool symmetric =
        path == EnginePath::symmetric ||
        (path == EnginePath::automatic && body.centrally_symmetric);
    assert(!(path == EnginePath::symmetric && !body.centrally_symmetric));

    // Normalize to unit max side so the absolute quadrature tolerance acts
    // like a relative one; the probabilities are scale invariant.
    const double S = lat.max_side();
    const TriangleLattice L = lattice_from_sides(lat.a / S, lat.b / S, lat.c / S);
    const ConvexBody B = scaled(body, 1.0 / S);

    double qerr = 0.0;
    double I0, Ia, Ib, Ig, J0, Ja, Jb, Jg;
    I0 = I_integral(B, 0.0, abs_tol, &qerr);
    Ia = I_integral(B, L.alpha, abs_tol, &qerr);
    Ib = I_integral(B, L.beta, abs_tol, &qerr);
    Ig = I_integral(B, L.gamma, abs_tol, &qerr);
    if (symmetric) {  // w = 2s makes J(x) = I(x)/2; no support-function quadrature needed
        J0 = 0.5 * I0;
        Ja = 0.5 * Ia;
        Jb = 0.5 * Ib;
        Jg = 0.5 * Ig;
    } else {
        J0 = J_integral(B, 0.0, abs_tol, &qerr);
        Ja = J_integral(B, L.alpha, abs_tol, &qerr);
        Jb = J_integral(B, L.beta, abs_tol, &qerr);
        Jg = J_integral(B, L.gamma, abs_tol, &qerr);
    }

    const double Q = L.Q, Q2 = Q * Q;
    const double U = (L.a + L.b + L.c) * B.u / (pi * Q);
    const double Lt = (L.a * L.a + L.b * L.b + L.c * L.c) * J0 / (2.0 * pi * Q2);
    const double M = (L.b * L.c * Ia + L.c * L.a * Ib + L.a * L.b * Ig) / (pi * Q2);
    const double N = (L.b * L.c * Ja + L.c * L.a * Jb + L.a * L.b * Jg) / (pi * Q2);
    const double FQ = B.F / Q;

    HitDistribution out;
    out.p[0] = 1.0 - U + Lt + M - N;
    out.p[1] = U - 3.0 * Lt - 2.0 * M + 3.0 * N;
    out.p[2] = 3.0 * Lt + M - 3.0 * N;
    out.p[3] = N - Lt - FQ;
    out.p[4] = 0.0;
    out.p[5] = FQ;
    out.expectation = 1.0 + U + 2.0 * FQ;
    out.method = symmetric ? Method::symmetric_fastpath : Method::theorem1;
    out.condition_margin = fit.margin;
    out.extrapolated = fit.margin < 0.0;
    return out;
}

}  // namespace trihit
