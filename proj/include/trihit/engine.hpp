#pragma once
#include <array>

#include "trihit/body.hpp"
#include "trihit/lattice.hpp"

namespace trihit {

// Angular autocorrelation integrals of the width and support functions:
//   I(x) = integral_0^pi   w(phi) w(phi+x) dphi
//   J(x) = integral_0^2pi  s(phi) s(phi+x) dphi
// evaluated at x = 0 and the three lattice angles.  These are the only
// body-dependent inputs of the probability formulas.
struct AutocorrelationIntegrals {
    double I0 = 0, Ialpha = 0, Ibeta = 0, Igamma = 0;
    double J0 = 0, Jalpha = 0, Jbeta = 0, Jgamma = 0;
    double tol = 0;  // worst achieved absolute error estimate
};

enum class Method { theorem1, symmetric_fastpath, closed_form, simulation };
const char* method_name(Method m);

struct HitDistribution {
    std::array<double, 6> p{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};  // p[i-1] = p(i)
    double expectation = 1.0;
    Method method = Method::theorem1;
    double condition_margin = 0.0;  // c - max over phi of c*(phi)
    bool extrapolated = false;      // computed past a failed fit check (--force)
};

struct FitResult {
    double margin = 0.0;      // c - max of c* over the sampled grid
    bool certified = false;   // the sign of margin is rigorous, not just sampled
    bool fast_accept = false; // max width <= 2 rho shortcut fired
};

// Side length of the smallest triangle similar to the lattice cell that
// circumscribes the body rotated so that its support argument is phi.
double c_star(const ConvexBody& body, const TriangleLattice& lat, double phi);

// Fit condition ("condition (max)"): the circumscribed triangle must fit in a
// cell at every rotation.  Samples c* on a 4096-point grid; certification
// combines the sampled max with a Lipschitz safety term, plus the sufficient
// fast-accept test max w <= 2 rho.
FitResult check_fit(const ConvexBody& body, const TriangleLattice& lat);

AutocorrelationIntegrals autocorrelation(const ConvexBody& body, const TriangleLattice& lat,
                                         double abs_tol);

enum class EnginePath { automatic, generic, symmetric };

// Full probability computation: p(1)..p(4) from the autocorrelation
// integrals, p(5) = 0, p(6) = F/Q, expectation from the closed formula.
// Centrally symmetric bodies take the w = 2s fast path (J = I/2, only
// I-integrals evaluated) unless path forces otherwise.  Throws BodyTooLarge
// when the fit margin is negative and force is not set; forced results are
// flagged extrapolated.
HitDistribution hit_probabilities(const ConvexBody& body, const TriangleLattice& lat,
                                  double abs_tol = 1e-10, bool force = false,
                                  EnginePath path = EnginePath::automatic);

}  // namespace trihit
