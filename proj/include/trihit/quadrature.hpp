#pragma once
#include <functional>
#include <vector>

namespace trihit {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// One Gauss-Kronrod 7/15 pass over [lo, hi] with the QUADPACK error estimate.
QuadResult gk15(const std::function<double(double)>& f, double lo, double hi);

// Adaptive panel quadrature.  Initial panels are cut at the supplied
// breakpoints (integrand kinks); afterwards the worst panel is bisected until
// the summed error estimate drops below abs_tol.  Throws QuadratureFailure if
// the panel budget runs out first.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     std::vector<double> breakpoints, double abs_tol, int max_panels = 2000);

}  // namespace trihit
