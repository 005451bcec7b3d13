#include "trihit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trihit/errors.hpp"

namespace trihit {

namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK dqk15 constants).
// Odd-index nodes plus the center form the embedded 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
};

}  // namespace

QuadResult gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv1[7], fv2[7];
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += wgk[j] * fsum;
        resabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double epmach = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * epmach))
        err = std::max(err, 50.0 * epmach * resabs);
    return {resk * half, err};
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     std::vector<double> breakpoints, double abs_tol, int max_panels) {
    if (!(hi > lo)) return {0.0, 0.0};

    std::vector<double> cuts;
    cuts.push_back(lo);
    std::sort(breakpoints.begin(), breakpoints.end());
    const double span_tol = 1e-13 * (hi - lo);
    for (double b : breakpoints)
        if (b > lo + span_tol && b < hi - span_tol && b > cuts.back() + span_tol)
            cuts.push_back(b);
    cuts.push_back(hi);

    std::vector<Panel> panels;
    panels.reserve(cuts.size() + 16);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult r = gk15(f, cuts[i], cuts[i + 1]);
        panels.push_back({cuts[i], cuts[i + 1], r.value, r.error});
    }

    auto total_error = [&] {
        double e = 0.0;
        for (const Panel& p : panels) e += p.error;
        return e;
    };

    double err = total_error();
    while (err > abs_tol) {
        if (static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureFailure("adaptive quadrature exhausted " + std::to_string(max_panels) +
                                    " panels; achieved error " + std::to_string(err) +
                                    " vs target " + std::to_string(abs_tol));
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi))
            throw QuadratureFailure("adaptive quadrature stalled: panel [" + std::to_string(p.lo) +
                                    ", " + std::to_string(p.hi) + "] cannot be split further");
        QuadResult l = gk15(f, p.lo, mid);
        QuadResult r = gk15(f, mid, p.hi);
        panels[worst] = {p.lo, mid, l.value, l.error};
        panels.push_back({mid, p.hi, r.value, r.error});
        err = total_error();
    }

    double value = 0.0;
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
    for (const Panel& p : panels) value += p.value;
    return {value, err};
}

}  // namespace trihit
