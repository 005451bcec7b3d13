#include "trihit/elliptic.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace trihit {

double elliptic_E(double mu) {
    assert(mu >= 0.0 && mu <= 1.0);
    if (mu >= 1.0) return 1.0;  // AGM breaks down at mu = 1; E(1) = 1 exactly

    // E = K * (1 - sum 2^{n-1} c_n^2),  K = pi / (2 agm(1, sqrt(1 - mu^2)))
    double an = 1.0;
    double bn = std::sqrt(1.0 - mu * mu);
    double cn = mu;
    double csum = 0.5 * cn * cn;
    double pow2 = 0.5;  // 2^{n-1}
    while (std::fabs(an - bn) > 1e-15 * an) {
        cn = 0.5 * (an - bn);
        double am = 0.5 * (an + bn);
        bn = std::sqrt(an * bn);
        an = am;
        pow2 *= 2.0;
        csum += pow2 * cn * cn;
    }
    double K = std::numbers::pi / (an + bn);  // agm limit is (an + bn) / 2
    return K * (1.0 - csum);
}

}  // namespace trihit
