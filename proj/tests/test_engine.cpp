#include <doctest.h>

#include <cmath>

#include "trihit/engine.hpp"
#include "trihit/errors.hpp"

#include "testutil.hpp"

using namespace trihit;

namespace {

// Independent oracle for the circumscribed-triangle scale: fit the body
// rotated by psi into a homothet of the reference cell by solving the three
// tangency conditions directly from the cell's vertex coordinates.  Edges AB
// and CA pass through the origin, so only the BC offset scales.
double oracle_c_star(const ConvexBody& body, const TriangleLattice& lat, double psi) {
    auto tri = cell_vertices(lat, {0, 0, Parity::lower});
    Vec2 A = tri[0], B = tri[1], C = tri[2];
    auto placed = rotate_translate(body, psi, {0, 0});
    auto outward = [](Vec2 from, Vec2 to) {
        Vec2 e = to - from;
        return (1.0 / norm(e)) * Vec2{e.y, -e.x};  // outward for a CCW triangle
    };
    Vec2 nAB = outward(A, B), nBC = outward(B, C), nCA = outward(C, A);
    double sAB = placed.support(std::atan2(nAB.y, nAB.x));
    double sBC = placed.support(std::atan2(nBC.y, nBC.x));
    double sCA = placed.support(std::atan2(nCA.y, nCA.x));
    // translation t of the body with both origin edges tangent:
    //   dot(t, nAB) = -sAB,  dot(t, nCA) = -sCA
    double det = nAB.x * nCA.y - nAB.y * nCA.x;
    Vec2 t{(-sAB * nCA.y + sCA * nAB.y) / det, (-nAB.x * sCA + nCA.x * sAB) / det};
    // the BC side then fixes the homothety scale
    double sigma = (sBC + dot(t, nBC)) / dot(B, nBC);
    return sigma * lat.c;
}

void check_distribution_identities(const HitDistribution& d, const ConvexBody& body,
                                   const TriangleLattice& lat) {
    double sum = 0.0, ez = 0.0;
    for (int i = 0; i < 6; ++i) {
        sum += d.p[i];
        ez += (i + 1) * d.p[i];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
    CHECK(d.p[4] == 0.0);
    CHECK(std::fabs(d.p[5] - body.F / lat.Q) <= 1e-12);
    CHECK(std::fabs(ez - d.expectation) <= 1e-9);
    double formula = 1.0 + (lat.a + lat.b + lat.c) * body.u / (pi * lat.Q) + 2.0 * body.F / lat.Q;
    CHECK(std::fabs(d.expectation - formula) <= 1e-9);
}

}  // namespace

TEST_CASE("circumscribed-triangle scale matches the tangency oracle") {
    testutil::Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        auto lat = testutil::random_lattice(rng);
        const ConvexBody bodies[] = {
            make_disc(0.4 * lat.rho),
            make_needle(1.1 * lat.rho),
            make_ellipse(1.2 * lat.rho, 0.7 * lat.rho),
            make_rectangle(0.8 * lat.rho, 0.5 * lat.rho),
            make_half_disc(0.6 * lat.rho),                      // not symmetric
            testutil::random_polygon(rng, 0.7 * lat.rho),       // chiral in general
        };
        for (const auto& body : bodies)
            for (int k = 0; k < 48; ++k) {
                double psi = two_pi * k / 48.0 + 0.013;
                double mine = c_star(body, lat, psi);
                double oracle = oracle_c_star(body, lat, psi);
                CHECK(std::fabs(mine - oracle) <= 1e-10 * lat.c);
            }
    }
}

TEST_CASE("the incircle disc is the exact critical disc") {
    testutil::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        auto lat = testutil::random_lattice(rng);
        // a disc of radius r needs a triangle scaled by exactly r/rho
        double r = rng.in(0.2, 1.3) * lat.rho;
        CHECK(c_star(make_disc(r), lat, 0.77) ==
              doctest::Approx(lat.c * r / lat.rho).epsilon(1e-12));

        auto fit = check_fit(make_disc(lat.rho), lat);
        CHECK(std::fabs(fit.margin) <= 1e-10 * lat.max_side());
        auto fat = check_fit(make_disc(1.01 * lat.rho), lat);
        CHECK(fat.margin < 0.0);
        CHECK(fat.certified);
        auto slim = check_fit(make_disc(0.9 * lat.rho), lat);
        CHECK(slim.margin > 0.0);
        CHECK(slim.certified);
    }
}

TEST_CASE("fast accept is never more permissive than the certified check") {
    testutil::Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        auto lat = testutil::random_lattice(rng);
        int kind = rng.index(6);
        ConvexBody body;
        switch (kind) {  // deliberately straddling the critical size
            case 0: body = make_needle(rng.in(0.5, 4.0) * lat.rho); break;
            case 1: body = make_rectangle(rng.in(0.3, 2.5) * lat.rho, rng.in(0.2, 2.0) * lat.rho); break;
            case 2: {
                double g = rng.in(0.4, 3.0) * lat.rho;
                body = make_ellipse(g, rng.in(0.0, 1.0) * g);
                break;
            }
            case 3: body = make_half_disc(rng.in(0.3, 2.2) * lat.rho); break;
            case 4: body = make_disc(rng.in(0.3, 1.8) * lat.rho); break;
            default: body = testutil::random_polygon(rng, rng.in(0.4, 2.0) * lat.rho); break;
        }
        auto fit = check_fit(body, lat);
        if (fit.fast_accept) {
            CHECK(fit.margin >= 0.0);
            CHECK(fit.certified);
        }
        if (fit.margin < 0.0) CHECK_FALSE(fit.fast_accept);
    }
}

TEST_CASE("structural identities of the engine distribution") {
    testutil::Rng rng(2718);
    for (int trial = 0; trial < 24; ++trial) {
        auto lat = testutil::random_lattice(rng);
        auto body = testutil::random_fitting_body(rng, lat, rng.index(6));
        auto d = hit_probabilities(body, lat);
        check_distribution_identities(d, body, lat);
        CHECK_FALSE(d.extrapolated);
        CHECK(d.condition_margin > 0.0);
    }
}

TEST_CASE("the symmetric fast path agrees with the generic path") {
    testutil::Rng rng(1618);
    for (int trial = 0; trial < 8; ++trial) {
        auto lat = testutil::random_lattice(rng);
        auto body = testutil::random_fitting_body(rng, lat, rng.index(3));  // needle/rect/ellipse
        REQUIRE(body.centrally_symmetric);
        auto gen = hit_probabilities(body, lat, 1e-12, false, EnginePath::generic);
        auto sym = hit_probabilities(body, lat, 1e-12, false, EnginePath::symmetric);
        CHECK(gen.method == Method::theorem1);
        CHECK(sym.method == Method::symmetric_fastpath);
        for (int i = 0; i < 6; ++i) CHECK(std::fabs(gen.p[i] - sym.p[i]) <= 1e-8);
    }
    // the asymmetric half disc must not silently take the shortcut
    auto lat = lattice_from_sides(3, 4, 5);
    auto d = hit_probabilities(make_half_disc(0.3), lat);
    CHECK(d.method == Method::theorem1);
}

TEST_CASE("probabilities are scale covariant") {
    testutil::Rng rng(5);
    auto lat = testutil::random_lattice(rng);
    auto body = testutil::random_fitting_body(rng, lat, 3);
    auto d1 = hit_probabilities(body, lat);
    auto lat2 = lattice_from_sides(3.7 * lat.a, 3.7 * lat.b, 3.7 * lat.c);
    auto d2 = hit_probabilities(scaled(body, 3.7), lat2);
    for (int i = 0; i < 6; ++i) CHECK(std::fabs(d1.p[i] - d2.p[i]) <= 1e-12);
    CHECK(std::fabs(d1.expectation - d2.expectation) <= 1e-12);
}

TEST_CASE("relabeling the lattice sides does not change the distribution") {
    testutil::Rng rng(808);
    auto lat = testutil::random_lattice(rng);
    auto body = testutil::random_fitting_body(rng, lat, 5);
    auto d1 = hit_probabilities(body, lat, 1e-12);
    auto d2 = hit_probabilities(body, lattice_from_sides(lat.b, lat.c, lat.a), 1e-12);
    auto d3 = hit_probabilities(body, lattice_from_sides(lat.c, lat.a, lat.b), 1e-12);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::fabs(d1.p[i] - d2.p[i]) <= 1e-9);
        CHECK(std::fabs(d1.p[i] - d3.p[i]) <= 1e-9);
    }
}

TEST_CASE("autocorrelation integrals have the documented symmetries") {
    auto lat = lattice_from_sides(2, 3, 4);
    auto ac = autocorrelation(make_disc(0.5), lat, 1e-11);
    // disc of radius r: w = 2r, s = r, so I = 4 pi r^2 and J = 2 pi r^2 at any lag
    CHECK(ac.I0 == doctest::Approx(4.0 * pi * 0.25).epsilon(1e-10));
    CHECK(ac.Ialpha == doctest::Approx(4.0 * pi * 0.25).epsilon(1e-10));
    CHECK(ac.J0 == doctest::Approx(2.0 * pi * 0.25).epsilon(1e-10));
    CHECK(ac.Jgamma == doctest::Approx(2.0 * pi * 0.25).epsilon(1e-10));

    CHECK_THROWS_AS(autocorrelation(make_disc(0.5), lat, 0.0), Error);
}

TEST_CASE("oversized bodies are rejected unless forced") {
    auto lat = lattice_from_sides(1, 1, 1);
    auto big = make_disc(2.0 * lat.rho);
    CHECK_THROWS_AS(hit_probabilities(big, lat), BodyTooLarge);
    try {
        hit_probabilities(big, lat);
    } catch (const BodyTooLarge& e) {
        CHECK(e.margin < 0.0);
    }
    auto d = hit_probabilities(big, lat, 1e-10, true);
    CHECK(d.extrapolated);
    CHECK(d.condition_margin < 0.0);
    // the formal values still satisfy the algebraic identities
    double ez = 0.0;
    for (int i = 0; i < 6; ++i) ez += (i + 1) * d.p[i];
    CHECK(std::fabs(ez - d.expectation) <= 1e-9);
}

TEST_CASE("a point body hits exactly one triangle with probability one") {
    auto lat = lattice_from_sides(1.2, 2.0, 1.7);
    auto d = hit_probabilities(make_needle(0.0), lat);
    CHECK(d.p[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 6; ++i) CHECK(std::fabs(d.p[i]) <= 1e-12);
    CHECK(d.expectation == doctest::Approx(1.0).epsilon(1e-12));
}
