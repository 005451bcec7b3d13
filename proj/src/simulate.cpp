#include "trihit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "trihit/engine.hpp"
#include "trihit/errors.hpp"
#include "trihit/rng.hpp"

namespace trihit {

namespace {

// closest point to the origin on segment [a, b]; keep: 0 -> a, 1 -> b, 2 -> interior
Vec2 closest_on_segment(Vec2 a, Vec2 b, int& keep) {
    Vec2 ab = b - a;
    double denom = dot(ab, ab);
    if (!(denom > 0.0)) {
        keep = 0;
        return a;
    }
    double t = -dot(a, ab) / denom;
    if (t <= 0.0) {
        keep = 0;
        return a;
    }
    if (t >= 1.0) {
        keep = 1;
        return b;
    }
    keep = 2;
    return a + t * ab;
}

}  // namespace

bool intersects(const PlacedBody& placed, const std::array<Vec2, 3>& tri, double eps) {
    // support point of the Minkowski difference D = body - triangle
    auto support = [&](Vec2 d) -> Vec2 {
        Vec2 pa = placed.support_point(std::atan2(d.y, d.x));
        int best = 0;
        double bv = dot(tri[0], d);
        for (int i = 1; i < 3; ++i) {
            double q = dot(tri[i], d);
            if (q < bv) {
                bv = q;
                best = i;
            }
        }
        return pa - tri[best];
    };

    Vec2 d0 = placed.t - (1.0 / 3.0) * (tri[0] + tri[1] + tri[2]);
    if (norm2(d0) == 0.0) d0 = {1.0, 0.0};

    Vec2 W[3];
    int nW = 1;
    W[0] = support(d0);
    Vec2 v = W[0];

    for (int iter = 0; iter < 128; ++iter) {
        double vn = norm(v);
        if (vn <= eps) return true;

        Vec2 w = support(-v);
        double lb = dot(v, w) / vn;  // lower bound on the distance to the origin
        if (lb > eps) return false;
        if (vn - lb <= 1e-13 * vn + 1e-300) return vn <= eps;  // converged to the distance
        bool dup = false;
        for (int i = 0; i < nW; ++i)
            if (w.x == W[i].x && w.y == W[i].y) dup = true;
        if (dup) return vn <= eps;

        W[nW++] = w;

        if (nW == 2) {
            int keep;
            v = closest_on_segment(W[0], W[1], keep);
            if (keep == 0)
                nW = 1;
            else if (keep == 1) {
                W[0] = W[1];
                nW = 1;
            }
        } else {
            // triangle simplex: inside test, then best of the three edges
            Vec2 A = W[0], B = W[1], C = W[2];
            double sgn = cross(B - A, C - A);
            if (sgn != 0.0) {
                double d1 = cross(B - A, -A);
                double d2 = cross(C - B, -B);
                double d3 = cross(A - C, -C);
                if ((sgn > 0.0 && d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0) ||
                    (sgn < 0.0 && d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0))
                    return true;  // origin inside the simplex
            }
            int ka, kb, kc;
            Vec2 vab = closest_on_segment(A, B, ka);
            Vec2 vbc = closest_on_segment(B, C, kb);
            Vec2 vca = closest_on_segment(C, A, kc);
            double nab = norm2(vab), nbc = norm2(vbc), nca = norm2(vca);
            if (nab <= nbc && nab <= nca) {
                v = vab;
                if (ka == 2)
                    nW = 2;
                else {
                    W[0] = ka == 0 ? A : B;
                    nW = 1;
                }
            } else if (nbc <= nca) {
                v = vbc;
                W[0] = B;
                W[1] = C;
                nW = kb == 2 ? 2 : 1;
                if (kb == 1) W[0] = C;
            } else {
                v = vca;
                W[0] = C;
                W[1] = A;
                nW = kc == 2 ? 2 : 1;
                if (kc == 1) W[0] = A;
            }
        }
    }
    throw NonConvergence("intersection test failed to converge after 128 iterations");
}

int count_hits(const ConvexBody& body, const TriangleLattice& lat, const ThrowSample& sample) {
    const PlacedBody placed = rotate_translate(body, sample.phi, {sample.x, sample.y});
    const double scale = lat.max_side() + body.max_radius + norm(placed.t);
    const double eps = 1e-12 * scale;

    // same centroid offsets and vertex spread for every cell of a parity
    const Vec2 diag = lat.v_col() + lat.v_row();
    const Vec2 cen_lower = (1.0 / 3.0) * diag;
    const Vec2 cen_upper = (2.0 / 3.0) * diag;
    const double r_tri = std::sqrt(std::max(
        {norm2(cen_lower), norm2(lat.v_col() - cen_lower), norm2(lat.v_row() - cen_lower)}));
    const double reach = body.max_radius + r_tri + eps;
    const double reach2 = reach * reach;

    thread_local std::vector<CellIndex> cells;
    cells.clear();
    cells_near_into(lat, placed.t, body.max_radius + lat.max_side(), cells);

    int hits = 0;
    for (const CellIndex& idx : cells) {
        Vec2 shift = static_cast<double>(idx.k_col) * lat.v_col() +
                     static_cast<double>(idx.k_row) * lat.v_row();
        Vec2 cen = shift + (idx.parity == Parity::lower ? cen_lower : cen_upper);
        if (norm2(cen - placed.t) > reach2) continue;
        if (intersects(placed, cell_vertices(lat, idx), eps)) ++hits;
    }
    return hits;
}

ThrowSample draw_throw(const TriangleLattice& lat, uint64_t seed, uint64_t index) {
    SampleRng rng(seed, index);
    ThrowSample s;
    s.y = rng.next_unit() * lat.h_c;
    s.x = s.y * (lat.v_row().x / lat.v_row().y) + rng.next_unit() * lat.c;
    s.phi = rng.next_unit() * two_pi;
    return s;
}

SimReport run_simulation(const ConvexBody& body, const TriangleLattice& lat, uint64_t n,
                         uint64_t seed, unsigned workers) {
    if (n < 1) throw EmptyInput("simulation needs at least one throw");
    const auto t_start = std::chrono::steady_clock::now();

    const FitResult fit = check_fit(body, lat);
    const bool enforce_six = fit.margin > 0.0;

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers > n) workers = static_cast<unsigned>(n);

    std::vector<std::vector<uint64_t>> local(workers);
    std::atomic<bool> failed{false};
    std::mutex fail_mutex;
    std::string fail_msg;

    auto work = [&](unsigned w) {
        std::vector<uint64_t>& mine = local[w];
        mine.assign(8, 0);
        const uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
        for (uint64_t i = lo; i < hi; ++i) {
            if (failed.load(std::memory_order_relaxed)) return;
            ThrowSample s = draw_throw(lat, seed, i);
            s.hits = count_hits(body, lat, s);
            if (s.hits < 1 || (enforce_six && s.hits > 6)) {
                std::lock_guard<std::mutex> lk(fail_mutex);
                if (!failed.exchange(true))
                    fail_msg = "sample " + std::to_string(i) + " (x=" + std::to_string(s.x) +
                               ", y=" + std::to_string(s.y) + ", phi=" + std::to_string(s.phi) +
                               ") hit " + std::to_string(s.hits) +
                               " triangles with fit margin " + std::to_string(fit.margin);
                return;
            }
            if (static_cast<size_t>(s.hits) > mine.size()) mine.resize(s.hits, 0);
            ++mine[s.hits - 1];
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw Error("hit-count invariant violated: " + fail_msg);

    SimReport rep;
    rep.n = n;
    rep.seed = seed;
    size_t max_len = 1;
    for (const auto& mine : local)
        for (size_t k = mine.size(); k-- > 0;)
            if (mine[k] > 0) {
                max_len = std::max(max_len, k + 1);
                break;
            }
    rep.counts.assign(max_len, 0);
    for (const auto& mine : local)
        for (size_t k = 0; k < std::min(mine.size(), max_len); ++k) rep.counts[k] += mine[k];

    rep.p_hat.resize(max_len);
    rep.std_err.resize(max_len);
    const double dn = static_cast<double>(n);
    for (size_t k = 0; k < max_len; ++k) {
        rep.p_hat[k] = static_cast<double>(rep.counts[k]) / dn;
        rep.std_err[k] = std::sqrt(rep.p_hat[k] * (1.0 - rep.p_hat[k]) / dn);
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

}  // namespace trihit
