#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trihit/closedform.hpp"
#include "trihit/engine.hpp"
#include "trihit/errors.hpp"
#include "trihit/io.hpp"
#include "trihit/simulate.hpp"

namespace {

using namespace trihit;

enum class ShapeKind { needle, rect, ellipse, halfdisc, disc, polygon };

struct Options {
    std::vector<double> lattice;
    std::string method = "auto";
    uint64_t n = 1000000;
    uint64_t seed = 42;
    bool seed_given = false;
    double tol = 1e-10;
    bool force = false;
    bool corrupt = false;
    std::string output, format;

    ShapeKind kind = ShapeKind::needle;
    double ell = 0, g = 0, h = 0, r = 0;
    std::string polygon_file;

    std::string sweep_param, sweep_range;
    int sweep_steps = 2;
};

// registers the options shared by every subcommand; returns the shape flags
// so the caller can enforce "exactly one shape"
void add_common(CLI::App* cmd, Options& opt, std::vector<double>& rect_gh,
                std::vector<double>& ellipse_gh, std::vector<CLI::Option*>& shape_opts) {
    cmd->add_option("--lattice", opt.lattice,
                    "triangle sides a,b,c of the lattice (comma separated)")
        ->required()
        ->delimiter(',')
        ->expected(3);
    shape_opts.push_back(cmd->add_option("--needle", opt.ell, "needle (segment) of this length"));
    shape_opts.push_back(cmd->add_option("--rect", rect_gh, "rectangle with sides g,h")
                             ->delimiter(',')
                             ->expected(2));
    shape_opts.push_back(cmd->add_option("--ellipse", ellipse_gh, "ellipse with axes g,h (g >= h)")
                             ->delimiter(',')
                             ->expected(2));
    shape_opts.push_back(cmd->add_option("--halfdisc", opt.r, "half disc of this radius"));
    shape_opts.push_back(cmd->add_option("--disc", opt.r, "disc of this radius"));
    shape_opts.push_back(cmd->add_option("--polygon", opt.polygon_file,
                                         "convex polygon from a file of 'x y' lines"));
    cmd->add_option("--method", opt.method, "auto | theorem1 | closed | simulate")
        ->check(CLI::IsMember({"auto", "theorem1", "closed", "simulate"}));
    cmd->add_option("-n,--throws", opt.n, "Monte Carlo throw count");
    cmd->add_option("--seed", opt.seed, "RNG seed (default: env TRILAT_SEED, else 42)");
    cmd->add_option("--tol", opt.tol, "absolute quadrature tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", opt.force, "compute even when the body fails the fit condition");
    cmd->add_option("--output", opt.output, "write the result to this file");
    cmd->add_option("--format", opt.format, "json | csv (default: by output extension)")
        ->check(CLI::IsMember({"json", "csv"}));
}

ShapeKind resolve_shape(const std::vector<CLI::Option*>& shape_opts, Options& opt,
                        const std::vector<double>& rect_gh,
                        const std::vector<double>& ellipse_gh) {
    int given = 0, which = -1;
    for (int i = 0; i < static_cast<int>(shape_opts.size()); ++i)
        if (shape_opts[i]->count() > 0) {
            ++given;
            which = i;
        }
    if (given != 1)
        throw Error("exactly one shape is required: --needle, --rect, --ellipse, --halfdisc, "
                    "--disc or --polygon");
    switch (which) {
        case 0: return ShapeKind::needle;
        case 1:
            opt.g = rect_gh[0];
            opt.h = rect_gh[1];
            return ShapeKind::rect;
        case 2:
            opt.g = ellipse_gh[0];
            opt.h = ellipse_gh[1];
            return ShapeKind::ellipse;
        case 3: return ShapeKind::halfdisc;
        case 4: return ShapeKind::disc;
        default: return ShapeKind::polygon;
    }
}

uint64_t seed_from_env() {
    const char* env = std::getenv("TRILAT_SEED");
    if (env == nullptr || *env == '\0') return 42;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw Error(std::string("TRILAT_SEED is not an integer: ") + env);
    return v;
}

ConvexBody build_body(const Options& opt) {
    switch (opt.kind) {
        case ShapeKind::needle: return make_needle(opt.ell);
        case ShapeKind::rect: return make_rectangle(opt.g, opt.h);
        case ShapeKind::ellipse: return make_ellipse(opt.g, opt.h);
        case ShapeKind::halfdisc: return make_half_disc(opt.r);
        case ShapeKind::disc: return make_disc(opt.r);
        case ShapeKind::polygon: return load_polygon(opt.polygon_file);
    }
    throw Error("unreachable shape kind");
}

HitDistribution analytic_distribution(const Options& opt, const ConvexBody& body,
                                      const TriangleLattice& lat) {
    if (opt.method == "theorem1")  // explicit request: skip the symmetric shortcut
        return hit_probabilities(body, lat, opt.tol, opt.force, EnginePath::generic);
    if (opt.method == "closed") {
        switch (opt.kind) {
            case ShapeKind::needle: return needle_distribution(opt.ell, lat, opt.force);
            case ShapeKind::rect: return rectangle_distribution(opt.g, opt.h, lat, opt.force);
            case ShapeKind::ellipse:
                return ellipse_distribution(opt.g, opt.h, lat, opt.tol, opt.force);
            case ShapeKind::halfdisc: return half_disc_distribution(opt.r, lat, opt.force);
            case ShapeKind::disc:  // a disc is the g = h ellipse
                return ellipse_distribution(2 * opt.r, 2 * opt.r, lat, opt.tol, opt.force);
            case ShapeKind::polygon:
                throw Error("no closed form for polygons; use --method theorem1 or auto");
        }
    }
    // auto: closed form when one exists, else the integral engine
    switch (opt.kind) {
        case ShapeKind::needle: return needle_distribution(opt.ell, lat, opt.force);
        case ShapeKind::rect: return rectangle_distribution(opt.g, opt.h, lat, opt.force);
        case ShapeKind::ellipse: return ellipse_distribution(opt.g, opt.h, lat, opt.tol, opt.force);
        case ShapeKind::halfdisc:
            if (lat.max_angle() <= 0.5 * pi) return half_disc_distribution(opt.r, lat, opt.force);
            return hit_probabilities(body, lat, opt.tol, opt.force);
        default: return hit_probabilities(body, lat, opt.tol, opt.force);
    }
}

std::string pick_format(const Options& opt) {
    if (!opt.format.empty()) return opt.format;
    auto dot = opt.output.rfind('.');
    std::string ext = dot == std::string::npos ? "" : opt.output.substr(dot + 1);
    if (ext == "json" || ext == "csv") return ext;
    throw Error("cannot infer the output format from '" + opt.output +
                "'; pass --format json or csv");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
    if (!out.good()) throw Error("failed writing output file: " + path);
}

// display-only cleanup: exact-zero probabilities that pick up a tiny negative
// rounding error print as 0; stored/serialized values stay raw
double disp(double p) { return p < 0.0 && p > -1e-9 ? 0.0 : p; }

void print_context(const Options& opt, const ConvexBody& body, const TriangleLattice& lat) {
    std::printf("lattice sides (%g, %g, %g), angles (%.6f, %.6f, %.6f) rad, Q = %.12g, rho = %.12g\n",
                lat.a, lat.b, lat.c, lat.alpha, lat.beta, lat.gamma, lat.Q, lat.rho);
    std::printf("body %s: perimeter u = %.12g, area F = %.12g\n", body.name.c_str(), body.u,
                body.F);
    if (opt.force) std::printf("(--force: results may extrapolate past the fit condition)\n");
}

int cmd_compute(Options& opt) {
    const TriangleLattice lat = lattice_from_sides(opt.lattice[0], opt.lattice[1], opt.lattice[2]);
    const ConvexBody body = build_body(opt);

    if (opt.method == "simulate") {
        if (opt.n < 1) throw Error("simulation needs -n >= 1");
        const SimReport rep = run_simulation(body, lat, opt.n, opt.seed);
        if (!opt.output.empty() || !opt.format.empty()) {
            const std::string fmt = pick_format(opt);
            write_text(opt.output,
                       fmt == "json" ? to_json(rep).dump(2) + "\n" : sim_csv(rep));
            return 0;
        }
        print_context(opt, body, lat);
        std::printf("%6s %12s %14s %14s\n", "hits", "count", "p_hat", "stderr");
        for (size_t k = 0; k < rep.counts.size(); ++k)
            std::printf("%6zu %12llu %14.9f %14.9f\n", k + 1,
                        static_cast<unsigned long long>(rep.counts[k]), rep.p_hat[k],
                        rep.std_err[k]);
        std::printf("n = %llu, seed = %llu, elapsed %.2f s\n",
                    static_cast<unsigned long long>(rep.n),
                    static_cast<unsigned long long>(rep.seed), rep.elapsed_seconds);
        return 0;
    }

    const HitDistribution d = analytic_distribution(opt, body, lat);
    if (!opt.output.empty() || !opt.format.empty()) {
        const std::string fmt = pick_format(opt);
        write_text(opt.output, fmt == "json" ? to_json(d).dump(2) + "\n" : compute_csv(d));
        return 0;
    }
    print_context(opt, body, lat);
    for (int i = 0; i < 6; ++i) std::printf("p(%d) = %.15f\n", i + 1, disp(d.p[i]));
    std::printf("E[Z] = %.15f\n", d.expectation);
    std::printf("condition margin = %.12g%s\n", d.condition_margin,
                d.extrapolated ? " (fit condition violated; extrapolated)" : "");
    std::printf("method = %s\n", method_name(d.method));
    return 0;
}

int cmd_compare(Options& opt) {
    if (opt.method == "simulate")
        throw Error("compare needs an analytic method (auto, theorem1 or closed)");
    if (opt.n < 10000) throw Error("compare needs -n >= 10000 for a meaningful test");
    const TriangleLattice lat = lattice_from_sides(opt.lattice[0], opt.lattice[1], opt.lattice[2]);
    const ConvexBody body = build_body(opt);

    HitDistribution analytic = analytic_distribution(opt, body, lat);
    if (opt.corrupt) analytic.p[0] += 0.05;  // harness self-test: must make compare fail
    const SimReport sim = run_simulation(body, lat, opt.n, opt.seed);
    const CompareReport rep = make_compare(analytic, sim);

    if (!opt.output.empty() || !opt.format.empty()) {
        const std::string fmt = pick_format(opt);
        write_text(opt.output, fmt == "json" ? to_json(rep).dump(2) + "\n" : compare_csv(rep));
    } else {
        print_context(opt, body, lat);
        std::printf("%6s %18s %18s %12s %8s\n", "hits", "analytic", "simulated", "stderr", "z");
        for (const CompareRow& row : rep.rows)
            std::printf("%6d %18.12f %18.12f %12.3e %8.2f\n", row.hits, disp(row.p_analytic),
                        row.p_hat, row.std_err, row.z);
        std::printf("n = %llu, seed = %llu, elapsed %.2f s\n",
                    static_cast<unsigned long long>(sim.n),
                    static_cast<unsigned long long>(sim.seed), sim.elapsed_seconds);
        std::printf("%s (|z| <= 4 wherever analytic p >= 1e-4)\n", rep.pass ? "PASS" : "FAIL");
    }
    return rep.pass ? 0 : 1;
}

int cmd_sweep(Options& opt) {
    if (opt.method == "simulate") throw Error("sweep is analytic; --method simulate is not supported");
    if (opt.format == "json") throw Error("sweep emits CSV; --format json is not supported");
    if (opt.kind == ShapeKind::polygon) throw Error("polygons have no sweepable parameter");

    const bool param_ok =
        (opt.sweep_param == "ell" && opt.kind == ShapeKind::needle) ||
        ((opt.sweep_param == "g" || opt.sweep_param == "h") &&
         (opt.kind == ShapeKind::rect || opt.kind == ShapeKind::ellipse)) ||
        (opt.sweep_param == "r" &&
         (opt.kind == ShapeKind::halfdisc || opt.kind == ShapeKind::disc));
    if (!param_ok)
        throw Error("--param " + opt.sweep_param + " does not apply to the given shape");

    double lo = 0, hi = 0;
    if (std::sscanf(opt.sweep_range.c_str(), "%lf:%lf", &lo, &hi) != 2 || !(lo <= hi))
        throw Error("--range must be lo:hi with lo <= hi, got '" + opt.sweep_range + "'");

    const TriangleLattice lat = lattice_from_sides(opt.lattice[0], opt.lattice[1], opt.lattice[2]);
    std::string csv = kSweepHeader;
    csv += '\n';
    for (int j = 0; j < opt.sweep_steps; ++j) {
        const double v = lo + (hi - lo) * j / (opt.sweep_steps - 1);
        Options row = opt;
        if (opt.sweep_param == "ell") row.ell = v;
        else if (opt.sweep_param == "g") row.g = v;
        else if (opt.sweep_param == "h") row.h = v;
        else row.r = v;
        const ConvexBody body = build_body(row);
        const FitResult fit = check_fit(body, lat);
        if (fit.margin < 0.0 && !opt.force) {
            HitDistribution blank;
            blank.condition_margin = fit.margin;
            csv += sweep_row_csv(v, blank, true);
            continue;
        }
        csv += sweep_row_csv(v, analytic_distribution(row, body, lat), false);
    }
    write_text(opt.output, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hitting probabilities of a convex body thrown onto a triangle lattice"};
    app.require_subcommand(1);

    Options opt;
    std::vector<double> rect_gh, ellipse_gh;
    std::vector<CLI::Option*> shapes_compute, shapes_compare, shapes_sweep;

    CLI::App* compute = app.add_subcommand(
        "compute", "analytic hit distribution (or raw simulation with --method simulate)");
    add_common(compute, opt, rect_gh, ellipse_gh, shapes_compute);

    CLI::App* compare =
        app.add_subcommand("compare", "analytic distribution vs Monte Carlo with z-scores");
    add_common(compare, opt, rect_gh, ellipse_gh, shapes_compare);
    compare->add_flag("--selftest-corrupt", opt.corrupt)->group("");  // hidden harness self-test

    CLI::App* sweep = app.add_subcommand("sweep", "CSV table over a swept shape parameter");
    add_common(sweep, opt, rect_gh, ellipse_gh, shapes_sweep);
    sweep->add_option("--param", opt.sweep_param, "swept parameter: ell | g | h | r")
        ->required()
        ->check(CLI::IsMember({"ell", "g", "h", "r"}));
    sweep->add_option("--range", opt.sweep_range, "lo:hi (inclusive)")->required();
    sweep->add_option("--steps", opt.sweep_steps, "number of rows (>= 2)")
        ->required()
        ->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;  // bad command line
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        std::vector<CLI::Option*>& shape_opts = sub == compute  ? shapes_compute
                                                : sub == compare ? shapes_compare
                                                                 : shapes_sweep;
        opt.kind = resolve_shape(shape_opts, opt, rect_gh, ellipse_gh);
        if (sub->count("--seed") == 0) opt.seed = seed_from_env();

        if (sub == compute) return cmd_compute(opt);
        if (sub == compare) return cmd_compare(opt);
        return cmd_sweep(opt);
    } catch (const BodyTooLarge& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const QuadratureFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
