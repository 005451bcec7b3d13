#include "trihit/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "trihit/errors.hpp"

namespace trihit {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

Method method_from_name(const std::string& s) {
    for (Method m : {Method::theorem1, Method::symmetric_fastpath, Method::closed_form,
                     Method::simulation})
        if (s == method_name(m)) return m;
    throw Error("unknown method tag '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const HitDistribution& d) {
    return {{"p", d.p},
            {"expectation", d.expectation},
            {"method", method_name(d.method)},
            {"condition_margin", d.condition_margin},
            {"extrapolated", d.extrapolated}};
}

HitDistribution distribution_from_json(const nlohmann::json& j) {
    HitDistribution d;
    d.p = j.at("p").get<std::array<double, 6>>();
    d.expectation = j.at("expectation").get<double>();
    d.method = method_from_name(j.at("method").get<std::string>());
    d.condition_margin = j.at("condition_margin").get<double>();
    d.extrapolated = j.at("extrapolated").get<bool>();
    return d;
}

nlohmann::json to_json(const SimReport& r) {
    return {{"n", r.n},
            {"seed", r.seed},
            {"counts", r.counts},
            {"p_hat", r.p_hat},
            {"stderr", r.std_err},
            {"elapsed_seconds", r.elapsed_seconds}};
}

SimReport report_from_json(const nlohmann::json& j) {
    SimReport r;
    r.n = j.at("n").get<uint64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    r.counts = j.at("counts").get<std::vector<uint64_t>>();
    r.p_hat = j.at("p_hat").get<std::vector<double>>();
    r.std_err = j.at("stderr").get<std::vector<double>>();
    r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return r;
}

CompareReport make_compare(const HitDistribution& analytic, const SimReport& sim) {
    CompareReport rep;
    rep.analytic = analytic;
    rep.sim = sim;
    const size_t rows = std::max<size_t>(6, sim.p_hat.size());
    for (size_t k = 0; k < rows; ++k) {
        CompareRow row;
        row.hits = static_cast<int>(k + 1);
        row.p_analytic = k < 6 ? analytic.p[k] : 0.0;
        row.p_hat = k < sim.p_hat.size() ? sim.p_hat[k] : 0.0;
        row.std_err = k < sim.std_err.size() ? sim.std_err[k] : 0.0;
        const double diff = row.p_hat - row.p_analytic;
        if (row.std_err > 0.0)
            row.z = diff / row.std_err;
        else
            row.z = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
        if (row.p_analytic >= 1e-4 && !(std::fabs(row.z) <= 4.0)) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

nlohmann::json to_json(const CompareReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const CompareRow& row : r.rows)
        rows.push_back({{"hits", row.hits},
                        {"p_analytic", row.p_analytic},
                        {"p_hat", row.p_hat},
                        {"std_err", row.std_err},
                        {"z", row.z}});
    return {{"analytic", to_json(r.analytic)},
            {"simulation", to_json(r.sim)},
            {"rows", rows},
            {"pass", r.pass}};
}

std::string compute_csv(const HitDistribution& d) {
    std::string out = kComputeHeader;
    out += '\n';
    for (double p : d.p) {
        out += fmt17(p);
        out += ',';
    }
    out += fmt17(d.expectation);
    out += ',';
    out += fmt17(d.condition_margin);
    out += '\n';
    return out;
}

std::string sweep_row_csv(double param, const HitDistribution& d, bool blank_probs) {
    std::string out = fmt17(param);
    if (blank_probs) {
        out += ",,,,,,,";
    } else {
        for (double p : d.p) {
            out += ',';
            out += fmt17(p);
        }
        out += ',';
        out += fmt17(d.expectation);
    }
    out += ',';
    out += fmt17(d.condition_margin);
    out += '\n';
    return out;
}

std::string sim_csv(const SimReport& r) {
    std::string out = kSimHeader;
    out += '\n';
    for (size_t k = 0; k < r.counts.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += std::to_string(r.counts[k]);
        out += ',';
        out += fmt17(r.p_hat[k]);
        out += ',';
        out += fmt17(r.std_err[k]);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string compare_csv(const CompareReport& r) {
    std::string out = kCompareHeader;
    out += '\n';
    for (const CompareRow& row : r.rows) {
        out += std::to_string(row.hits);
        out += ',';
        out += fmt17(row.p_analytic);
        out += ',';
        out += fmt17(row.p_hat);
        out += ',';
        out += fmt17(row.std_err);
        out += ',';
        out += fmt17(row.z);
        out += ',';
        out += std::to_string(r.sim.n);
        out += ',';
        out += std::to_string(r.sim.seed);
        out += '\n';
    }
    return out;
}

}  // namespace trihit
