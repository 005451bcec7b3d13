#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trihit/engine.hpp"
#include "trihit/simulate.hpp"

namespace trihit {

// 17 significant digits: enough for bit-faithful double round trips
std::string fmt17(double v);

nlohmann::json to_json(const HitDistribution& d);
HitDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimReport& r);
SimReport report_from_json(const nlohmann::json& j);

struct CompareRow {
    int hits = 0;
    double p_analytic = 0, p_hat = 0, std_err = 0, z = 0;
};

struct CompareReport {
    HitDistribution analytic;
    SimReport sim;
    std::vector<CompareRow> rows;
    bool pass = true;  // all |z| <= 4 wherever p_analytic >= 1e-4
};

CompareReport make_compare(const HitDistribution& analytic, const SimReport& sim);
nlohmann::json to_json(const CompareReport& r);

inline constexpr const char* kSweepHeader = "param,p1,p2,p3,p4,p5,p6,expectation,margin";
inline constexpr const char* kComputeHeader = "p1,p2,p3,p4,p5,p6,expectation,margin";
inline constexpr const char* kCompareHeader = "hits,p_analytic,p_hat,std_err,z,n,seed";
inline constexpr const char* kSimHeader = "hits,count,p_hat,std_err,n,seed";

std::string compute_csv(const HitDistribution& d);
// probabilities blank when blank_probs (fit failure in a sweep without force)
std::string sweep_row_csv(double param, const HitDistribution& d, bool blank_probs);
std::string compare_csv(const CompareReport& r);
std::string sim_csv(const SimReport& r);

}  // namespace trihit
