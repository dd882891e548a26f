#pragma once

#include "exdom/profile.hpp"
#include "exdom/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace exdom {

constexpr int branch_schema_version = 1;
constexpr const char* branch_csv_header = "k,s,lambda,residual_sup,mode0_residual,verified,l,mu_l";

// 12 significant digits
std::string csv_number(double x);
// JSON text; doubles round-trip exactly
std::string json_dump(const nlohmann::json& j, int indent = 2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// {"N": int, "a": [a_0 .. a_N]}
nlohmann::json profile_to_json(const PeriodicProfile& p);
PeriodicProfile profile_from_json(const nlohmann::json& j);
PeriodicProfile read_profile(const std::string& path);

// {k, s, lambda, mu: {N, a}, residual_sup, mode0_residual, verified}
nlohmann::json branch_point_to_json(const BranchPoint& p);
BranchPoint branch_point_from_json(const nlohmann::json& j);
nlohmann::json branch_to_json(const Branch& b); // array of points
std::vector<BranchPoint> branch_from_json(const nlohmann::json& j);

// one row per (point, coefficient l = 0..N)
void write_branch_csv(std::ostream& os, const Branch& b);

struct RunManifest
{
    std::string command_line;
    nlohmann::json config = nlohmann::json::object();
    double lambda_star = 0.0;
    double lambda_star_residual = 0.0;
    std::string version;
    std::string timestamp;
    std::vector<std::pair<std::string, double>> timings; // seconds
    std::vector<std::string> outputs;
    std::string status = "ok";

    nlohmann::json to_json() const;
};

// ISO 8601, UTC
std::string utc_timestamp();

} // namespace exdom
