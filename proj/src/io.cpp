#include "exdom/io.hpp"
#include "exdom/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace exdom {

using nlohmann::json;

namespace {

double number_or_inf(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::numeric_limits<double>::infinity();
    return j.at(key).get<double>();
}

} // namespace

std::string csv_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string json_dump(const json& j, int indent) { return j.dump(indent); }

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out << content;
    if (!out)
        throw IoError("write failed: " + path);
}

json profile_to_json(const PeriodicProfile& p)
{
    return json{{"N", p.N()}, {"a", p.coefficients()}};
}

PeriodicProfile profile_from_json(const json& j)
{
    try {
        const int N = j.at("N").get<int>();
        auto a = j.at("a").get<std::vector<double>>();
        if (N < 0 || int(a.size()) != N + 1)
            throw IoError("profile: length of a must be N + 1");
        return PeriodicProfile(std::move(a));
    } catch (const json::exception& e) {
        throw IoError(std::string("profile: ") + e.what());
    } catch (const DomainError& e) {
        throw IoError(std::string("profile: ") + e.what());
    }
}

PeriodicProfile read_profile(const std::string& path)
{
    const std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return profile_from_json(j);
}

json branch_point_to_json(const BranchPoint& p)
{
    auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    return json{{"k", p.k},
                {"s", p.s},
                {"lambda", p.lambda},
                {"mu", profile_to_json(p.mu)},
                {"residual_sup", num(p.residual_grid_sup)},
                {"mode0_residual", num(p.mode0_residual)},
                {"verified", p.verified}};
}

BranchPoint branch_point_from_json(const json& j)
{
    try {
        BranchPoint p;
        p.k = j.at("k").get<int>();
        p.s = j.at("s").get<double>();
        p.lambda = j.at("lambda").get<double>();
        p.mu = profile_from_json(j.at("mu"));
        p.residual_grid_sup = number_or_inf(j, "residual_sup");
        p.mode0_residual = number_or_inf(j, "mode0_residual");
        p.verified = j.at("verified").get<bool>();
        if (p.k < 1)
            throw IoError("branch point: k must be >= 1");
        return p;
    } catch (const json::exception& e) {
        throw IoError(std::string("branch point: ") + e.what());
    }
}

json branch_to_json(const Branch& b)
{
    json arr = json::array();
    for (const auto& p : b.points)
        arr.push_back(branch_point_to_json(p));
    return arr;
}

std::vector<BranchPoint> branch_from_json(const json& j)
{
    if (!j.is_array())
        throw IoError("branch: expected an array of points");
    std::vector<BranchPoint> out;
    for (const auto& e : j)
        out.push_back(branch_point_from_json(e));
    return out;
}

void write_branch_csv(std::ostream& os, const Branch& b)
{
    os << branch_csv_header << '\n';
    for (const auto& p : b.points) {
        for (int l = 0; l <= p.mu.N(); ++l) {
            os << p.k << ',' << csv_number(p.s) << ',' << csv_number(p.lambda) << ','
               << csv_number(p.residual_grid_sup) << ',' << csv_number(p.mode0_residual) << ','
               << (p.verified ? 1 : 0) << ',' << l << ',' << csv_number(p.mu.coeff(l)) << '\n';
        }
    }
}

json RunManifest::to_json() const
{
    json t = json::object();
    for (const auto& [name, sec] : timings)
        t[name] = sec;
    return json{{"tool", "exdom"},
                {"version", version},
                {"timestamp", timestamp},
                {"command_line", command_line},
                {"config", config},
                {"lambda_star", {{"value", lambda_star}, {"residual", lambda_star_residual}}},
                {"timings_s", t},
                {"outputs", outputs},
                {"schemas", {{"branch_json", branch_schema_version}, {"branch_csv", branch_schema_version}}},
                {"status", status}};
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace exdom
