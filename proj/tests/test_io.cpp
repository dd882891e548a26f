#include "doctest.h"
#include "exdom/errors.hpp"
#include "exdom/io.hpp"

#include <cmath>
#include <sstream>

using namespace exdom;
using nlohmann::json;

TEST_CASE("number formatting")
{
    CHECK(csv_number(0.1) == "0.1");
    CHECK(csv_number(1.0 / 3.0) == "0.333333333333");
    CHECK(csv_number(-2.5e-20) == "-2.5e-20");
    const double x = 0.59504672644978451;
    CHECK(json::parse(json_dump(json(x))).get<double>() == x);
}

TEST_CASE("profile JSON")
{
    PeriodicProfile p({1.0, 0.25, -1.0 / 3.0});
    auto j = profile_to_json(p);
    CHECK(j["N"] == 2);
    auto q = profile_from_json(json::parse(j.dump()));
    CHECK(q.coefficients() == p.coefficients());
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"N": 1})")), IoError);
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"N": 2, "a": [1, 2]})")), IoError);
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"N": "x", "a": [1]})")), IoError);
    CHECK_THROWS_AS(read_profile("/nonexistent/profile.json"), IoError);
}

TEST_CASE("branch JSON and CSV")
{
    Branch b;
    b.k = 2;
    BranchPoint p;
    p.k = 2;
    p.s = -0.01;
    p.lambda = 0.3;
    p.mu = PeriodicProfile({0.0, 0.0, 0.0, 0.0, 1e-3});
    p.residual_grid_sup = 1e-11;
    p.mode0_residual = -2e-15;
    p.verified = true;
    b.points.push_back(p);
    BranchPoint f = p;
    f.residual_grid_sup = INFINITY;
    f.verified = false;
    b.points.push_back(f);

    auto j = branch_to_json(b);
    REQUIRE(j.is_array());
    CHECK(j[1]["residual_sup"].is_null());
    auto back = branch_from_json(json::parse(j.dump()));
    REQUIRE(back.size() == 2);
    CHECK(back[0].s == p.s);
    CHECK(back[0].lambda == p.lambda);
    CHECK(back[0].mu.coefficients() == p.mu.coefficients());
    CHECK(back[0].verified);
    CHECK(std::isinf(back[1].residual_grid_sup));
    CHECK_THROWS_AS(branch_from_json(json::object()), IoError);

    std::ostringstream os;
    write_branch_csv(os, b);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == branch_csv_header);
    std::getline(in, line);
    CHECK(line == "2,-0.01,0.3,1e-11,-2e-15,1,0,0");
    int rows = 1;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 10);
}

TEST_CASE("manifest")
{
    RunManifest m;
    m.command_line = "exdom lambda-star";
    m.version = "0.1.0";
    m.timestamp = utc_timestamp();
    m.timings = {{"a", 0.5}};
    auto j = m.to_json();
    CHECK(j["timings_s"]["a"] == 0.5);
    CHECK(j["schemas"]["branch_json"] == branch_schema_version);
    CHECK(m.timestamp.size() == 20);
    CHECK(m.timestamp.back() == 'Z');
}
