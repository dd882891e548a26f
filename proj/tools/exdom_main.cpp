#include "exdom/dispersion.hpp"
#include "exdom/errors.hpp"
#include "exdom/io.hpp"
#include "exdom/operator_eval.hpp"
#include "exdom/parallel.hpp"
#include "exdom/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#ifndef EXDOM_VERSION
#define EXDOM_VERSION "dev"
#endif

using namespace exdom;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, numeric_failure = 1, usage = 2 };

struct Options
{
    int threads = 0;
    std::string out_dir = ".";
    std::string output; // CSV destination, stdout if empty

    double tol = 1e-15;
    std::string root_method = "bisection";

    double rho_min = 0.01, rho_max = 5.0;
    int samples = 500;
    bool oracle = false;
    bool log_spacing = false;

    std::string profile;
    int points = 33;
    std::string method = "regularized";

    int k = 1;
    double s_max = 0.05, s_step = 5e-3;
    int modes = 32;
    int verify_grid = 256;
    double newton_tol = 1e-10;

    std::string branch_file;
};

class Timer
{
public:
    double lap()
    {
        const auto now = std::chrono::steady_clock::now();
        const double d = std::chrono::duration<double>(now - t_).count();
        t_ = now;
        return d;
    }

private:
    std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

struct Context
{
    Options opt;
    RunManifest manifest;
    Timer timer;

    void stage(const std::string& name) { manifest.timings.push_back({name, timer.lap()}); }

    void add_output(const std::string& name) { manifest.outputs.push_back(name); }

    fs::path path(const std::string& name) const { return fs::path(opt.out_dir) / name; }

    void write_manifest()
    {
        fs::create_directories(opt.out_dir);
        write_text_file(path("manifest.json").string(), json_dump(manifest.to_json()) + "\n");
    }
};

// CSV to --output (recorded in the manifest) or stdout
class CsvSink
{
public:
    explicit CsvSink(Context& ctx)
    {
        if (!ctx.opt.output.empty()) {
            fs::create_directories(ctx.opt.out_dir);
            const auto p = ctx.path(ctx.opt.output);
            file_.open(p);
            if (!file_)
                throw IoError("cannot write " + p.string());
            ctx.add_output(ctx.opt.output);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int cmd_lambda_star(Context& ctx)
{
    const auto& o = ctx.opt;
    const RootMethod m = o.root_method == "secant" ? RootMethod::Secant : RootMethod::Bisection;
    const CriticalRadius cr = find_lambda_star(o.tol, 200, m);
    ctx.stage("lambda_star");
    ctx.manifest.lambda_star = cr.lambda_star;
    ctx.manifest.lambda_star_residual = cr.residual;
    json j{{"lambda_star", cr.lambda_star},
           {"residual", cr.residual},
           {"V_prime", cr.V_prime},
           {"iterations", cr.iterations},
           {"method", o.root_method},
           {"bracket", {lambda_star_lower(), lambda_star_upper()}}};
    std::cout << json_dump(j) << '\n';
    return ok;
}

int cmd_dispersion(Context& ctx)
{
    const auto& o = ctx.opt;
    if (!(o.rho_min > 0.0) || !(o.rho_max > o.rho_min) || o.samples < 2)
        throw DomainError("dispersion: need 0 < rho-min < rho-max and samples >= 2");
    std::unique_ptr<DispersionQuadrature> quad;
    if (o.oracle)
        quad = std::make_unique<DispersionQuadrature>(std::max(o.rho_max, 1.0));
    ctx.stage("setup");

    CsvSink sink(ctx);
    std::ostream& os = sink.os();
    os << "rho,V,V_prime,V1,V2,V3" << (o.oracle ? ",V_quadrature" : "") << '\n';
    int sign_changes = 0;
    double prev = NAN, max_diff = 0.0;
    for (int i = 0; i < o.samples; ++i) {
        const double f = double(i) / (o.samples - 1);
        const double rho = o.log_spacing ? o.rho_min * std::pow(o.rho_max / o.rho_min, f)
                                         : o.rho_min + f * (o.rho_max - o.rho_min);
        const double V = dispersion_V(rho);
        const auto c = dispersion_components(rho);
        os << csv_number(rho) << ',' << csv_number(V) << ',' << csv_number(dispersion_V_prime(rho)) << ','
           << csv_number(c.V1) << ',' << csv_number(c.V2) << ',' << csv_number(c.V3);
        if (quad) {
            const double Vq = quad->V(rho);
            max_diff = std::max(max_diff, std::abs(V - Vq));
            os << ',' << csv_number(Vq);
        }
        os << '\n';
        if (i > 0 && (V > 0.0) != (prev > 0.0))
            ++sign_changes;
        prev = V;
    }
    ctx.stage("sweep");
    std::cerr << "sign_changes=" << sign_changes;
    if (quad)
        std::cerr << " max_abs_V_minus_quadrature=" << csv_number(max_diff);
    std::cerr << '\n';
    return ok;
}

int cmd_eval_h(Context& ctx)
{
    const auto& o = ctx.opt;
    if (o.points < 2)
        throw DomainError("eval-h: need at least 2 points");
    if (o.method != "direct" && o.method != "regularized" && o.method != "both")
        throw DomainError("eval-h: method must be direct, regularized or both");
    const PeriodicProfile phi = read_profile(o.profile);
    phi.require_positive("eval-h");
    ctx.manifest.config["profile_N"] = phi.N();

    std::vector<double> s(o.points);
    for (int j = 0; j < o.points; ++j)
        s[j] = std::numbers::pi * j / (o.points - 1);
    std::vector<double> hr(o.points), hd(o.points);
    const QuadratureSpec q;
    parallel_for(
        o.points,
        [&](int j) {
            if (o.method != "direct")
                hr[j] = h_regularized(phi, s[j], q);
            if (o.method != "regularized")
                hd[j] = h_direct(phi, s[j], q);
        },
        o.threads);
    ctx.stage("evaluate");

    CsvSink sink(ctx);
    std::ostream& os = sink.os();
    const double two_pi = 2.0 * std::numbers::pi;
    double max_res = 0.0, max_disc = 0.0;
    if (o.method == "both") {
        os << "s,H_regularized,H_direct,H_plus_2pi,discrepancy\n";
        for (int j = 0; j < o.points; ++j) {
            const double d = hr[j] - hd[j];
            max_res = std::max(max_res, std::abs(hr[j] + two_pi));
            max_disc = std::max(max_disc, std::abs(d));
            os << csv_number(s[j]) << ',' << csv_number(hr[j]) << ',' << csv_number(hd[j]) << ','
               << csv_number(hr[j] + two_pi) << ',' << csv_number(d) << '\n';
        }
    } else {
        const auto& h = o.method == "direct" ? hd : hr;
        os << "s,H,H_plus_2pi\n";
        for (int j = 0; j < o.points; ++j) {
            max_res = std::max(max_res, std::abs(h[j] + two_pi));
            os << csv_number(s[j]) << ',' << csv_number(h[j]) << ',' << csv_number(h[j] + two_pi) << '\n';
        }
    }
    std::cerr << "max_abs_H_plus_2pi=" << csv_number(max_res);
    if (o.method == "both")
        std::cerr << " max_discrepancy=" << csv_number(max_disc);
    std::cerr << '\n';
    return ok;
}

SolverConfig solver_config(const Options& o)
{
    SolverConfig c;
    c.N = o.modes;
    c.s_max = o.s_max;
    c.s_step = o.s_step;
    c.verify_grid = o.verify_grid;
    c.newton_tol = o.newton_tol;
    c.threads = o.threads;
    return c;
}

int cmd_branch(Context& ctx)
{
    const auto& o = ctx.opt;
    const SolverConfig cfg = solver_config(o);
    cfg.validate(o.k);
    const Branch b = trace_branch(o.k, cfg);
    ctx.stage("trace");

    fs::create_directories(o.out_dir);
    write_text_file(ctx.path("branch.json").string(), json_dump(branch_to_json(b)) + "\n");
    ctx.add_output("branch.json");
    {
        std::ostringstream csv;
        write_branch_csv(csv, b);
        write_text_file(ctx.path("branch.csv").string(), csv.str());
        ctx.add_output("branch.csv");
    }

    const double lam_k = ctx.manifest.lambda_star / o.k;
    json rep{{"k", o.k},
             {"lambda_k", lam_k},
             {"stopped_early", b.stopped_early},
             {"reason", b.reason},
             {"warnings", b.warnings},
             {"verify_tol", cfg.verify_tol},
             {"points", json::array()}};
    bool all_verified = !b.points.empty();
    for (const auto& p : b.points) {
        all_verified = all_verified && p.verified;
        rep["points"].push_back({{"s", p.s},
                                 {"lambda", p.lambda},
                                 {"residual_sup", std::isfinite(p.residual_grid_sup) ? json(p.residual_grid_sup) : json()},
                                 {"mode0_residual", p.mode0_residual},
                                 {"newton_iters", p.newton_iters},
                                 {"jacobian_condition", p.jacobian_condition},
                                 {"verified", p.verified}});
    }
    try {
        rep["lambda0_extrapolated"] = extrapolate_lambda0(b);
    } catch (const DomainError&) {
        rep["lambda0_extrapolated"] = nullptr;
    }
    write_text_file(ctx.path("verification.json").string(), json_dump(rep) + "\n");
    ctx.add_output("verification.json");
    ctx.stage("write");

    std::cout << "k=" << o.k << " points=" << b.points.size() << " all_verified=" << (all_verified ? "yes" : "no")
              << '\n';
    for (const auto& p : b.points)
        std::cout << "  s=" << csv_number(p.s) << " lambda=" << csv_number(p.lambda)
                  << " residual_sup=" << csv_number(p.residual_grid_sup) << (p.verified ? "" : " NOT VERIFIED")
                  << '\n';
    for (const auto& w : b.warnings)
        std::cerr << "warning: " << w << '\n';
    if (b.stopped_early) {
        std::cerr << "stopped early: " << b.reason << '\n';
        ctx.manifest.status = "stopped early: " + b.reason;
    }
    return b.stopped_early || !all_verified ? numeric_failure : ok;
}

int cmd_verify(Context& ctx)
{
    const auto& o = ctx.opt;
    json j;
    try {
        j = json::parse(read_text_file(o.branch_file));
    } catch (const json::exception& e) {
        throw IoError(o.branch_file + ": " + e.what());
    }
    const auto pts = branch_from_json(j);
    json out = json::array();
    bool all = !pts.empty();
    for (const auto& p : pts) {
        const auto r = verify_branch_point(p, o.verify_grid, QuadratureSpec{}, 1e-7, o.threads);
        all = all && r.verified;
        out.push_back({{"k", p.k},
                       {"s", p.s},
                       {"lambda", p.lambda},
                       {"residual_sup", std::isfinite(r.sup) ? json(r.sup) : json()},
                       {"mode0_residual", r.mode0},
                       {"min_phi", r.min_phi},
                       {"verified", r.verified}});
    }
    ctx.stage("verify");
    std::cout << json_dump(out) << '\n';
    if (!all)
        ctx.manifest.status = "verification failed";
    return all ? ok : numeric_failure;
}

std::string join_args(int argc, char** argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    Context ctx;
    Options& o = ctx.opt;

    CLI::App app{"Exceptional-domain branches near circular cylinders"};
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", EXDOM_VERSION);
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.add_option("--threads", o.threads, "worker threads (default: EXDOM_THREADS, else all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", o.out_dir, "directory for the manifest and output files");
    app.add_option("--output", o.output, "CSV file name inside --out (default: stdout)");

    app.add_option("--tol", o.tol, "lambda-star: bracket width tolerance")->check(CLI::PositiveNumber);
    app.add_option("--root-method", o.root_method, "lambda-star: bisection or secant")
        ->check(CLI::IsMember({"bisection", "secant"}));

    app.add_option("--rho-min", o.rho_min, "dispersion: first rho");
    app.add_option("--rho-max", o.rho_max, "dispersion: last rho");
    app.add_option("--samples", o.samples, "dispersion: number of rho values");
    app.add_flag("--oracle", o.oracle, "dispersion: add the kernel-quadrature column");
    app.add_flag("--log-spacing", o.log_spacing, "dispersion: geometric rho grid");

    app.add_option("--profile", o.profile, "eval-h: profile JSON {\"N\", \"a\"}");
    app.add_option("--points", o.points, "eval-h: points on [0, pi]");
    app.add_option("--method", o.method, "eval-h: direct, regularized or both");

    app.add_option("--k", o.k, "branch: mode index")->check(CLI::PositiveNumber);
    app.add_option("--s-max", o.s_max, "branch: largest amplitude")->check(CLI::NonNegativeNumber);
    app.add_option("--s-step", o.s_step, "branch: amplitude step")->check(CLI::PositiveNumber);
    app.add_option("--modes", o.modes, "branch: Galerkin truncation N")->check(CLI::PositiveNumber);
    app.add_option("--verify-grid", o.verify_grid, "branch/verify: dense verification points")
        ->check(CLI::Range(2, 1 << 16));
    app.add_option("--newton-tol", o.newton_tol, "branch: Galerkin residual target")->check(CLI::PositiveNumber);

    app.add_option("--branch", o.branch_file, "verify: branch JSON written by `branch`");

    struct Cmd
    {
        const char* name;
        const char* help;
        int (*run)(Context&);
    };
    const Cmd cmds[] = {
        {"lambda-star", "locate the zero of the dispersion function", cmd_lambda_star},
        {"dispersion", "tabulate V and its components", cmd_dispersion},
        {"eval-h", "evaluate H on a profile", cmd_eval_h},
        {"branch", "trace the branch bifurcating from lambda*/k", cmd_branch},
        {"verify", "re-verify the points of a branch file", cmd_verify},
    };
    for (const auto& c : cmds)
        app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    const Cmd* cmd = nullptr;
    for (const auto& c : cmds)
        if (app.got_subcommand(c.name))
            cmd = &c;
    if (o.profile.empty() && std::string(cmd->name) == "eval-h") {
        std::cerr << "eval-h: --profile is required\n";
        return usage;
    }
    if (o.branch_file.empty() && std::string(cmd->name) == "verify") {
        std::cerr << "verify: --branch is required\n";
        return usage;
    }

    auto& m = ctx.manifest;
    m.command_line = join_args(argc, argv);
    m.version = EXDOM_VERSION;
    m.timestamp = utc_timestamp();
    m.config = {{"command", cmd->name}, {"threads", resolve_threads(o.threads)}, {"settings", app.config_to_str(true)}};

    int code = ok;
    try {
        const CriticalRadius cr = find_lambda_star();
        m.lambda_star = cr.lambda_star;
        m.lambda_star_residual = cr.residual;
        ctx.stage("critical_radius");
        code = cmd->run(ctx);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        m.status = std::string("io error: ") + e.what();
        code = usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        m.status = std::string("invalid input: ") + e.what();
        code = usage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        m.status = std::string("numerical failure: ") + e.what();
        code = numeric_failure;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        ctx.write_manifest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return code;
}
