#include "robin/cli/run.hpp"

#include "robin/cli/output.hpp"
#include "robin/error.hpp"
#include "robin/experiments.hpp"

#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace robin::cli {

const char* const tool_version = "0.1.0";

namespace {

namespace fs = std::filesystem;

class Session {
public:
    Session(const RunConfig& config, const RunOptions& options) : config_(config), options_(options)
    {
        manifest_["tool"] = "robin-lab";
        manifest_["version"] = tool_version;
        manifest_["config"] = to_json(config);
        manifest_["warnings"] = Json::array();
        manifest_["timings_seconds"] = Json::object();
        manifest_["results"] = Json::object();
        manifest_["outputs"] = Json::array();
        if (dimension(config.domain) < 3)
            warn(fmt::format("dimension-caveat: domain '{}' has d = {} < 3; results are illustrative and "
                             "outside the theorem's dimension hypothesis",
                             to_string(config.domain), dimension(config.domain)));
    }

    void warn(const std::string& text) { manifest_["warnings"].push_back(text); }
    Json& results() { return manifest_["results"]; }
    Json& manifest() { return manifest_; }

    template <class F>
    auto timed(const std::string& phase, F&& fn)
    {
        const auto start = std::chrono::steady_clock::now();
        auto finish = [&] {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            manifest_["timings_seconds"][phase] = elapsed.count();
        };
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            finish();
        } else {
            auto value = fn();
            finish();
            return value;
        }
    }

    std::string path(const std::string& name) { return (fs::path(config_.output_dir) / name).string(); }

    void csv(const std::string& name, const Table& table)
    {
        write_csv(table, path(name));
        manifest_["outputs"].push_back(name);
    }

    void svg(const std::string& name, const Plot& plot)
    {
        write_svg(plot, path(name));
        manifest_["outputs"].push_back(name);
    }

    void write_manifest() { write_text(manifest_.dump(2) + "\n", path("manifest.json")); }

    SweepOptions sweep_options() const
    {
        SweepOptions o;
        o.solver = solver_settings();
        o.threads = std::max(options_.threads, 1u);
        return o;
    }

    SolverSettings solver_settings() const
    {
        SolverSettings s;
        s.quad_order = config_.quad_order;
        s.lumped = config_.lumped;
        s.tol = config_.tol;
        s.max_iter = config_.max_iter;
        return s;
    }

private:
    const RunConfig& config_;
    const RunOptions& options_;
    Json manifest_;
};

Json mesh_stats(const Mesh& mesh)
{
    Json j;
    j["dim"] = mesh.dim();
    j["subdivisions"] = mesh.subdivisions();
    j["h"] = mesh.h();
    j["vertices"] = mesh.num_vertices();
    j["cells"] = mesh.num_cells();
    j["boundary_facets"] = mesh.num_boundary_facets();
    return j;
}

Json optional_number(const std::optional<double>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

Cell optional_cell(const std::optional<double>& v)
{
    return v ? Cell(*v) : Cell(std::monostate{});
}

std::int64_t as_int(std::size_t v)
{
    return static_cast<std::int64_t>(v);
}

RobinProblem make_problem(const RunConfig& config, const Mesh& mesh, const Session& session)
{
    RobinProblem p;
    p.mesh = &mesh;
    p.lambda = config.lambda;
    p.beta = make_boundary_field(*config.beta, mesh, "beta");
    p.f = make_source_field(config.f, "f");
    p.solver = session.solver_settings();
    return p;
}

void run_solve(const RunConfig& config, const Mesh& mesh, Session& s)
{
    const auto problem = make_problem(config, mesh, s);
    const auto result = s.timed("solve", [&] { return solve_robin_with_report(problem); });
    const auto& u = result.solution;

    Table table;
    table.header = {"vertex_index", "x"};
    if (mesh.dim() >= 2)
        table.header.push_back("y");
    if (mesh.dim() >= 3)
        table.header.push_back("z");
    table.header.push_back("value");
    Plot plot{fmt::format("Solution, lambda = {:g}, beta = {}", config.lambda, describe(*config.beta)),
              mesh.dim() == 1 ? "x" : "vertex index", "u", {}};
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<Cell> row{as_int(i)};
        for (int k = 0; k < mesh.dim(); ++k)
            row.emplace_back(mesh.vertex(i)[k]);
        row.emplace_back(u[i]);
        table.rows.push_back(std::move(row));
        plot.series.x.push_back(mesh.dim() == 1 ? mesh.vertex(i)[0] : static_cast<double>(i));
        plot.series.y.push_back(u[i]);
    }

    s.timed("write", [&] {
        s.csv("solution.csv", table);
        s.svg("solution.svg", plot);
    });
    auto& r = s.results();
    r["iterations"] = result.report.iterations;
    r["final_relative_residual"] = result.report.final_relative_residual;
    r["sup_closure"] = sup_norm(u, Region::closure);
    r["sup_boundary"] = sup_norm(u, Region::boundary);
    r["h1_norm"] = h1_norm(u);
}

void run_stability(const RunConfig& config, const Mesh& mesh, Session& s)
{
    const auto betas = make_beta_sequence(config, mesh);
    const auto f = make_source_field(config.f, "f");
    const auto records =
        s.timed("sweep", [&] { return stability_sweep(mesh, config.lambda, f, betas, s.sweep_options()); });

    Table table;
    table.header = {"n", "m", "diff_sup", "un_bd_sup", "beta_diff", "ratio"};
    Plot plot{fmt::format("Stability ratios, lambda = {:g}", config.lambda), "pair index (n, m)",
              "||u_n - u_m|| / (||u_n||_bd ||beta_n - beta_m||)", {}};
    std::size_t informative = 0;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        table.rows.push_back({as_int(rec.n), as_int(rec.m), rec.diff_sup_closure, rec.un_sup_boundary,
                              rec.beta_diff_sup, optional_cell(rec.ratio)});
        max_diff = std::max(max_diff, rec.diff_sup_closure);
        if (rec.ratio) {
            ++informative;
            plot.series.x.push_back(static_cast<double>(i));
            plot.series.y.push_back(*rec.ratio);
        }
    }

    std::optional<double> c_hat;
    if (informative > 0)
        c_hat = estimate_constant(records);
    else
        s.warn("no informative pairs: every beta difference vanishes, C_hat is undefined");

    Table summary;
    summary.header = {"C_hat", "pairs", "informative_pairs", "max_diff_sup"};
    summary.rows.push_back({optional_cell(c_hat), as_int(records.size()), as_int(informative), max_diff});

    s.timed("write", [&] {
        s.csv("stability.csv", table);
        s.csv("stability_summary.csv", summary);
        if (!plot.series.x.empty())
            s.svg("stability.svg", plot);
    });
    auto& r = s.results();
    r["C_hat"] = optional_number(c_hat);
    r["pairs"] = records.size();
    r["informative_pairs"] = informative;
    // lets readers renormalize diff_sup by ||f||_p instead of ||u_n|| on the boundary
    r["f_lp"] = lp_norm(f, mesh, config.p, Support::domain, config.quad_order);
    r["p"] = config.p;
}

void run_convergence(const RunConfig& config, const Mesh& mesh, Session& s)
{
    const auto betas = make_beta_sequence(config, mesh);
    const auto limit = make_boundary_field(*config.beta_limit, mesh, "beta_limit");
    const auto f = make_source_field(config.f, "f");
    const auto records = s.timed(
        "sweep", [&] { return convergence_study(mesh, config.lambda, f, betas, limit, s.sweep_options()); });

    Table table;
    table.header = {"n", "sup_err", "un_bd_sup", "beta_diff", "ratio"};
    Plot plot{"Convergence to the limit problem", "n", "||u_n - u||", {}};
    std::optional<double> worst_ratio;
    for (const auto& rec : records) {
        const double denom = rec.un_sup_boundary * rec.beta_diff_sup;
        std::optional<double> ratio;
        if (denom > 0.0)
            ratio = rec.sup_err_closure / denom;
        if (ratio)
            worst_ratio = std::max(worst_ratio.value_or(0.0), *ratio);
        table.rows.push_back(
            {as_int(rec.n), rec.sup_err_closure, rec.un_sup_boundary, rec.beta_diff_sup, optional_cell(ratio)});
        plot.series.x.push_back(static_cast<double>(rec.n));
        plot.series.y.push_back(rec.sup_err_closure);
    }

    s.timed("write", [&] {
        s.csv("convergence.csv", table);
        s.svg("convergence.svg", plot);
    });
    auto& r = s.results();
    r["terms"] = records.size();
    r["first_sup_err"] = records.front().sup_err_closure;
    r["last_sup_err"] = records.back().sup_err_closure;
    r["max_ratio"] = optional_number(worst_ratio);
}

void run_stampacchia(const RunConfig& config, const Mesh& mesh, Session& s)
{
    const auto betas = make_beta_sequence(config, mesh);
    const auto f = make_source_field(config.f, "f");
    auto problem = [&](const BoundaryField& beta) {
        RobinProblem p;
        p.mesh = &mesh;
        p.lambda = config.lambda;
        p.beta = beta;
        p.f = f;
        p.solver = s.solver_settings();
        return p;
    };
    const auto diff = s.timed("solve", [&] {
        const auto u0 = solve_robin(problem(betas[0]));
        const auto u1 = solve_robin(problem(betas[1]));
        return u0 - u1;
    });
    auto pipeline = s.timed("level_sets", [&] { return level_set_pipeline(diff, mesh.dim(), config.c2); });
    if (config.variant == GapVariant::paper && pipeline.report.predicted_gap > 0.0) {
        pipeline.params.variant = GapVariant::paper;
        pipeline.report = verify_decay(pipeline.samples, pipeline.params);
    }

    auto gap_for = [&](GapVariant v) {
        StampacchiaParams p = pipeline.params;
        p.variant = v;
        return stampacchia_gap(p);
    };

    Table phi;
    phi.header = {"k", "phi"};
    Plot plot{"Boundary level sets of u_0 - u_1", "k", "|boundary intersect {|u_0 - u_1| > k}|", {}};
    for (std::size_t i = 0; i < pipeline.samples.ks.size(); ++i) {
        phi.rows.push_back({pipeline.samples.ks[i], pipeline.samples.values[i]});
        plot.series.x.push_back(pipeline.samples.ks[i]);
        plot.series.y.push_back(pipeline.samples.values[i]);
    }

    const auto& p = pipeline.params;
    const auto& rep = pipeline.report;
    Table summary;
    summary.header = {"alpha", "delta", "c", "k0", "phi0", "variant", "predicted_gap", "gap_paper",
                      "gap_classical", "vanish_point", "sup_diff_boundary", "hypothesis_ok", "conclusion_ok"};
    const double sup_bd = sup_norm(diff, Region::boundary);
    summary.rows.push_back({p.alpha, p.delta, p.c, p.k0, p.phi0,
                            std::string(p.variant == GapVariant::paper ? "paper" : "classical"),
                            rep.predicted_gap, gap_for(GapVariant::paper), gap_for(GapVariant::classical),
                            optional_cell(rep.vanish_point), sup_bd, std::int64_t{rep.hypothesis_ok},
                            std::int64_t{rep.conclusion_ok}});

    s.timed("write", [&] {
        s.csv("phi.csv", phi);
        s.csv("stampacchia.csv", summary);
        s.svg("phi.svg", plot);
    });
    auto& r = s.results();
    r["c"] = p.c;
    r["predicted_gap"] = rep.predicted_gap;
    r["vanish_point"] = optional_number(rep.vanish_point);
    r["hypothesis_ok"] = rep.hypothesis_ok;
    r["conclusion_ok"] = rep.conclusion_ok;
    if (!rep.conclusion_ok)
        s.warn("decay conclusion not observed on the sampled grid");
}

void run_theorem0(const RunConfig& config, const Mesh& mesh, Session& s)
{
    if (config.p <= static_cast<double>(mesh.dim()))
        s.warn(fmt::format("p = {:g} <= d = {}: the sup-norm bound needs p > d", config.p, mesh.dim()));
    const auto problem = make_problem(config, mesh, s);
    const auto u = s.timed("solve", [&] { return solve_robin(problem); });
    const double sup = sup_norm(u, Region::closure);
    const double f_norm = lp_norm(problem.f, mesh, config.p, Support::domain, config.quad_order);
    const double ratio = theorem0_ratio(u, problem.f, config.p, config.quad_order);

    Table table;
    table.header = {"n", "p", "sup_closure", "f_lp", "ratio"};
    table.rows.push_back({as_int(config.n), config.p, sup, f_norm, ratio});
    s.timed("write", [&] { s.csv("theorem0.csv", table); });
    s.results()["ratio"] = ratio;
}

} // namespace

Json execute(const RunConfig& config, const RunOptions& options)
{
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir))
        throw OutputError(fmt::format("cannot create output directory '{}'", config.output_dir));

    Session session(config, options);
    const Mesh mesh = session.timed("mesh", [&] { return build_mesh(config); });
    session.manifest()["mesh"] = mesh_stats(mesh);

    try {
        switch (config.experiment) {
        case Experiment::solve: run_solve(config, mesh, session); break;
        case Experiment::stability: run_stability(config, mesh, session); break;
        case Experiment::convergence: run_convergence(config, mesh, session); break;
        case Experiment::stampacchia: run_stampacchia(config, mesh, session); break;
        case Experiment::theorem0: run_theorem0(config, mesh, session); break;
        }
    } catch (const Error& e) {
        session.manifest()["status"] = "failed";
        session.manifest()["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        try {
            session.write_manifest();
        } catch (const OutputError&) {
        }
        throw;
    }
    session.manifest()["status"] = "ok";
    session.write_manifest();
    return session.manifest();
}

int run_command(const std::string& experiment, const std::string& config_path,
                const std::optional<std::string>& output_dir, unsigned threads, std::ostream& out,
                std::ostream& err)
{
    auto report = [&](int code, const std::string& kind, const std::string& message, const std::string& field) {
        Json j;
        j["status"] = "error";
        j["exit_code"] = code;
        j["kind"] = kind;
        if (!field.empty())
            j["field"] = field;
        j["message"] = message;
        err << j.dump() << '\n';
        return code;
    };

    try {
        std::ifstream in(config_path);
        if (!in)
            throw ConfigError("config", fmt::format("cannot read config file '{}'", config_path));
        Json json;
        try {
            json = Json::parse(in);
        } catch (const Json::exception& e) {
            throw ConfigError("config", fmt::format("malformed JSON: {}", e.what()));
        }
        if (!parse_experiment(experiment))
            throw ConfigError("experiment", fmt::format("unknown experiment '{}'", experiment));
        if (json.is_object() && !json.contains("experiment"))
            json["experiment"] = experiment;
        RunConfig config = parse_config(json);
        if (to_string(config.experiment) != experiment)
            throw ConfigError("experiment", fmt::format("command experiment '{}' does not match config experiment '{}'",
                                                        experiment, to_string(config.experiment)));
        if (output_dir)
            config.output_dir = *output_dir;

        const Json manifest = execute(config, RunOptions{threads});
        out << Json{{"status", "ok"}, {"output_dir", config.output_dir}, {"results", manifest["results"]}}.dump()
            << '\n';
        return exit_ok;
    } catch (const ConfigError& e) {
        return report(exit_invalid_config, "invalid-config", e.what(), e.field());
    } catch (const OutputError& e) {
        return report(exit_unwritable, "unwritable-output", e.what(), "output_dir");
    } catch (const Error& e) {
        return report(exit_solve_failed, std::string(to_string(e.kind())), e.what(), "");
    } catch (const std::exception& e) {
        return report(exit_failure, "internal", e.what(), "");
    }
}

} // namespace robin::cli
