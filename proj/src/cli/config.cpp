#include "robin/cli/config.hpp"

#include "robin/error.hpp"
#include "robin/experiments.hpp"
#include "robin/expression.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>

namespace robin::cli {

namespace {

const std::set<std::string> known_keys{"experiment", "domain", "n", "lambda", "f", "beta",
                                       "beta_sequence", "beta_limit", "p", "c2", "variant",
                                       "quad_order", "lumped", "tol", "max_iter", "output_dir"};

double get_real(const Json& json, const std::string& key)
{
    const Json& v = json.at(key);
    if (!v.is_number())
        throw ConfigError(key, fmt::format("'{}' must be a number", key));
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(key, fmt::format("'{}' must be finite", key));
    return x;
}

long long get_integer(const Json& json, const std::string& key)
{
    const Json& v = json.at(key);
    if (!v.is_number_integer())
        throw ConfigError(key, fmt::format("'{}' must be an integer", key));
    return v.get<long long>();
}

std::string get_string(const Json& json, const std::string& key)
{
    const Json& v = json.at(key);
    if (!v.is_string())
        throw ConfigError(key, fmt::format("'{}' must be a string", key));
    return v.get<std::string>();
}

FieldSpec parse_field(const Json& json, const std::string& field, bool boundary)
{
    FieldSpec spec;
    if (json.is_number()) {
        spec.value = json.get<double>();
    } else if (json.is_object()) {
        if (!json.contains("kind") || !json.at("kind").is_string())
            throw ConfigError(field, fmt::format("'{}' needs a string 'kind'", field));
        const std::string kind = json.at("kind").get<std::string>();
        if (kind == "constant") {
            if (!json.contains("value") || !json.at("value").is_number())
                throw ConfigError(field, fmt::format("'{}' constant needs a numeric 'value'", field));
            spec.value = json.at("value").get<double>();
        } else if (kind == "per_facet" && boundary) {
            spec.kind = FieldSpec::Kind::per_facet;
            if (!json.contains("values") || !json.at("values").is_array() || json.at("values").empty())
                throw ConfigError(field, fmt::format("'{}' per_facet needs a nonempty 'values' array", field));
            for (const Json& v : json.at("values")) {
                if (!v.is_number())
                    throw ConfigError(field, fmt::format("'{}' per_facet values must be numbers", field));
                spec.values.push_back(v.get<double>());
            }
        } else if (kind == "expr") {
            spec.kind = FieldSpec::Kind::expr;
            if (!json.contains("expr") || !json.at("expr").is_string())
                throw ConfigError(field, fmt::format("'{}' expr needs a string 'expr'", field));
            spec.expr = json.at("expr").get<std::string>();
            try {
                Expression::parse(spec.expr);
            } catch (const Error& e) {
                throw ConfigError(field, fmt::format("'{}': {}", field, e.what()));
            }
        } else {
            throw ConfigError(field, fmt::format("'{}' has unsupported kind '{}'", field, kind));
        }
    } else {
        throw ConfigError(field, fmt::format("'{}' must be a number or a field object", field));
    }

    auto check = [&](double v) {
        if (!std::isfinite(v))
            throw ConfigError(field, fmt::format("'{}' values must be finite", field));
        if (boundary && v < 0.0)
            throw ConfigError(field, fmt::format("'{}' must be nonnegative, got {}", field, v));
    };
    if (spec.kind == FieldSpec::Kind::constant)
        check(spec.value);
    for (double v : spec.values)
        check(v);
    return spec;
}

void require(const RunConfig& c, bool present, const std::string& field)
{
    if (!present)
        throw ConfigError(field, fmt::format("experiment '{}' requires '{}'", to_string(c.experiment), field));
}

std::size_t sequence_length(const RunConfig& c)
{
    return c.beta_generator ? c.beta_generator->count : c.beta_list.size();
}

} // namespace

std::string to_string(Domain d)
{
    switch (d) {
    case Domain::interval: return "interval";
    case Domain::square: return "square";
    case Domain::cube: return "cube";
    }
    return "?";
}

std::string to_string(Experiment e)
{
    switch (e) {
    case Experiment::solve: return "solve";
    case Experiment::stability: return "stability";
    case Experiment::convergence: return "convergence";
    case Experiment::stampacchia: return "stampacchia";
    case Experiment::theorem0: return "theorem0";
    }
    return "?";
}

std::optional<Experiment> parse_experiment(const std::string& name)
{
    for (auto e : {Experiment::solve, Experiment::stability, Experiment::convergence,
                   Experiment::stampacchia, Experiment::theorem0})
        if (to_string(e) == name)
            return e;
    return std::nullopt;
}

int dimension(Domain d)
{
    return d == Domain::interval ? 1 : (d == Domain::square ? 2 : 3);
}

RunConfig parse_config(const Json& json)
{
    if (!json.is_object())
        throw ConfigError("config", "config must be a JSON object");
    for (const auto& item : json.items())
        if (!known_keys.count(item.key()))
            throw ConfigError(item.key(), fmt::format("unknown key '{}'", item.key()));

    RunConfig c;
    if (!json.contains("experiment"))
        throw ConfigError("experiment", "'experiment' is required");
    const auto experiment = parse_experiment(get_string(json, "experiment"));
    if (!experiment)
        throw ConfigError("experiment", fmt::format("unknown experiment '{}'", get_string(json, "experiment")));
    c.experiment = *experiment;

    if (json.contains("domain")) {
        const std::string d = get_string(json, "domain");
        if (d == "interval")
            c.domain = Domain::interval;
        else if (d == "square")
            c.domain = Domain::square;
        else if (d == "cube")
            c.domain = Domain::cube;
        else
            throw ConfigError("domain", fmt::format("unknown domain '{}'", d));
    }
    if (json.contains("n")) {
        const long long n = get_integer(json, "n");
        if (n < 1)
            throw ConfigError("n", "'n' must be >= 1");
        c.n = static_cast<std::size_t>(n);
    }
    if (json.contains("lambda")) {
        c.lambda = get_real(json, "lambda");
        if (c.lambda <= 0.0)
            throw ConfigError("lambda", fmt::format("'lambda' must be > 0, got {}", c.lambda));
    }
    if (json.contains("f"))
        c.f = parse_field(json.at("f"), "f", false);
    if (json.contains("beta"))
        c.beta = parse_field(json.at("beta"), "beta", true);
    if (json.contains("beta_limit"))
        c.beta_limit = parse_field(json.at("beta_limit"), "beta_limit", true);
    if (json.contains("beta_sequence")) {
        const Json& seq = json.at("beta_sequence");
        if (seq.is_array()) {
            for (const Json& item : seq)
                c.beta_list.push_back(parse_field(item, "beta_sequence", true));
        } else if (seq.is_object() && seq.value("kind", "") == "one_over_k") {
            OneOverK g;
            if (seq.contains("base"))
                g.base = get_real(seq, "base");
            if (g.base < 0.0)
                throw ConfigError("beta_sequence", "'beta_sequence' base must be >= 0");
            if (!seq.contains("count") || !seq.at("count").is_number_integer() || seq.at("count").get<long long>() < 1)
                throw ConfigError("beta_sequence", "'beta_sequence' needs a positive integer 'count'");
            g.count = seq.at("count").get<std::size_t>();
            c.beta_generator = g;
        } else {
            throw ConfigError("beta_sequence", "'beta_sequence' must be a list of fields or a one_over_k generator");
        }
    }
    if (json.contains("p")) {
        c.p = get_real(json, "p");
        if (c.p < 1.0)
            throw ConfigError("p", "'p' must be >= 1");
    }
    if (json.contains("c2")) {
        c.c2 = get_real(json, "c2");
        if (c.c2 < 0.0)
            throw ConfigError("c2", "'c2' must be >= 0");
    }
    if (json.contains("variant")) {
        const std::string v = get_string(json, "variant");
        if (v == "classical")
            c.variant = GapVariant::classical;
        else if (v == "paper")
            c.variant = GapVariant::paper;
        else
            throw ConfigError("variant", fmt::format("unknown variant '{}'", v));
    }
    if (json.contains("quad_order")) {
        const long long q = get_integer(json, "quad_order");
        if (q < 1 || q > 12)
            throw ConfigError("quad_order", "'quad_order' must lie in [1, 12]");
        c.quad_order = static_cast<int>(q);
    }
    if (json.contains("lumped")) {
        if (!json.at("lumped").is_boolean())
            throw ConfigError("lumped", "'lumped' must be a boolean");
        c.lumped = json.at("lumped").get<bool>();
    }
    if (json.contains("tol")) {
        c.tol = get_real(json, "tol");
        if (c.tol <= 0.0 || c.tol >= 1.0)
            throw ConfigError("tol", "'tol' must lie in (0, 1)");
    }
    if (json.contains("max_iter")) {
        const long long m = get_integer(json, "max_iter");
        if (m < 0)
            throw ConfigError("max_iter", "'max_iter' must be >= 0");
        c.max_iter = static_cast<int>(m);
    }
    if (json.contains("output_dir")) {
        c.output_dir = get_string(json, "output_dir");
        if (c.output_dir.empty())
            throw ConfigError("output_dir", "'output_dir' must not be empty");
    }

    switch (c.experiment) {
    case Experiment::solve:
    case Experiment::theorem0:
        require(c, c.beta.has_value(), "beta");
        break;
    case Experiment::stability:
        require(c, sequence_length(c) >= 2, "beta_sequence");
        break;
    case Experiment::convergence:
        require(c, sequence_length(c) >= 1, "beta_sequence");
        require(c, c.beta_limit.has_value(), "beta_limit");
        break;
    case Experiment::stampacchia:
        require(c, sequence_length(c) >= 2, "beta_sequence");
        if (dimension(c.domain) < 3)
            throw ConfigError("domain", "experiment 'stampacchia' needs domain 'cube'");
        break;
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", fmt::format("cannot read config file '{}'", path));
    Json json;
    try {
        json = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError("config", fmt::format("malformed JSON in '{}': {}", path, e.what()));
    }
    return parse_config(json);
}

Json to_json(const FieldSpec& spec)
{
    Json j;
    switch (spec.kind) {
    case FieldSpec::Kind::constant:
        j["kind"] = "constant";
        j["value"] = spec.value;
        break;
    case FieldSpec::Kind::per_facet:
        j["kind"] = "per_facet";
        j["values"] = spec.values;
        break;
    case FieldSpec::Kind::expr:
        j["kind"] = "expr";
        j["expr"] = spec.expr;
        break;
    }
    return j;
}

Json to_json(const RunConfig& c)
{
    Json j;
    j["experiment"] = to_string(c.experiment);
    j["domain"] = to_string(c.domain);
    j["n"] = c.n;
    j["lambda"] = c.lambda;
    j["f"] = to_json(c.f);
    if (c.beta)
        j["beta"] = to_json(*c.beta);
    if (c.beta_generator) {
        j["beta_sequence"] = Json{{"kind", "one_over_k"},
                                  {"base", c.beta_generator->base},
                                  {"count", c.beta_generator->count}};
    } else if (!c.beta_list.empty()) {
        Json list = Json::array();
        for (const auto& s : c.beta_list)
            list.push_back(to_json(s));
        j["beta_sequence"] = list;
    }
    if (c.beta_limit)
        j["beta_limit"] = to_json(*c.beta_limit);
    j["p"] = c.p;
    j["c2"] = c.c2;
    j["variant"] = c.variant == GapVariant::classical ? "classical" : "paper";
    j["quad_order"] = c.quad_order;
    j["lumped"] = c.lumped;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["output_dir"] = c.output_dir;
    return j;
}

Mesh build_mesh(const RunConfig& config)
{
    return build_box_mesh(dimension(config.domain), config.n);
}

BoundaryField make_boundary_field(const FieldSpec& spec, const Mesh& mesh, const std::string& field)
{
    switch (spec.kind) {
    case FieldSpec::Kind::constant:
        return BoundaryField::constant(spec.value);
    case FieldSpec::Kind::per_facet:
        if (spec.values.size() != mesh.num_boundary_facets())
            throw ConfigError(field, fmt::format("'{}' has {} per-facet values but the mesh has {} boundary facets",
                                                 field, spec.values.size(), mesh.num_boundary_facets()));
        return BoundaryField::per_facet(spec.values);
    case FieldSpec::Kind::expr: {
        const auto e = Expression::parse(spec.expr);
        return BoundaryField::closure([e](const Point& p) { return e(p); }, spec.expr);
    }
    }
    throw ConfigError(field, "unreachable field kind");
}

SourceField make_source_field(const FieldSpec& spec, const std::string& field)
{
    switch (spec.kind) {
    case FieldSpec::Kind::constant:
        return SourceField::constant(spec.value);
    case FieldSpec::Kind::expr: {
        const auto e = Expression::parse(spec.expr);
        return SourceField::closure([e](const Point& p) { return e(p); }, spec.expr);
    }
    case FieldSpec::Kind::per_facet:
        break;
    }
    throw ConfigError(field, fmt::format("'{}' cannot be a per-facet field", field));
}

std::vector<BoundaryField> make_beta_sequence(const RunConfig& config, const Mesh& mesh)
{
    if (config.beta_generator)
        return one_over_k_sequence(config.beta_generator->base, config.beta_generator->count);
    std::vector<BoundaryField> out;
    for (const auto& spec : config.beta_list)
        out.push_back(make_boundary_field(spec, mesh, "beta_sequence"));
    return out;
}

std::string describe(const FieldSpec& spec)
{
    switch (spec.kind) {
    case FieldSpec::Kind::constant: return fmt::format("{:g}", spec.value);
    case FieldSpec::Kind::per_facet: return "per-facet";
    case FieldSpec::Kind::expr: return spec.expr;
    }
    return "?";
}

} // namespace robin::cli
