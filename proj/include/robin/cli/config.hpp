#pragma once

#include "robin/fields.hpp"
#include "robin/mesh.hpp"
#include "robin/stampacchia.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace robin::cli {

using Json = nlohmann::ordered_json;

enum class Domain { interval, square, cube };
enum class Experiment { solve, stability, convergence, stampacchia, theorem0 };

std::string to_string(Domain d);
std::string to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);
int dimension(Domain d);

/// A scalar field as written in a config: {"kind":"constant","value":v},
/// {"kind":"per_facet","values":[...]} or {"kind":"expr","expr":"1 + x"}.
/// A bare number is shorthand for a constant.
struct FieldSpec {
    enum class Kind { constant, per_facet, expr };
    Kind kind = Kind::constant;
    double value = 0.0;
    std::vector<double> values;
    std::string expr;
};

/// beta_k = base + 1/(k+1), k = 0..count-1.
struct OneOverK {
    double base = 1.0;
    std::size_t count = 0;
};

struct RunConfig {
    Experiment experiment = Experiment::solve;
    Domain domain = Domain::cube;
    std::size_t n = 8;
    double lambda = 1.0;
    FieldSpec f{FieldSpec::Kind::constant, 1.0, {}, {}};
    std::optional<FieldSpec> beta;
    std::vector<FieldSpec> beta_list;
    std::optional<OneOverK> beta_generator;
    std::optional<FieldSpec> beta_limit;
    double p = 4.0;
    double c2 = 0.0;
    GapVariant variant = GapVariant::classical;
    int quad_order = 2;
    bool lumped = false;
    double tol = 1e-10;
    int max_iter = 0;
    std::string output_dir = "robin-out";
};

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(message), field_(std::move(field))
    {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses and validates. Unknown keys are rejected.
RunConfig parse_config(const Json& json);
RunConfig load_config(const std::string& path);

/// Normalized echo; parse_config(to_json(c)) reproduces c.
Json to_json(const RunConfig& config);
Json to_json(const FieldSpec& spec);

Mesh build_mesh(const RunConfig& config);

/// Builds fields; per-facet lengths are checked against the mesh here.
BoundaryField make_boundary_field(const FieldSpec& spec, const Mesh& mesh, const std::string& field);
SourceField make_source_field(const FieldSpec& spec, const std::string& field);
std::vector<BoundaryField> make_beta_sequence(const RunConfig& config, const Mesh& mesh);

/// Short human-readable form used in plot titles.
std::string describe(const FieldSpec& spec);

} // namespace robin::cli
