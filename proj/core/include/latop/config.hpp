#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latop/apps.hpp"
#include "latop/transferop.hpp"
#include "latop/types.hpp"

namespace latop {

enum class ProblemKind { ellipse_system, circle_system, random_matrices, ifs };

/// A parsed, validated problem description. Exactly one of the problem
/// payloads below is meaningful, selected by `kind`.
struct Config {
    ProblemKind kind = ProblemKind::ellipse_system;
    MapWeightSystem ellipse;
    cplx blaschke_mu;
    RandomMatrixProblem matrices;
    IfsProblem ifs;

    int samples = 1024;  // boundary samples for geometry tasks
    double grid_min = 1.05;
    double grid_max = 40.0;
    int grid_count = 500;

    std::string canonical;  // normalized JSON text of the config object
};

/// Parse a JSON problem description (schema documented in the README).
/// A top-level "config" key, as written in emitted JSON mirrors, is unwrapped.
Config parse_config(const std::string& json_text);
Config load_config_file(const std::string& path);

/// Plain table of preformatted cells; floating-point cells carry
/// 17 significant digits.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Run one task ("correlation-decay", "eigenvalue", "lyapunov",
/// "ifs-integral", "ifs-lyapunov", "ellipse-search") over the given basis
/// sizes. eigen_index is 1-based (the k-th eigenvalue by descending modulus).
Table run_task(const Config& config, const std::string& task, const std::vector<int>& n_values,
               int eigen_index = 1, std::optional<int> samples_override = std::nullopt);

std::string to_csv(const Table& table);

/// JSON mirror of a run; feeding it back as the input config reproduces the
/// CSV byte for byte.
std::string to_json_mirror(const Config& config, const std::string& task, const Table& table);

/// Expand "MIN:MAX:STEP" into the list {MIN, MIN+STEP, ...} <= MAX.
std::vector<int> parse_n_range(const std::string& spec);

std::string format_double(double v);

}  // namespace latop
