#include "latop/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latop/geometry.hpp"
#include "latop/spectral.hpp"

namespace latop {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* what) {
    if (!j.is_number()) throw config_error(std::string(what) + " must be a number");
    return j.get<double>();
}

cplx parse_complex(const json& j, const char* what) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx{j[0].get<double>(), j[1].get<double>()};
    }
    throw config_error(std::string(what) + " must be a number or an [re, im] pair");
}

Foci parse_foci(const json& j) {
    if (!j.is_array() || j.size() != 2) throw config_error("foci must be a pair of complex numbers");
    Foci foci{parse_complex(j[0], "foci[0]"), parse_complex(j[1], "foci[1]")};
    if (foci.plus == foci.minus) throw config_error("foci must be distinct");
    return foci;
}

struct BranchFns {
    MapFn map;
    MapFn deriv;
};

BranchFns parse_branch(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw config_error("branch descriptor must be an object with a \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "affine") {
        const double a = require_number(j.at("a"), "affine a");
        const double b = require_number(j.at("b"), "affine b");
        return {[a, b](cplx z) { return a * z + b; }, [a](cplx) { return cplx{a, 0.0}; }};
    }
    if (type == "moebius") {
        const double a = require_number(j.at("a"), "moebius a");
        const double b = require_number(j.at("b"), "moebius b");
        const double c = require_number(j.at("c"), "moebius c");
        const double d = require_number(j.at("d"), "moebius d");
        return {[a, b, c, d](cplx z) { return (a * z + b) / (c * z + d); },
                [a, b, c, d](cplx z) {
                    const cplx den = c * z + d;
                    return (a * d - b * c) / (den * den);
                }};
    }
    if (type == "mobius_from_matrix") {
        if (!j.contains("matrix")) throw config_error("mobius_from_matrix needs a \"matrix\"");
        const json& m = j["matrix"];
        if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
            throw config_error("mobius_from_matrix matrix must be 2x2");
        }
        Eigen::Matrix2d A;
        A << require_number(m[0][0], "matrix entry"), require_number(m[0][1], "matrix entry"),
            require_number(m[1][0], "matrix entry"), require_number(m[1][1], "matrix entry");
        const double det = A.determinant();
        const MapFn w = mobius_weight_from_matrix(A);
        return {mobius_from_matrix(A), [det, w](cplx z) {
                    const cplx den = w(z);
                    return det / (den * den);
                }};
    }
    if (type == "sine_affine") {
        const double c = require_number(j.at("c"), "sine_affine c");
        const double omega = require_number(j.at("omega"), "sine_affine omega");
        const double b = require_number(j.at("b"), "sine_affine b");
        return {[c, omega, b](cplx z) { return c * std::sin(omega * z) + b; },
                [c, omega](cplx z) { return c * omega * std::cos(omega * z); }};
    }
    if (type == "rational_1branch") {
        const double a = require_number(j.at("a"), "rational_1branch a");
        return {[a](cplx z) { return z / (a + z); }, [a](cplx z) {
                    const cplx den = a + z;
                    return a / (den * den);
                }};
    }
    throw config_error("unknown branch type \"" + type + "\"");
}

std::vector<double> parse_probs(const json& j) {
    if (!j.is_array() || j.empty()) throw config_error("probs must be a nonempty array");
    std::vector<double> probs;
    for (const json& p : j) probs.push_back(require_number(p, "probability"));
    return probs;
}

}  // namespace

Config parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (root.is_object() && root.contains("config")) root = root["config"];
    if (!root.is_object()) throw config_error("config must be a JSON object");

    Config config;
    config.canonical = root.dump(2);

    if (!root.contains("kind") || !root["kind"].is_string()) {
        throw config_error("config needs a string \"kind\"");
    }
    const std::string kind = root["kind"].get<std::string>();

    Foci foci{cplx{0.0}, cplx{1.0}};
    if (root.contains("foci")) foci = parse_foci(root["foci"]);

    if (root.contains("samples")) {
        config.samples = static_cast<int>(require_number(root["samples"], "samples"));
        if (config.samples < 64) throw config_error("samples must be at least 64");
    }
    if (root.contains("R_grid")) {
        const json& g = root["R_grid"];
        config.grid_min = require_number(g.at("min"), "R_grid.min");
        config.grid_max = require_number(g.at("max"), "R_grid.max");
        config.grid_count = static_cast<int>(require_number(g.at("count"), "R_grid.count"));
        if (!(config.grid_min > 1.0) || !(config.grid_max > config.grid_min) || config.grid_count < 2) {
            throw config_error("R_grid must satisfy 1 < min < max with count >= 2");
        }
    }

    auto branch_list = [&]() {
        if (!root.contains("branches") || !root["branches"].is_array() || root["branches"].empty()) {
            throw config_error("config needs a nonempty \"branches\" array");
        }
        std::vector<BranchFns> branches;
        for (const json& b : root["branches"]) branches.push_back(parse_branch(b));
        return branches;
    };

    auto resolve_R = [&](const std::vector<MapFn>& maps) -> double {
        if (root.contains("R")) {
            const double R = require_number(root["R"], "R");
            if (!(R > 1.0)) throw config_error("R must exceed 1");
            return R;
        }
        const std::vector<double> grid = uniform_grid(config.grid_min, config.grid_max, config.grid_count);
        return contraction_search(maps, foci, grid, config.samples).R_star;
    };

    if (kind == "ellipse_system") {
        config.kind = ProblemKind::ellipse_system;
        std::vector<BranchFns> branches = branch_list();

        std::string weight_mode = "deriv";
        double const_value = 0.0;
        if (root.contains("weights")) {
            const json& w = root["weights"];
            if (w.is_string()) {
                weight_mode = w.get<std::string>();
            } else if (w.is_object() && w.contains("const")) {
                weight_mode = "const";
                const_value = require_number(w["const"], "weights.const");
            } else {
                throw config_error("weights must be \"deriv\", \"deriv_squared\", \"prob\" or {\"const\": c}");
            }
        }
        std::vector<double> probs;
        if (weight_mode == "prob") probs = parse_probs(root.at("probs"));

        config.ellipse.foci = foci;
        for (size_t i = 0; i < branches.size(); ++i) {
            MapFn weight;
            if (weight_mode == "deriv") {
                weight = branches[i].deriv;
            } else if (weight_mode == "deriv_squared") {
                const MapFn d = branches[i].deriv;
                weight = [d](cplx z) { const cplx v = d(z); return v * v; };
            } else if (weight_mode == "prob") {
                if (probs.size() != branches.size()) {
                    throw config_error("probs length must match the branch count");
                }
                const double p = probs[i];
                weight = [p](cplx) { return cplx{p, 0.0}; };
            } else if (weight_mode == "const") {
                const double c = const_value;
                weight = [c](cplx) { return cplx{c, 0.0}; };
            } else {
                throw config_error("unknown weights mode \"" + weight_mode + "\"");
            }
            config.ellipse.branches.push_back({branches[i].map, weight});
        }
        std::vector<MapFn> maps;
        for (const BranchFns& b : branches) maps.push_back(b.map);
        config.ellipse.R = resolve_R(maps);
        if (root.contains("r")) {
            const double r = require_number(root["r"], "r");
            if (!(r > 1.0) || !(r < config.ellipse.R)) throw config_error("r must lie in (1, R)");
            config.ellipse.r = r;
        }
        return config;
    }

    if (kind == "circle_system") {
        config.kind = ProblemKind::circle_system;
        if (!root.contains("branches") || !root["branches"].is_array() || root["branches"].size() != 1 ||
            !root["branches"][0].is_object() || root["branches"][0].value("type", "") != "blaschke") {
            throw config_error("circle_system expects branches = [{\"type\":\"blaschke\",\"mu\":...}]");
        }
        config.blaschke_mu = parse_complex(root["branches"][0].at("mu"), "blaschke mu");
        if (!(std::abs(config.blaschke_mu) < 1.0 / 3.0)) {
            throw config_error("blaschke mu must satisfy |mu| < 1/3");
        }
        return config;
    }

    if (kind == "random_matrices") {
        config.kind = ProblemKind::random_matrices;
        if (!root.contains("matrices") || !root["matrices"].is_array() || root["matrices"].empty()) {
            throw config_error("random_matrices needs a nonempty \"matrices\" array");
        }
        for (const json& m : root["matrices"]) {
            if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
                throw config_error("each matrix must be 2x2");
            }
            Eigen::Matrix2d A;
            A << require_number(m[0][0], "matrix entry"), require_number(m[0][1], "matrix entry"),
                require_number(m[1][0], "matrix entry"), require_number(m[1][1], "matrix entry");
            config.matrices.matrices.push_back(A);
        }
        config.matrices.probs = parse_probs(root.at("probs"));
        if (config.matrices.probs.size() != config.matrices.matrices.size()) {
            throw config_error("probs length must match the matrix count");
        }
        config.matrices.foci = foci;
        std::vector<MapFn> maps;
        for (const Eigen::Matrix2d& A : config.matrices.matrices) maps.push_back(mobius_from_matrix(A));
        config.matrices.R = resolve_R(maps);
        return config;
    }

    if (kind == "ifs") {
        config.kind = ProblemKind::ifs;
        std::vector<BranchFns> branches = branch_list();
        for (const BranchFns& b : branches) config.ifs.maps.push_back({b.map, b.deriv});
        config.ifs.probs = parse_probs(root.at("probs"));
        if (config.ifs.probs.size() != config.ifs.maps.size()) {
            throw config_error("probs length must match the branch count");
        }
        config.ifs.foci = foci;
        if (root.contains("observable")) {
            config.ifs.observable = parse_branch(root["observable"]).map;
        }
        std::vector<MapFn> maps;
        for (const BranchFns& b : branches) maps.push_back(b.map);
        config.ifs.R = resolve_R(maps);
        return config;
    }

    throw config_error("unknown kind \"" + kind + "\"");
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string format_int(int v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%d", v);
    return buf;
}

std::vector<MapFn> extract_maps(const Config& config) {
    std::vector<MapFn> maps;
    switch (config.kind) {
        case ProblemKind::ellipse_system:
            for (const MapWeightBranch& b : config.ellipse.branches) maps.push_back(b.map);
            break;
        case ProblemKind::random_matrices:
            for (const Eigen::Matrix2d& A : config.matrices.matrices) {
                maps.push_back(mobius_from_matrix(A));
            }
            break;
        case ProblemKind::ifs:
            for (const IfsBranch& b : config.ifs.maps) maps.push_back(b.map);
            break;
        case ProblemKind::circle_system:
            throw config_error("ellipse-search does not apply to circle systems");
    }
    return maps;
}

Foci config_foci(const Config& config) {
    switch (config.kind) {
        case ProblemKind::ellipse_system: return config.ellipse.foci;
        case ProblemKind::random_matrices: return config.matrices.foci;
        case ProblemKind::ifs: return config.ifs.foci;
        case ProblemKind::circle_system: break;
    }
    throw config_error("task needs an elliptic problem");
}

void require_n(const std::vector<int>& n_values) {
    if (n_values.empty()) throw config_error("this task needs --n or --n-range");
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw config_error("n values must be positive");
        if (i > 0 && n_values[i] <= n_values[i - 1]) {
            throw config_error("n values must be strictly increasing");
        }
    }
}

}  // namespace

Table run_task(const Config& config, const std::string& task, const std::vector<int>& n_values,
               int eigen_index, std::optional<int> samples_override) {
    Table table;
    const int samples = samples_override.value_or(config.samples);

    if (task == "ellipse-search") {
        const std::vector<MapFn> maps = extract_maps(config);
        const std::vector<double> grid =
            uniform_grid(config.grid_min, config.grid_max, config.grid_count);
        const ContractionReport report = contraction_search(maps, config_foci(config), grid, samples);
        table.columns = {"R_star", "r_star", "ratio", "samples"};
        table.rows.push_back({format_double(report.R_star), format_double(report.r_star),
                              format_double(report.ratio), format_int(report.samples_per_boundary)});
        return table;
    }

    require_n(n_values);

    if (task == "correlation-decay" || task == "eigenvalue") {
        const int index = task == "correlation-decay" ? 2 : eigen_index;
        if (index < 1) throw config_error("--eigen-index must be >= 1");
        if (task == "correlation-decay" && config.kind != ProblemKind::ellipse_system) {
            throw config_error("task \"correlation-decay\" needs kind ellipse_system");
        }
        std::optional<std::pair<double, double>> contraction;
        table.columns = {"n", "lambda_re", "lambda_im", "abs_diff_prev", "bound"};

        std::vector<cplx> values;
        for (const int n : n_values) {
            SpectralData data;
            if (config.kind == ProblemKind::ellipse_system) {
                if (task == "correlation-decay" && n < 2) {
                    throw config_error("correlation-decay needs n >= 2");
                }
                data = eigendecompose(assemble_cheb(config.ellipse, n));
                if (config.ellipse.r) contraction = {{*config.ellipse.r, config.ellipse.R}};
            } else if (config.kind == ProblemKind::circle_system) {
                data = blaschke_benchmark(config.blaschke_mu, n);
            } else {
                throw config_error("task \"" + task + "\" needs an ellipse_system or circle_system");
            }
            if (index > data.eigenvalues.size()) {
                throw config_error("--eigen-index exceeds the matrix dimension");
            }
            values.push_back(data.eigenvalues(index - 1));
        }
        for (size_t i = 0; i < values.size(); ++i) {
            std::vector<std::string> row{format_int(n_values[i]), format_double(values[i].real()),
                                         format_double(values[i].imag())};
            row.push_back(i == 0 ? "" : format_double(std::abs(values[i] - values[i - 1])));
            row.push_back(contraction ? format_double(std::pow(
                                            contraction->first / contraction->second, n_values[i]))
                                      : "");
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    if (task == "lyapunov") {
        if (config.kind != ProblemKind::random_matrices) {
            throw config_error("task \"lyapunov\" needs kind random_matrices");
        }
        table.columns = {"n", "lyapunov", "abs_diff_prev"};
        std::vector<double> values;
        for (const int n : n_values) values.push_back(lyapunov_matrices(config.matrices, n));
        for (size_t i = 0; i < values.size(); ++i) {
            table.rows.push_back({format_int(n_values[i]), format_double(values[i]),
                                  i == 0 ? "" : format_double(std::abs(values[i] - values[i - 1]))});
        }
        return table;
    }

    if (task == "ifs-integral" || task == "ifs-lyapunov") {
        if (config.kind != ProblemKind::ifs) {
            throw config_error("task \"" + task + "\" needs kind ifs");
        }
        if (task == "ifs-integral") {
            table.columns = {"n", "value_re", "value_im", "abs_diff_prev"};
            std::vector<cplx> values;
            for (const int n : n_values) values.push_back(ifs_integral(config.ifs, n));
            for (size_t i = 0; i < values.size(); ++i) {
                table.rows.push_back(
                    {format_int(n_values[i]), format_double(values[i].real()),
                     format_double(values[i].imag()),
                     i == 0 ? "" : format_double(std::abs(values[i] - values[i - 1]))});
            }
        } else {
            table.columns = {"n", "lyapunov", "abs_diff_prev"};
            std::vector<double> values;
            for (const int n : n_values) values.push_back(ifs_lyapunov(config.ifs, n));
            for (size_t i = 0; i < values.size(); ++i) {
                table.rows.push_back(
                    {format_int(n_values[i]), format_double(values[i]),
                     i == 0 ? "" : format_double(std::abs(values[i] - values[i - 1]))});
            }
        }
        return table;
    }

    throw config_error("unknown task \"" + task + "\"");
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const std::vector<std::string>& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json_mirror(const Config& config, const std::string& task, const Table& table) {
    json mirror;
    mirror["config"] = json::parse(config.canonical);
    mirror["task"] = task;
    mirror["columns"] = table.columns;
    mirror["rows"] = table.rows;
    return mirror.dump(2) + "\n";
}

std::vector<int> parse_n_range(const std::string& spec) {
    int lo = 0, hi = 0, step = 0, consumed = 0;
    if (std::sscanf(spec.c_str(), "%d:%d:%d%n", &lo, &hi, &step, &consumed) != 3 ||
        consumed != static_cast<int>(spec.size()) || step < 1 || lo < 1 || hi < lo) {
        throw config_error("--n-range must be MIN:MAX:STEP with 1 <= MIN <= MAX and STEP >= 1");
    }
    std::vector<int> out;
    for (int n = lo; n <= hi; n += step) out.push_back(n);
    return out;
}

}  // namespace latop
