// Batch front-end: parse a problem description, run one task over a range of
// basis sizes, emit a CSV table (optionally with a JSON mirror that can be
// fed back as the input config).

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "latop/config.hpp"
#include "latop/types.hpp"

namespace {

void error_record(const char* category, const std::string& message) {
    std::string escaped;
    for (const char c : message) {
        if (c == '"' || c == '\\') escaped.push_back('\\');
        if (c == '\n') {
            escaped += "\\n";
            continue;
        }
        escaped.push_back(c);
    }
    std::fprintf(stderr, "{\"error\":\"%s\",\"message\":\"%s\"}\n", category, escaped.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral data of transfer operators via Lagrange-Chebyshev collocation"};
    app.get_formatter()->column_width(28);

    std::string config_path;
    std::string task;
    std::string out_path;
    std::string format = "csv";
    std::string n_range;
    std::optional<int> n_single;
    int eigen_index = 1;
    std::optional<int> samples;
    std::optional<long> seed;

    app.add_option("--config", config_path, "Problem description (JSON)")->required();
    app.add_option("--task", task,
                   "correlation-decay | eigenvalue | lyapunov | ifs-integral | "
                   "ifs-lyapunov | ellipse-search")
        ->required();
    app.add_option("--n", n_single, "Single basis size");
    app.add_option("--n-range", n_range, "Basis sizes MIN:MAX:STEP");
    app.add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    app.add_option("--format", format, "csv | json (json also writes <out>.json mirror)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--eigen-index", eigen_index, "1-based eigenvalue rank for task=eigenvalue");
    app.add_option("--samples", samples, "Boundary samples for geometry tasks");
    app.add_option("--seed", seed, "Reserved for Monte-Carlo test utilities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_record("config", e.what());
        return 2;
    }

    try {
        const latop::Config config = latop::load_config_file(config_path);

        std::vector<int> n_values;
        if (n_single && !n_range.empty()) {
            throw latop::config_error("give either --n or --n-range, not both");
        }
        if (n_single) n_values.push_back(*n_single);
        if (!n_range.empty()) n_values = latop::parse_n_range(n_range);

        const latop::Table table = latop::run_task(config, task, n_values, eigen_index, samples);
        const std::string csv = latop::to_csv(table);

        if (out_path.empty()) {
            std::fputs(csv.c_str(), stdout);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw latop::config_error("cannot open output file: " + out_path);
            out << csv;
        }
        if (format == "json") {
            if (out_path.empty()) {
                throw latop::config_error("--format json needs --out");
            }
            std::ofstream mirror(out_path + ".json", std::ios::binary);
            if (!mirror) throw latop::config_error("cannot open mirror file: " + out_path + ".json");
            mirror << latop::to_json_mirror(config, task, table);
        }
        return 0;
    } catch (const latop::config_error& e) {
        error_record("config", e.what());
        return 2;
    } catch (const latop::validation_error& e) {
        error_record("validation", e.what());
        return 3;
    } catch (const latop::numerical_error& e) {
        error_record("numerical", e.what());
        return 4;
    } catch (const std::exception& e) {
        error_record("numerical", e.what());
        return 4;
    }
}
