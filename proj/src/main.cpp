// Command-line entry point: flag parsing, config loading, dispatch, and
// error-to-exit-code mapping.  All numerical work lives in the library.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "blaschke2d/commands.hpp"
#include "blaschke2d/config.hpp"
#include "blaschke2d/errors.hpp"
#include "blaschke2d/report.hpp"

namespace {

const char* error_class_name(blaschke2d::ErrorClass cls) {
    using blaschke2d::ErrorClass;
    switch (cls) {
        case ErrorClass::Parse: return "parse";
        case ErrorClass::Validation: return "validation";
        case ErrorClass::Domain: return "domain";
        case ErrorClass::Resource: return "resource";
        case ErrorClass::Numeric: return "numeric";
        case ErrorClass::Io: return "io";
    }
    return "unknown";
}

// Errors leave on stderr as JSON with the stable code, keeping stdout clean
// for the report stream.
int report_error(const blaschke2d::Error& e) {
    blaschke2d::Report err = blaschke2d::Report::object();
    err.set("code", e.code());
    err.set("class", error_class_name(e.error_class()));
    err.set("message", e.what());
    if (const auto* parse = dynamic_cast<const blaschke2d::ParseError*>(&e)) {
        err.set("line", static_cast<long long>(parse->line()));
        if (parse->column() > 0) err.set("column", static_cast<long long>(parse->column()));
    }
    blaschke2d::Report wrapper = blaschke2d::Report::object();
    wrapper.set("error", std::move(err));
    std::cerr << wrapper.to_json();
    return blaschke2d::exit_code_for(e.error_class());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-variable Blaschke product dynamics: degrees, classification, torus"};
    app.name("b2d");

    std::string command, config_path, out_path, format;
    std::uint64_t seed = 0;
    int n_max = 0, depth = 0;
    long long samples = 0;

    app.add_option("command", command,
                   "classify | lift | degrees | indeterminacy | topdeg | preimage-measure | "
                   "torus-entropy | winding | reproduce-paper (overrides the config)");
    auto* config_opt = app.add_option("--config", config_path, "run configuration file");
    auto* seed_opt = app.add_option("--seed", seed, "override the random seed");
    auto* out_opt = app.add_option("--out", out_path,
                                   "output file (reproduce-paper: report directory)");
    auto* fmt_opt = app.add_option("--format", format, "report format")
                        ->check(CLI::IsMember({"json", "csv"}));
    auto* nmax_opt = app.add_option("--n-max", n_max, "override the iterate / level count");
    auto* depth_opt = app.add_option("--depth", depth, "override the backward depth");
    auto* samples_opt = app.add_option("--samples", samples, "override the sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return blaschke2d::exit_code_for(blaschke2d::ErrorClass::Parse);
    }

    using namespace blaschke2d;
    try {
        RunConfig cfg;
        if (*config_opt) {
            cfg = parse_config(read_text_file(config_path));
        } else if (command != "reproduce-paper") {
            throw ValidationError("--config is required (only reproduce-paper runs without one)");
        }
        if (!command.empty()) {
            if (!is_known_command(command)) throw ValidationError("unknown command '" + command + "'");
            cfg.command = command;
        }
        if (*seed_opt) cfg.seed = seed;
        if (*out_opt) cfg.out_path = out_path;
        if (*fmt_opt) cfg.format = format;
        if (*nmax_opt) cfg.n_max = n_max;
        if (*depth_opt) cfg.depth = depth;
        if (*samples_opt) cfg.samples = static_cast<int>(samples);
        validate_run_config(cfg);

        Report report = run_command(cfg);
        std::string payload = cfg.format == "csv" ? report.to_csv() : report.to_json();
        // reproduce-paper already wrote its directory; its index goes to stdout.
        if (cfg.out_path.empty() || cfg.command == "reproduce-paper")
            std::cout << payload;
        else
            write_text_file(cfg.out_path, payload);
        return 0;
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
