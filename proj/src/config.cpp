#include "blaschke2d/config.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "blaschke2d/errors.hpp"
#include "blaschke2d/report.hpp"

namespace blaschke2d {

namespace {

long long parse_ll(const std::string& tok) {
    long long v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw std::invalid_argument("bad integer '" + tok + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& tok) {
    std::uint64_t v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw std::invalid_argument("bad unsigned integer '" + tok + "'");
    return v;
}

double parse_dbl(const std::string& tok) {
    double v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw std::invalid_argument("bad number '" + tok + "'");
    return v;
}

void require_range_ll(const char* name, long long v, long long lo, long long hi) {
    if (v < lo || v > hi)
        throw ValidationError(std::string(name) + " must be in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "], got " + std::to_string(v));
}

void require_unit_interval(const char* name, double v) {
    if (!(v >= 0.0 && v < 1.0))
        throw ValidationError(std::string(name) + " must lie in [0, 1), got " + format_double(v));
}

void require_tolerance(const char* name, double v) {
    if (!(v > 0.0 && v <= 1e-2))
        throw ValidationError(std::string(name) + " must lie in (0, 1e-2], got " + format_double(v));
}

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (v == a) return true;
    return false;
}

}  // namespace

Blaschke2D RunConfig::make_map() const {
    return build_map(zeros_a, zeros_b, zeros_c, zeros_d, seed1, seed2);
}

SolverConfig RunConfig::solver() const {
    SolverConfig cfg;
    cfg.root_residual = root_residual;
    cfg.joint_residual = joint_residual;
    cfg.dedup_radius = dedup_radius;
    return cfg;
}

bool is_known_command(const std::string& name) {
    return one_of(name, {"classify", "lift", "degrees", "indeterminacy", "topdeg",
                         "preimage-measure", "torus-entropy", "winding", "reproduce-paper"});
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::optional<GaussianRational> u1, u2;
    std::vector<std::string> seen;  // singleton keys already consumed

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);

        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;  // blank / comment-only line

        const std::string& key = toks[0];
        const int column = static_cast<int>(line.find_first_not_of(" \t")) + 1;

        // Zero and rotation-seed lines: key plus four integers.
        if (one_of(key, {"a", "b", "c", "d", "u1", "u2"})) {
            if (toks.size() != 5)
                throw ParseError("expected four integers after '" + key + "'", lineno, column);
            GaussianRational g;
            try {
                g = parse_rational_fields(toks[1], toks[2], toks[3], toks[4]);
            } catch (const std::exception& e) {
                throw ParseError(std::string("bad rational pair: ") + e.what(), lineno, column);
            }
            if (key == "a") cfg.zeros_a.push_back(g);
            else if (key == "b") cfg.zeros_b.push_back(g);
            else if (key == "c") cfg.zeros_c.push_back(g);
            else if (key == "d") cfg.zeros_d.push_back(g);
            else if (key == "u1") {
                if (u1) throw ParseError("duplicate u1", lineno, column);
                u1 = g;
            } else {
                if (u2) throw ParseError("duplicate u2", lineno, column);
                u2 = g;
            }
            continue;
        }

        // Parameter lines: key plus exactly one value token.
        if (toks.size() != 2)
            throw ParseError("expected one value after '" + key + "'", lineno, column);
        for (const auto& s : seen)
            if (s == key) throw ParseError("duplicate key '" + key + "'", lineno, column);
        seen.push_back(key);
        const std::string& val = toks[1];

        try {
            if (key == "command") {
                if (!is_known_command(val))
                    throw ParseError("unknown command '" + val + "'", lineno, column);
                cfg.command = val;
            } else if (key == "n_max") {
                cfg.n_max = static_cast<int>(parse_ll(val));
            } else if (key == "depth") {
                cfg.depth = static_cast<int>(parse_ll(val));
            } else if (key == "samples") {
                cfg.samples = static_cast<int>(parse_ll(val));
            } else if (key == "seed") {
                cfg.seed = parse_u64(val);
            } else if (key == "base_x") {
                cfg.base_x = parse_dbl(val);
            } else if (key == "base_y") {
                cfg.base_y = parse_dbl(val);
            } else if (key == "branch_rule") {
                cfg.branch_rule = val;
            } else if (key == "strategy") {
                cfg.strategy = val;
            } else if (key == "zero_modulus_cap") {
                cfg.zero_modulus_cap = parse_dbl(val);
            } else if (key == "root_residual") {
                cfg.root_residual = parse_dbl(val);
            } else if (key == "joint_residual") {
                cfg.joint_residual = parse_dbl(val);
            } else if (key == "dedup_radius") {
                cfg.dedup_radius = parse_dbl(val);
            } else if (key == "out") {
                cfg.out_path = val;
            } else if (key == "format") {
                cfg.format = val;
            } else {
                throw ParseError("unknown key '" + key + "'", lineno, column);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno, column);
        }
    }
    if (u1) cfg.seed1 = *u1;
    if (u2) cfg.seed2 = *u2;
    validate_run_config(cfg);
    return cfg;
}

void validate_run_config(const RunConfig& cfg) {
    // Range validation; violations name the offending parameter.
    require_range_ll("n_max", cfg.n_max, 1, 64);
    require_range_ll("depth", cfg.depth, 1, 32);
    require_range_ll("samples", cfg.samples, 1, 10000000);
    require_unit_interval("base_x", cfg.base_x);
    require_unit_interval("base_y", cfg.base_y);
    if (!(cfg.zero_modulus_cap > 0.0 && cfg.zero_modulus_cap <= 1.0))
        throw ValidationError("zero_modulus_cap must lie in (0, 1], got " +
                              format_double(cfg.zero_modulus_cap));
    require_tolerance("root_residual", cfg.root_residual);
    require_tolerance("joint_residual", cfg.joint_residual);
    require_tolerance("dedup_radius", cfg.dedup_radius);
    if (!one_of(cfg.branch_rule, {"uniform", "multiplicity-weighted"}))
        throw ValidationError("branch_rule must be 'uniform' or 'multiplicity-weighted', got '" +
                              cfg.branch_rule + "'");
    if (!one_of(cfg.strategy, {"auto", "exact-generic", "numeric", "monomial"}))
        throw ValidationError(
            "strategy must be one of auto|exact-generic|numeric|monomial, got '" + cfg.strategy +
            "'");
    if (!one_of(cfg.format, {"json", "csv"}))
        throw ValidationError("format must be 'json' or 'csv', got '" + cfg.format + "'");

    // Map invariants (disc membership, determinant, nonempty factors).
    // reproduce-paper builds its own example maps, so a config that carries
    // no zero lines at all is legal for it.
    bool has_map = !(cfg.zeros_a.empty() && cfg.zeros_b.empty() && cfg.zeros_c.empty() &&
                     cfg.zeros_d.empty());
    if (has_map || cfg.command != "reproduce-paper") cfg.make_map();
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    if (!cfg.command.empty()) out << "command " << cfg.command << "\n";
    for (const auto& z : cfg.zeros_a) out << "a " << rational_fields(z) << "\n";
    for (const auto& z : cfg.zeros_b) out << "b " << rational_fields(z) << "\n";
    for (const auto& z : cfg.zeros_c) out << "c " << rational_fields(z) << "\n";
    for (const auto& z : cfg.zeros_d) out << "d " << rational_fields(z) << "\n";
    out << "u1 " << rational_fields(cfg.seed1) << "\n";
    out << "u2 " << rational_fields(cfg.seed2) << "\n";
    out << "n_max " << cfg.n_max << "\n";
    out << "depth " << cfg.depth << "\n";
    out << "samples " << cfg.samples << "\n";
    out << "seed " << cfg.seed << "\n";
    out << "base_x " << format_double(cfg.base_x) << "\n";
    out << "base_y " << format_double(cfg.base_y) << "\n";
    out << "branch_rule " << cfg.branch_rule << "\n";
    out << "strategy " << cfg.strategy << "\n";
    out << "zero_modulus_cap " << format_double(cfg.zero_modulus_cap) << "\n";
    out << "root_residual " << format_double(cfg.root_residual) << "\n";
    out << "joint_residual " << format_double(cfg.joint_residual) << "\n";
    out << "dedup_radius " << format_double(cfg.dedup_radius) << "\n";
    out << "format " << cfg.format << "\n";
    if (!cfg.out_path.empty()) out << "out " << cfg.out_path << "\n";
    return out.str();
}

}  // namespace blaschke2d
