#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <psi_opcalc/appell.hpp>
#include <psi_opcalc/identities.hpp>
#include <psi_opcalc/operator_series.hpp>
#include <psi_opcalc/polynomial.hpp>
#include <psi_opcalc/psi_family.hpp>
#include <psi_opcalc/solver.hpp>

namespace psi_opcalc::cli
{

inline constexpr const char *schema_version = "psi-opcalc/1";

enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    config_error = 2,
    not_delta_operator = 3,
    residual_nonzero = 4,
    identity_failure = 5,
};

enum class Format { pretty, json, csv };

/// A configuration error tied to the flag that caused it.
class ConfigError : public Error
{
public:
    ConfigError(const std::string &field, const std::string &what) : Error(field + ": " + what) {}
};

struct CliConfig {
    std::string psi_spec = "classical";
    std::string operator_spec = "delta_psi";
    std::string phi_spec;
    std::string special;
    std::size_t degree = 0;
    std::string format;
    std::string out_path;
};

namespace detail
{

using json = nlohmann::ordered_json;

inline Format parse_format(const std::string &text, const std::string &field)
{
    if (text == "pretty") {
        return Format::pretty;
    }
    if (text == "json") {
        return Format::json;
    }
    if (text == "csv") {
        return Format::csv;
    }
    throw ConfigError(field, "unknown format '" + text + "' (expected json, csv or pretty)");
}

inline PsiFamily family_from(const CliConfig &cfg)
{
    try {
        return make_family(cfg.psi_spec);
    } catch (const Error &e) {
        throw ConfigError("--psi", e.what());
    }
}

inline OperatorSeries operator_from(const CliConfig &cfg, const PsiFamily &family)
{
    try {
        return make_operator(cfg.operator_spec, family);
    } catch (const ParseError &e) {
        throw ConfigError("--Q", e.what());
    }
}

inline json string_array(const std::vector<std::string> &items)
{
    json arr = json::array();
    for (const auto &s : items) {
        arr.push_back(s);
    }
    return arr;
}

inline json rational_array(const std::vector<Rational> &items)
{
    json arr = json::array();
    for (const auto &r : items) {
        arr.push_back(to_string(r));
    }
    return arr;
}

inline json header(const PsiFamily &family)
{
    json j;
    j["schema"] = schema_version;
    j["psi"] = family.name();
    return j;
}

inline void emit_json(std::ostream &out, const json &j)
{
    out << j.dump(2) << '\n';
}

/// Left-aligned columns separated by two spaces.
inline void emit_table(std::ostream &out, const std::vector<std::vector<std::string>> &rows)
{
    std::vector<std::size_t> width;
    for (const auto &row : rows) {
        width.resize(std::max(width.size(), row.size()));
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) {
                line += std::string(width[c] - row[c].size() + 2, ' ');
            }
        }
        out << line << '\n';
    }
}

inline void emit_csv(std::ostream &out, const std::vector<std::vector<std::string>> &rows)
{
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << '\n';
    }
}

inline std::vector<std::string> padded_coeffs(const Polynomial &p, std::size_t width)
{
    std::vector<std::string> out;
    for (std::size_t k = 0; k < width; ++k) {
        out.push_back(to_string(p.coefficient(k)));
    }
    return out;
}

inline int cmd_numbers(const CliConfig &cfg, Format fmt, std::ostream &out)
{
    const PsiFamily family = family_from(cfg);
    std::vector<std::vector<std::string>> rows;
    json j = header(family);
    j["rows"] = json::array();
    for (std::size_t n = 0; n <= cfg.degree; ++n) {
        const auto v = to_string(n_psi(family, n));
        const auto f = to_string(psi_factorial(family, n));
        rows.push_back({std::to_string(n), v, f});
        j["rows"].push_back({{"n", n}, {"n_psi", v}, {"n_psi_factorial", f}});
    }
    if (fmt == Format::json) {
        emit_json(out, j);
    } else {
        rows.insert(rows.begin(), {"n", "n_psi", fmt == Format::csv ? "n_psi_factorial" : "n_psi!"});
        fmt == Format::csv ? emit_csv(out, rows) : emit_table(out, rows);
    }
    return ok;
}

inline int cmd_appell(const CliConfig &cfg, Format fmt, std::ostream &out)
{
    const PsiFamily family = family_from(cfg);
    const OperatorSeries q = operator_from(cfg, family);
    const AppellFamily fam = appell_family_from_delta(q, family, cfg.degree);

    if (fmt == Format::json) {
        json j = header(family);
        j["Q"] = cfg.operator_spec;
        j["rows"] = json::array();
        for (std::size_t n = 0; n < fam.size(); ++n) {
            j["rows"].push_back({{"n", n},
                                 {"A_n", to_string(fam.numbers.values[n])},
                                 {"poly", string_array(coefficient_strings(fam.polys[n]))}});
        }
        emit_json(out, j);
        return ok;
    }
    std::vector<std::vector<std::string>> rows;
    if (fmt == Format::csv) {
        std::vector<std::string> head{"n", "A_n"};
        for (std::size_t k = 0; k < fam.size(); ++k) {
            head.push_back("c" + std::to_string(k));
        }
        rows.push_back(head);
        for (std::size_t n = 0; n < fam.size(); ++n) {
            std::vector<std::string> row{std::to_string(n), to_string(fam.numbers.values[n])};
            for (auto &c : padded_coeffs(fam.polys[n], fam.size())) {
                row.push_back(std::move(c));
            }
            rows.push_back(std::move(row));
        }
        emit_csv(out, rows);
        return ok;
    }
    rows.push_back({"n", "A_n", "A_n(x)"});
    for (std::size_t n = 0; n < fam.size(); ++n) {
        rows.push_back({std::to_string(n), to_string(fam.numbers.values[n]), to_string(fam.polys[n])});
    }
    emit_table(out, rows);
    return ok;
}

inline int cmd_special(const CliConfig &cfg, Format fmt, std::ostream &out)
{
    const PsiFamily family = family_from(cfg);
    Polynomial p;
    std::string symbol;
    if (cfg.special == "hermite") {
        p = hermite_psi(family, cfg.degree);
        symbol = "H";
    } else if (cfg.special == "laguerre") {
        if (cfg.degree == 0) {
            throw ConfigError("-n", "laguerre needs n >= 1");
        }
        p = laguerre_psi(family, cfg.degree);
        symbol = "L";
    } else {
        throw ConfigError("family", "unknown special family '" + cfg.special + "' (expected hermite or laguerre)");
    }

    if (fmt == Format::json) {
        json j = header(family);
        j["family"] = cfg.special;
        j["n"] = cfg.degree;
        j["poly"] = string_array(coefficient_strings(p));
        emit_json(out, j);
    } else if (fmt == Format::csv) {
        std::vector<std::string> head{"n"}, row{std::to_string(cfg.degree)};
        for (std::size_t k = 0; k <= cfg.degree; ++k) {
            head.push_back("c" + std::to_string(k));
            row.push_back(to_string(p.coefficient(k)));
        }
        emit_csv(out, {head, row});
    } else {
        out << symbol << "_" << cfg.degree << "(x) = " << to_string(p) << '\n';
    }
    return ok;
}

inline int cmd_solve(const CliConfig &cfg, Format fmt, std::ostream &out, std::ostream &err)
{
    const PsiFamily family = family_from(cfg);
    const OperatorSeries q = operator_from(cfg, family);
    Polynomial phi;
    try {
        phi = parse_polynomial(cfg.phi_spec);
    } catch (const ParseError &e) {
        throw ConfigError("--phi", e.what());
    }
    const SolveResult result = solve(q, family, phi);

    if (fmt == Format::json) {
        json j = header(family);
        j["Q"] = cfg.operator_spec;
        j["phi"] = string_array(coefficient_strings(phi));
        j["solution"] = string_array(coefficient_strings(result.solution));
        j["appell_numbers"] = rational_array(result.appell_numbers_used.values);
        j["residual"] = string_array(coefficient_strings(result.residual));
        emit_json(out, j);
    } else if (fmt == Format::csv) {
        const auto row = [](std::string name, const std::vector<std::string> &items) {
            std::vector<std::string> r{std::move(name)};
            r.insert(r.end(), items.begin(), items.end());
            return r;
        };
        std::vector<std::string> numbers;
        for (const auto &a : result.appell_numbers_used.values) {
            numbers.push_back(to_string(a));
        }
        emit_csv(out, {row("phi", coefficient_strings(phi)), row("solution", coefficient_strings(result.solution)),
                       row("appell_numbers", numbers), row("residual", coefficient_strings(result.residual))});
    } else {
        out << "phi(x) = " << to_string(phi) << '\n';
        out << "f(x) = " << to_string(result.solution) << '\n';
        out << "A_n:";
        for (const auto &a : result.appell_numbers_used.values) {
            out << ' ' << to_string(a);
        }
        out << '\n';
        out << "residual = " << to_string(result.residual) << '\n';
    }
    if (!result.residual.is_zero()) {
        err << "error: residual Q f - phi is nonzero: " << to_string(result.residual) << '\n';
        return residual_nonzero;
    }
    return ok;
}

inline int cmd_check(const CliConfig &cfg, Format fmt, std::ostream &out)
{
    const PsiFamily family = family_from(cfg);
    const auto results = run_identity_suite(family, cfg.degree);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto &r) { return r.passed; });

    if (fmt == Format::json) {
        json j = header(family);
        j["degree"] = cfg.degree;
        j["results"] = json::array();
        for (const auto &r : results) {
            j["results"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        }
        j["all_passed"] = all;
        emit_json(out, j);
    } else if (fmt == Format::csv) {
        std::vector<std::vector<std::string>> rows{{"identity", "passed", "detail"}};
        for (const auto &r : results) {
            rows.push_back({"\"" + r.name + "\"", r.passed ? "true" : "false", "\"" + r.detail + "\""});
        }
        emit_csv(out, rows);
    } else {
        for (const auto &r : results) {
            out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
            if (!r.passed) {
                out << "  (" << r.detail << ")";
            }
            out << '\n';
        }
    }
    return all ? ok : identity_failure;
}

} // namespace detail

/// Runs the command line. Data goes to `out` (or the --out file), diagnostics to `err`.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact psi-extended finite operator calculus", "psi_opcalc"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto *numbers = app.add_subcommand("numbers", "table of n_psi and n_psi!");
    numbers->add_option("-n,--degree", cfg.degree, "largest n")->check(CLI::NonNegativeNumber);

    auto *appell = app.add_subcommand("appell", "Appell-Ward numbers A_n and polynomials A_n(x)");
    appell->add_option("-n,--degree", cfg.degree, "largest n")->check(CLI::NonNegativeNumber);

    auto *special = app.add_subcommand("special", "psi-Hermite or psi-Laguerre polynomial");
    special->add_option("family", cfg.special, "hermite | laguerre")->required();
    special->add_option("-n,--degree", cfg.degree, "index n")->required()->check(CLI::NonNegativeNumber);

    auto *solve_cmd = app.add_subcommand("solve", "solve Q(d_psi) f = phi exactly");
    solve_cmd->add_option("--phi", cfg.phi_spec, "\"x^2 - x + 1/6\" or coefficient list \"c0,c1,...\"")->required();

    auto *check = app.add_subcommand("check", "run the identity suite");
    check->add_option("-n,--degree", cfg.degree, "largest degree")->check(CLI::NonNegativeNumber);

    // Shared flags; degree defaults differ per command and are applied after parsing.
    for (auto *sub : {numbers, appell, special, solve_cmd, check}) {
        sub->add_option("--psi", cfg.psi_spec, "classical | fibonacci | q=<p/q> | custom=<path>");
        sub->add_option("--format", cfg.format, "json | csv | pretty (default: $PSI_OPCALC_FORMAT or pretty)");
        sub->add_option("--out", cfg.out_path, "write data to this file instead of stdout");
    }
    for (auto *sub : {appell, solve_cmd}) {
        sub->add_option("--Q", cfg.operator_spec, "deriv | delta_psi | custom:<file> | \"c0,c1,...\"");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    const auto degree_given = [&cfg](CLI::App *sub) { return sub->count("--degree") > 0; };
    if (*numbers && !degree_given(numbers)) {
        cfg.degree = 10;
    }
    if (*appell && !degree_given(appell)) {
        cfg.degree = 8;
    }
    if (*check && !degree_given(check)) {
        cfg.degree = 10;
    }

    std::ostringstream data;
    int code = ok;
    try {
        std::string fmt_text = cfg.format;
        std::string fmt_field = "--format";
        if (fmt_text.empty()) {
            const char *env = std::getenv("PSI_OPCALC_FORMAT");
            fmt_text = env && *env ? env : "pretty";
            fmt_field = "PSI_OPCALC_FORMAT";
        }
        const Format fmt = detail::parse_format(fmt_text, fmt_field);

        if (*numbers) {
            code = detail::cmd_numbers(cfg, fmt, data);
        } else if (*appell) {
            code = detail::cmd_appell(cfg, fmt, data);
        } else if (*special) {
            code = detail::cmd_special(cfg, fmt, data);
        } else if (*solve_cmd) {
            code = detail::cmd_solve(cfg, fmt, data, err);
        } else if (*check) {
            code = detail::cmd_check(cfg, fmt, data);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const NotDeltaOperator &e) {
        err << "error: --Q: " << e.what() << '\n';
        return not_delta_operator;
    } catch (const NotInvertible &e) {
        err << "error: --Q: " << e.what() << '\n';
        return not_delta_operator;
    } catch (const ZeroPsiValue &e) {
        err << "error: --psi: " << e.what() << '\n';
        return config_error;
    } catch (const DegenerateQ &e) {
        err << "error: --psi: " << e.what() << '\n';
        return config_error;
    } catch (const IndexError &e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return internal_error;
    }

    if (cfg.out_path.empty()) {
        out << data.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file || !(file << data.str())) {
            err << "error: --out: cannot write '" << cfg.out_path << "'\n";
            return config_error;
        }
    }
    return code;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace psi_opcalc::cli
