// circle: command-line front end.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "circle/conjecture.hpp"
#include "circle/evaluator.hpp"
#include "circle/formula.hpp"
#include "circle/harness.hpp"
#include "circle/numtheory.hpp"
#include "circle/omega.hpp"
#include "circle/qseries.hpp"

namespace {

using circle::BigInt;
using nlohmann::json;

constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_file(const std::string& arg) {
    return arg.find('/') != std::string::npos || arg.ends_with(".json") ||
           std::filesystem::exists(arg);
}

json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw circle::FormatError(path + ": JSON syntax error at byte " + std::to_string(e.byte));
    }
}

circle::EtaQuotientSpec spec_from_file(const std::string& path) {
    const json j = parse_json_file(path);
    circle::EtaQuotientSpec spec;
    try {
        circle::from_json(j.contains("eta") ? j.at("eta") : j, spec);
    } catch (const json::exception& e) {
        throw circle::FormatError(path + ": not an eta quotient: " + e.what());
    }
    return spec;
}

circle::RademacherFormula load_formula(const std::string& arg) {
    if (looks_like_file(arg)) return circle::formula_from_string(read_file(arg));
    return circle::builtin_formula(arg);
}

json coeffs_json(const circle::IntSeries& s) {
    auto arr = json::array();
    for (const auto& c : s.coeffs) {
        if (abs(c) < BigInt(1) << 62) arr.push_back(c.convert_to<std::int64_t>());
        else arr.push_back(c.str());
    }
    return arr;
}

void print_series(const circle::IntSeries& s, const std::string& label, bool as_json) {
    if (as_json) {
        std::cout << json{{"name", label}, {"order", s.order()}, {"coefficients", coeffs_json(s)}}
                         .dump(2)
                  << "\n";
        return;
    }
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << s.coeffs[i];
    }
    std::cout << "\n";
}

std::string describe(const circle::RademacherFormula& f) {
    std::ostringstream os;
    os << "name: " << f.name << " [" << circle::status_name(f.status) << "]\n";
    if (!f.description.empty()) os << "description: " << f.description << "\n";
    os << "prefactor: " << circle::to_string(f.prefactor) << "\n";
    for (const auto& c : f.cases) {
        os << "case d=" << c.d << ": " << c.restriction.to_string() << "\n";
        os << "  weight: " << circle::to_string(c.weight) << "\n";
        os << "  k power: " << circle::to_string(c.k_power) << "\n";
        os << "  omega:";
        for (const auto& t : c.omega.terms) os << " (" << t.m << "," << t.e << ")";
        os << "\n";
        os << "  kernel: " << circle::kernel_kind_name(c.kernel.kind) << " order "
           << circle::to_string(c.kernel.order) << ", argument ("
           << circle::to_string(c.kernel.argument_constant) << ") sqrt("
           << circle::to_string(c.kernel.radicand) << ") / k\n";
    }
    return os.str();
}

circle::Precision precision_from(int digits) {
    return digits > 0 ? circle::Precision(digits) : circle::default_precision();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rademacher-type formulas for eta quotients: expansion, conjecture, evaluation"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable JSON output");

    // expand / reciprocal
    std::string series_name, series_spec;
    std::size_t order = 10;
    std::string method = "pentagonal";
    bool use_product = false;
    auto add_series_options = [&](CLI::App* sub) {
        auto* name_opt = sub->add_option("--name", series_name, "Registry name (p, delta, s27, ...)");
        auto* spec_opt = sub->add_option("--spec", series_spec, "Eta quotient JSON file");
        name_opt->excludes(spec_opt);
        sub->add_option("--order", order, "Highest power of q")->required();
        sub->add_flag("--json", as_json, "Machine-readable JSON output");
    };
    auto* expand = app.add_subcommand("expand", "Coefficients of an eta quotient");
    add_series_options(expand);
    expand->add_option("--method", method, "naive or pentagonal")
        ->check(CLI::IsMember({"naive", "pentagonal"}));
    expand->add_flag("--product", use_product, "Expand the registry's congruence-product form");
    auto* reciprocal = app.add_subcommand("reciprocal", "Coefficients of 1/series");
    add_series_options(reciprocal);

    // conjecture
    std::string conj_input;
    bool conj_latex = false;
    auto* conjecture = app.add_subcommand("conjecture", "Conjecture a formula from an eta quotient");
    conjecture->add_option("spec", conj_input, "Registry name or eta quotient JSON file")->required();
    conjecture->add_flag("--latex", conj_latex, "Emit LaTeX");
    conjecture->add_flag("--json", as_json, "Emit formula JSON");

    // evaluate / verify
    std::string formula_arg;
    std::int64_t eval_n = 1, K = 10, n_lo = 1, n_hi = 100;
    int digits = 0;
    bool verbose = false;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a formula at n");
    evaluate->add_option("formula", formula_arg, "Builtin name or formula JSON file")->required();
    evaluate->add_option("--n", eval_n, "Coefficient index")->required()->check(CLI::PositiveNumber);
    evaluate->add_option("--K", K, "Truncation in k")->check(CLI::PositiveNumber);
    evaluate->add_option("--digits", digits, "Significant digits (>= 15)");
    evaluate->add_flag("--json", as_json, "Machine-readable JSON output");

    auto* verify = app.add_subcommand("verify", "Compare a formula with exact coefficients");
    verify->add_option("formula", formula_arg, "Builtin name or formula JSON file")->required();
    verify->add_option("--n-lo", n_lo, "First n")->check(CLI::PositiveNumber);
    verify->add_option("--n-hi", n_hi, "Last n")->check(CLI::PositiveNumber);
    verify->add_option("--K", K, "Truncation in k")->check(CLI::PositiveNumber);
    verify->add_option("--digits", digits, "Significant digits (>= 15)");
    verify->add_flag("--verbose", verbose, "Include the per-n error vector");
    verify->add_flag("--json", as_json, "Machine-readable JSON output");

    // table
    std::string format = "markdown";
    std::string cache_dir;
    auto* table = app.add_subcommand("table", "Check the twelve tabulated formulas");
    table->add_option("--K", K, "Truncation in k")->check(CLI::PositiveNumber);
    table->add_option("--n-hi", n_hi, "Last n")->check(CLI::PositiveNumber);
    table->add_option("--digits", digits, "Significant digits (>= 15)");
    table->add_option("--format", format, "markdown, csv or json")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    table->add_option("--cache", cache_dir, "Directory for cached coefficient tables");
    table->add_flag("--json", as_json, "Same as --format json");

    // latex
    auto* latex = app.add_subcommand("latex", "Print a formula as LaTeX");
    latex->add_option("formula", formula_arg, "Builtin name or formula JSON file")->required();
    latex->add_flag("--json", as_json, "Machine-readable JSON output");

    // farey / omega
    std::int64_t farey_n = 1;
    auto* farey = app.add_subcommand("farey", "Farey fractions of order N");
    farey->add_option("N", farey_n, "Order")->required()->check(CLI::PositiveNumber);
    farey->add_flag("--json", as_json, "Machine-readable JSON output");

    std::int64_t om_h = 0, om_k = 1;
    auto* omega = app.add_subcommand("omega", "The eta multiplier omega(h,k)");
    omega->add_option("numerator", om_h, "h, coprime to k")->required();
    omega->add_option("denominator", om_k, "k >= 1")->required()->check(CLI::PositiveNumber);
    omega->add_flag("--json", as_json, "Machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*expand || *reciprocal) {
            if (series_name.empty() == series_spec.empty()) {
                throw UsageError("give exactly one of --name or --spec");
            }
            circle::IntSeries s;
            const std::string label = series_name.empty() ? series_spec : series_name;
            if (use_product) {
                if (series_name.empty()) throw UsageError("--product needs --name");
                s = circle::expand_congruence_product(circle::registry_lookup(series_name).product,
                                                      order);
            } else {
                const circle::EtaQuotientSpec spec = series_name.empty()
                                                         ? spec_from_file(series_spec)
                                                         : circle::registry_lookup(series_name).eta;
                s = circle::expand_eta_quotient(spec, order,
                                                method == "naive"
                                                    ? circle::ExpansionMethod::naive
                                                    : circle::ExpansionMethod::pentagonal);
            }
            if (*reciprocal) s = circle::series_reciprocal(s);
            print_series(s, label, as_json);
            return 0;
        }

        if (*conjecture) {
            circle::EtaQuotientSpec spec;
            std::string oracle_name;
            if (looks_like_file(conj_input)) {
                spec = spec_from_file(conj_input);
            } else {
                spec = circle::registry_lookup(conj_input).eta;
                oracle_name = conj_input;
            }
            const auto f = circle::conjecture_formula(spec, oracle_name);
            if (as_json) {
                std::cout << circle::to_json(f).dump(2) << "\n";
            } else if (conj_latex) {
                std::cout << circle::to_latex(f) << "\n";
            } else {
                for (const auto& a : circle::analyze_cases(spec)) {
                    std::cout << "d=" << a.d << " C=" << circle::to_string(a.C)
                              << " kappa=" << circle::to_string(a.kappa) << " r=" << a.r
                              << (a.contributing ? " contributing" : " dropped") << "\n";
                }
                std::cout << describe(f);
            }
            return 0;
        }

        if (*evaluate) {
            const auto f = load_formula(formula_arg);
            const auto p = precision_from(digits);
            const auto r = circle::evaluate_formula(f, eval_n, K, p);
            std::ostringstream residual;
            residual << std::scientific << std::setprecision(3) << r.imag_residual;
            const std::string value = circle::format_fixed(r.value, 20);
            if (as_json) {
                std::cout << json{{"name", f.name},        {"n", eval_n},
                                  {"K", K},                {"digits", p.digits},
                                  {"value", value},        {"rounded", r.rounded.str()},
                                  {"k_used", r.k_used},    {"imag_residual", residual.str()}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "value: " << value << "\n"
                          << "rounded: " << r.rounded << "\n"
                          << "imag_residual: " << residual.str() << "\n";
            }
            return 0;
        }

        if (*verify) {
            const auto f = load_formula(formula_arg);
            circle::VerifyOptions vo;
            vo.precision = precision_from(digits);
            vo.keep_errors = verbose;
            const auto rep = circle::verify_formula(f, n_lo, n_hi, K, vo);
            if (as_json) {
                std::cout << circle::to_json(rep).dump(2) << "\n";
            } else {
                std::cout << rep.name << ": n in [" << rep.n_lo << "," << rep.n_hi << "], K=" << rep.K
                          << "\n"
                          << "value at n=" << rep.n_hi << ": " << rep.value_at_nmax
                          << " (formula " << circle::format_fixed(rep.formula_at_nmax, 6) << ")\n"
                          << "max abs error: " << circle::format_fixed(rep.max_abs_error, 6)
                          << " at n=" << rep.worst_n << "\n"
                          << "all rounded correctly: " << (rep.all_round_correct ? "yes" : "no")
                          << "\n";
                if (verbose) {
                    for (std::size_t i = 0; i < rep.errors.size(); ++i) {
                        std::cout << (rep.n_lo + static_cast<std::int64_t>(i)) << " "
                                  << circle::format_fixed(rep.errors[i], 6) << "\n";
                    }
                }
            }
            return rep.all_round_correct ? 0 : kVerifyFailed;
        }

        if (*table) {
            circle::TableOptions to;
            to.K = K;
            to.n_hi = n_hi;
            to.precision = precision_from(digits);
            if (!cache_dir.empty()) to.cache_dir = cache_dir;
            const auto t = circle::reproduce_table(to);
            if (as_json || format == "json") {
                std::cout << circle::to_json(t).dump(2) << "\n";
            } else if (format == "csv") {
                std::cout << circle::to_csv(t);
            } else {
                std::cout << circle::to_markdown(t);
            }
            for (const auto& row : t.rows) {
                if (!row.reference_matches()) {
                    std::cerr << "warning: " << row.formula << " exact value "
                              << row.report.value_at_nmax << " differs from expected "
                              << *row.reference_value << "\n";
                }
                if (!row.max_error_close()) {
                    std::cerr << "warning: " << row.formula << " max error "
                              << circle::format_fixed(row.report.max_abs_error, 3)
                              << " differs from expected " << *row.reference_max_error
                              << " by more than 0.02\n";
                }
            }
            return t.all_pass() ? 0 : kVerifyFailed;
        }

        if (*latex) {
            const auto f = load_formula(formula_arg);
            const std::string tex = circle::to_latex(f);
            if (as_json) {
                std::cout << json{{"name", f.name}, {"latex", tex}}.dump(2) << "\n";
            } else {
                std::cout << tex << "\n";
            }
            return 0;
        }

        if (*farey) {
            const auto fs = circle::farey(farey_n);
            if (as_json) {
                auto arr = json::array();
                for (const auto& f : fs) arr.push_back(std::to_string(f.num()) + "/" + std::to_string(f.den()));
                std::cout << json{{"N", farey_n}, {"fractions", arr}}.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    if (i) std::cout << ' ';
                    std::cout << fs[i].num() << '/' << fs[i].den();
                }
                std::cout << "\n";
            }
            return 0;
        }

        if (*omega) {
            const auto w = circle::omega(om_h, om_k);
            if (as_json) {
                std::cout << json{{"h", om_h}, {"k", om_k}, {"theta", circle::to_string(w.theta())},
                                  {"value", w.to_string()}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << w.to_string() << "\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const circle::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kUsage;
}
