// fracleibniz: evaluate, verify and tabulate truncated fractional product rules.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracleibniz/cli/ast.hpp"
#include "fracleibniz/cli/commands.hpp"
#include "fracleibniz/cli/eval.hpp"
#include "fracleibniz/cli/verify.hpp"
#include "fracleibniz/exactnum.hpp"
#include "fracleibniz_manifest.hpp"

namespace fl = fracleibniz;
namespace flc = fracleibniz::cli;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;

// "x=v" or "v".
fl::Rational parse_at(const std::string& s)
{
    auto eq = s.find('=');
    if (eq != std::string::npos) {
        std::string var = s.substr(0, eq);
        var.erase(0, var.find_first_not_of(' '));
        var.erase(var.find_last_not_of(' ') + 1);
        if (var != "x") throw fl::parse_error("--at expects x=<rational>", 0);
        return fl::parse_rational(s.substr(eq + 1));
    }
    return fl::parse_rational(s);
}

// "lo:hi" or a single value.
std::pair<std::size_t, std::size_t> parse_range(const std::string& s)
{
    auto colon = s.find(':');
    auto num = [](const std::string& t) -> std::size_t {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad range bound '" + t + "'");
        return std::stoul(t);
    };
    if (colon == std::string::npos) {
        std::size_t v = num(s);
        return {v, v};
    }
    return {num(s.substr(0, colon)), num(s.substr(colon + 1))};
}

nlohmann::json load_manifest(const std::string& path)
{
    if (path.empty()) return nlohmann::json::parse(fracleibniz_tool::verify_manifest);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest " + path);
    return nlohmann::json::parse(in);
}

void print_error(const std::string& what) { std::cerr << "error: " << what << "\n"; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact truncated fractional Leibniz rules: evaluation, verification, tables and benchmarks"};
    app.require_subcommand(1);

    std::string order_text = "1/2";
    std::string format_text = "text";
    std::size_t truncation = 16;
    std::size_t digits = 15;

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate D^a of an expression, e.g. \"D[falling(3)*(x^2+1); 1/2]\"");
    std::string expr;
    std::string at_text;
    eval->add_option("expression", expr, "Expression to evaluate")->required();
    eval->add_option("--order", order_text, "Order used when the expression has no outer D[...]")->capture_default_str();
    eval->add_option("--format", format_text, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}))->capture_default_str();
    eval->add_option("--at", at_text, "Append a numeric value at x=v (v > 0 for fractional results)");
    eval->add_option("--digits", digits, "Significant digits for --at")->check(CLI::Range(1, 1000))->capture_default_str();
    eval->add_option("--trunc", truncation, "Truncation order K for 0F1 series")->check(CLI::Range(0, 2000))->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Run the exact verification suites");
    std::string suite = "all";
    std::optional<std::uint64_t> seed;
    std::string manifest_path;
    std::string fault;
    bool verbose = false;
    std::string verify_format = "text";
    verify->add_option("suite,--suite", suite, "all, xn, hyp, sheffer, lemmas, prop1, generalized")->capture_default_str();
    verify->add_option("--seed", seed, "Seed for randomized grid points (default: manifest seed)");
    verify->add_option("--manifest", manifest_path, "Grid manifest (default: the built-in copy)");
    verify->add_option("--format", verify_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--verbose", verbose, "List passing instances too");
    verify->add_option("--inject-fault", fault, "Testing aid")->check(CLI::IsMember({"stirling1-sign"}))->group("");

    // table
    auto* table = app.add_subcommand("table", "Print stirling1 N | stirling2 N | sheffer FAMILY N | weights FAMILY M");
    std::vector<std::string> table_args;
    std::string beta_text = "0";
    std::size_t cap = 20;
    std::string table_format = "text";
    table->add_option("args", table_args, "Table kind and parameters")->required();
    table->add_option("--beta", beta_text, "Laguerre parameter")->capture_default_str();
    table->add_option("--cap", cap, "Largest N accepted")->capture_default_str();
    table->add_option("--format", table_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // bench
    auto* bench = app.add_subcommand("bench", "Time the truncated, classical and expanded paths for D^a[x^n f]");
    std::string n_range = "0:8";
    std::string deg_range = "0:4";
    std::size_t reps = 3;
    std::uint64_t bench_seed = 1;
    std::string bench_format = "text";
    bench->add_option("--n", n_range, "n or lo:hi")->capture_default_str();
    bench->add_option("--degf", deg_range, "deg f or lo:hi")->capture_default_str();
    bench->add_option("--order", order_text, "Fractional order a")->capture_default_str();
    bench->add_option("--reps", reps, "Repetitions per path")->capture_default_str();
    bench->add_option("--seed", bench_seed, "Seed for the random f")->capture_default_str();
    bench->add_option("--format", bench_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (eval->parsed()) {
            flc::EvalOptions opt;
            opt.order = fl::parse_rational(order_text);
            opt.truncation = truncation;
            opt.digits = digits;
            if (!at_text.empty()) opt.at = parse_at(at_text);
            flc::NodePtr ast;
            try {
                ast = flc::parse_expression(expr);
            } catch (const fl::parse_error& e) {
                print_error(std::string("syntax: ") + e.what());
                std::cerr << "  " << expr << "\n  " << std::string(e.offset(), ' ') << "^\n";
                return exit_usage;
            }
            auto ev = flc::evaluate(ast, opt);
            std::cout << flc::render_result(ev, opt, flc::parse_format(format_text)) << "\n";
            return exit_ok;
        }

        if (verify->parsed()) {
            if (fault == "stirling1-sign") fl::set_stirling1_sign_fault(true);
            nlohmann::json manifest = load_manifest(manifest_path);
            std::uint64_t s = seed ? *seed : manifest.at("seed").get<std::uint64_t>();
            auto reports = flc::run_verify(suite, manifest, s);
            if (verify_format == "json")
                std::cout << flc::reports_to_json(reports).dump() << "\n";
            else
                std::cout << flc::reports_to_text(reports, verbose);
            for (const auto& r : reports)
                if (r.failed()) return exit_verify_failed;
            return exit_ok;
        }

        if (table->parsed()) {
            flc::TableRequest req;
            req.cap = cap;
            req.beta = fl::parse_rational(beta_text);
            req.kind = table_args.at(0);
            auto count = [&](std::size_t i) -> std::size_t {
                if (table_args.size() != i + 1) throw std::invalid_argument("table " + req.kind + " expects " + std::to_string(i) + " argument(s) after the kind");
                const std::string& t = table_args[i];
                if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("expected a count, got '" + t + "'");
                return std::stoul(t);
            };
            if (req.kind == "sheffer" || req.kind == "weights") {
                if (table_args.size() < 2) throw std::invalid_argument("table " + req.kind + " expects FAMILY N");
                req.family = table_args[1];
                req.n = count(2);
            } else {
                req.n = count(1);
            }
            std::cout << flc::run_table(req, table_format == "json" ? flc::Format::json : flc::Format::text);
            if (table_format == "json") std::cout << "\n";
            return exit_ok;
        }

        if (bench->parsed()) {
            flc::BenchRequest req;
            std::tie(req.n_lo, req.n_hi) = parse_range(n_range);
            std::tie(req.deg_lo, req.deg_hi) = parse_range(deg_range);
            req.order = fl::parse_rational(order_text);
            req.reps = reps;
            req.seed = bench_seed;
            try {
                auto rows = flc::run_bench(req);
                std::cout << (bench_format == "json" ? flc::bench_to_json(rows) + "\n" : flc::bench_to_text(rows));
            } catch (const flc::bench_mismatch_error& e) {
                print_error(e.what());
                return exit_verify_failed;
            }
            return exit_ok;
        }
    } catch (const fl::parse_error& e) {
        print_error(std::string("syntax: ") + e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        print_error(e.what());
        return exit_usage;
    }
    return exit_usage;
}
