#pragma once

// The table and bench subcommands.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "../exactnum.hpp"
#include "../fracpoly.hpp"
#include "../leibniz.hpp"
#include "../polynomial.hpp"
#include "../sheffer.hpp"
#include "eval.hpp"
#include "random.hpp"

namespace fracleibniz::cli {

class cap_exceeded_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline ShefferFamily family_by_name(const std::string& name, const Rational& beta = 0)
{
    if (name == "bell" || name == "exponential") return families::exponential();
    if (name == "monomial") return families::monomial();
    Node n;
    n.kind = NodeKind::family;
    n.name = name;
    n.has_beta = true;
    n.value = beta;
    return family_of(n);
}

// Ascending-degree spelling used in tables: "x + 3·x^2 + x^3".
inline std::string poly_ascending(const Poly& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const Rational& c = p.coefficient(k);
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        out += first ? (c < 0 ? "−" : "") : (c < 0 ? " − " : " + ");
        first = false;
        std::string xp = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
        std::string cs = is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")";
        out += xp.empty() ? cs : (mag == 1 ? xp : cs + "·" + xp);
    }
    return out;
}

// c·(a)_u written out as a product: "−a", "a(a−1)", "3a(a−1)(a−2)".
inline std::string factored_weight(const WeightEntry& w)
{
    if (w.u == 0) return detail::text_rational(w.coefficient);
    Rational mag = w.coefficient < 0 ? Rational(-w.coefficient) : w.coefficient;
    std::string out = w.coefficient < 0 ? "−" : "";
    if (mag != 1) out += is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")";
    out += "a";
    for (std::size_t i = 1; i < w.u; ++i) out += "(a−" + std::to_string(i) + ")";
    return out;
}

struct TableRequest {
    std::string kind;   // stirling1, stirling2, sheffer, weights
    std::string family; // for sheffer / weights
    Rational beta = 0;
    std::size_t n = 0;
    std::size_t cap = 20;
};

inline std::string run_table(const TableRequest& req, Format fmt)
{
    if (req.n > req.cap)
        throw cap_exceeded_error("N = " + std::to_string(req.n) + " exceeds the table cap " + std::to_string(req.cap));

    nlohmann::ordered_json j;
    std::vector<std::string> lines;

    if (req.kind == "stirling1" || req.kind == "stirling2") {
        const bool first = req.kind == "stirling1";
        std::vector<std::vector<std::string>> rows;
        std::size_t width = 1;
        for (std::size_t n = 0; n <= req.n; ++n) {
            std::vector<std::string> row;
            for (std::size_t k = 0; k <= n; ++k) {
                row.push_back(to_string(first ? stirling_first(n, k) : stirling_second(n, k)));
                width = std::max(width, row.back().size());
            }
            rows.push_back(row);
        }
        j["kind"] = req.kind;
        j["rows"] = rows;
        for (std::size_t n = 0; n < rows.size(); ++n) {
            std::string line = "n=" + std::to_string(n) + (n < 10 && req.n >= 10 ? " " : "") + ":";
            for (const auto& v : rows[n]) line += " " + std::string(width - v.size(), ' ') + v;
            lines.push_back(line);
        }
    } else if (req.kind == "sheffer") {
        ShefferFamily fam = family_by_name(req.family, req.beta);
        j["kind"] = "sheffer";
        j["family"] = fam.name();
        if (fam.beta()) j["beta"] = to_string(*fam.beta());
        nlohmann::ordered_json polys = nlohmann::ordered_json::array();
        for (std::size_t n = 0; n <= req.n; ++n) {
            Poly p = fam.polynomial(n);
            std::vector<std::string> coeffs;
            for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
            polys.push_back(coeffs);
            lines.push_back("s_" + std::to_string(n) + "(x) = " + poly_ascending(p));
        }
        j["coefficients"] = polys;
    } else if (req.kind == "weights") {
        ShefferFamily fam = family_by_name(req.family, req.beta);
        j["kind"] = "weights";
        j["family"] = fam.name();
        j["m"] = req.n;
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        std::string line = "m=" + std::to_string(req.n) + ":";
        bool any = false;
        for (const auto& w : product_rule_weights(fam.kind(), req.n)) {
            entries.push_back({{"u", w.u}, {"coefficient", to_string(w.coefficient)}, {"factored", factored_weight(w)}});
            line += std::string(any ? "," : "") + " u=" + std::to_string(w.u) + ": " + factored_weight(w);
            any = true;
        }
        j["weights"] = entries;
        lines.push_back(line);
    } else {
        throw std::invalid_argument("unknown table kind '" + req.kind + "' (expected stirling1, stirling2, sheffer, weights)");
    }

    if (fmt == Format::json) return j.dump();
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

struct BenchRow {
    std::size_t n = 0;
    std::size_t deg_f = 0;
    std::size_t truncated_terms = 0;
    std::size_t classical_terms = 0;
    std::size_t expanded_terms = 0;
    double truncated_ms = 0;
    double classical_ms = 0;
    double expanded_ms = 0;
    bool agree = false;
};

class bench_mismatch_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Times the three evaluation paths of D^a [x^n f] and checks that they agree.
inline BenchRow bench_point(std::size_t n, const Poly& f, const Rational& a, std::size_t reps)
{
    using clock = std::chrono::steady_clock;
    auto time = [&](auto&& fn, FracPoly& out) {
        auto t0 = clock::now();
        for (std::size_t i = 0; i < std::max<std::size_t>(reps, 1); ++i) out = fn();
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count() / static_cast<double>(std::max<std::size_t>(reps, 1));
    };
    BenchRow row;
    row.n = n;
    row.deg_f = static_cast<std::size_t>(std::max<long>(f.degree(), 0));
    FracPoly t, c, e;
    row.truncated_ms = time([&] { return thm_xn_product(n, f, a); }, t);
    row.classical_ms = time([&] { return classical_leibniz_terminating(n, f, a); }, c);
    row.expanded_ms = time([&] { return rl_frac_derivative(shift(f, n), a); }, e);
    row.truncated_terms = n + 1;
    row.classical_terms = row.deg_f + 1;
    row.expanded_terms = 0;
    for (const auto& v : f.coefficients()) row.expanded_terms += v != 0;
    row.agree = t == c && c == e;
    if (!row.agree)
        throw bench_mismatch_error("paths disagree at n=" + std::to_string(n) + " deg_f=" + std::to_string(row.deg_f) + " a=" + to_string(a));
    return row;
}

struct BenchRequest {
    std::size_t n_lo = 0, n_hi = 0;
    std::size_t deg_lo = 0, deg_hi = 0;
    Rational order = Rational(1, 2);
    std::size_t reps = 3;
    std::uint64_t seed = 1;
    std::size_t cap = 400;
};

inline std::vector<BenchRow> run_bench(const BenchRequest& req)
{
    if (req.n_hi > req.cap || req.deg_hi > req.cap)
        throw cap_exceeded_error("bench ranges are capped at " + std::to_string(req.cap));
    if (req.n_lo > req.n_hi || req.deg_lo > req.deg_hi) throw std::invalid_argument("empty bench range");
    Rng rng(req.seed);
    std::vector<BenchRow> rows;
    for (std::size_t d = req.deg_lo; d <= req.deg_hi; ++d) {
        Poly f = rng.poly(d);
        for (std::size_t n = req.n_lo; n <= req.n_hi; ++n) rows.push_back(bench_point(n, f, req.order, req.reps));
    }
    return rows;
}

inline std::string bench_to_text(const std::vector<BenchRow>& rows)
{
    char buf[256];
    std::string out = "    n  deg_f  truncated(terms, ms)  classical(terms, ms)  expanded(terms, ms)  agree\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%5zu  %5zu  %8zu %11.4f  %8zu %11.4f  %8zu %10.4f  %s\n", r.n, r.deg_f, r.truncated_terms,
                      r.truncated_ms, r.classical_terms, r.classical_ms, r.expanded_terms, r.expanded_ms, r.agree ? "yes" : "NO");
        out += buf;
    }
    return out;
}

inline std::string bench_to_json(const std::vector<BenchRow>& rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"deg_f", r.deg_f},
                       {"truncated", {{"terms", r.truncated_terms}, {"ms", r.truncated_ms}}},
                       {"classical", {{"terms", r.classical_terms}, {"ms", r.classical_ms}}},
                       {"expanded", {{"terms", r.expanded_terms}, {"ms", r.expanded_ms}}},
                       {"agree", r.agree}});
    }
    return arr.dump();
}

} // namespace fracleibniz::cli
