#pragma once

// Verification suites: each identity is checked exactly at every point of a
// grid read from the manifest, and every outcome is kept as data.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "../exactnum.hpp"
#include "../fracpoly.hpp"
#include "../hypergeometric.hpp"
#include "../leibniz.hpp"
#include "../lemmas.hpp"
#include "../oracle/expr.hpp"
#include "../oracle/rl_naive.hpp"
#include "../oracle/tables.hpp"
#include "../sheffer.hpp"
#include "random.hpp"

namespace fracleibniz::cli {

using GridPoint = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
    std::string identity;
    GridPoint point;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Outcome> outcomes;

    std::size_t passed() const
    {
        std::size_t n = 0;
        for (const auto& o : outcomes) n += o.pass;
        return n;
    }
    std::size_t failed() const { return outcomes.size() - passed(); }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"xn", "hyp", "sheffer", "lemmas", "prop1", "generalized"};
    return names;
}

inline std::string describe(const GridPoint& p)
{
    std::string out;
    for (const auto& [k, v] : p) out += (out.empty() ? "" : " ") + k + "=" + v;
    return out;
}

namespace detail {

inline std::vector<Rational> rationals(const nlohmann::json& arr)
{
    std::vector<Rational> out;
    for (const auto& v : arr) out.push_back(parse_rational(v.get<std::string>()));
    return out;
}

inline std::string family_label(const ShefferFamily& fam)
{
    if (fam.beta()) return fam.name() + "(beta=" + to_string(*fam.beta()) + ")";
    return fam.name();
}

// Runs one check, turning an exception into a failure that names it.
inline void record(SuiteReport& r, std::string identity, GridPoint point, const std::function<bool(std::string&)>& check)
{
    Outcome o{std::move(identity), std::move(point), false, ""};
    try {
        o.pass = check(o.detail);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    r.outcomes.push_back(std::move(o));
}

inline std::vector<ShefferFamily> product_families(const std::vector<Rational>& betas)
{
    std::vector<ShefferFamily> out{families::bernoulli(), families::euler(),  families::hermite(),
                                   families::falling(),   families::rising(), families::exponential()};
    for (const auto& b : betas) out.push_back(families::laguerre(b));
    return out;
}

} // namespace detail

/// thm_xn_product = classical_leibniz_terminating = power-rule oracle.
inline SuiteReport verify_xn(const nlohmann::json& cfg, std::uint64_t seed)
{
    SuiteReport r{"xn", {}};
    Rng rng(seed);
    const std::size_t n_max = cfg.at("n_max"), deg_max = cfg.at("deg_max"), polys = cfg.at("polys");
    std::vector<Poly> fs;
    for (std::size_t i = 0; i < polys; ++i) fs.push_back(rng.poly(i % (deg_max + 1)));
    for (const auto& a : detail::rationals(cfg.at("orders"))) {
        for (std::size_t n = 0; n <= n_max; ++n) {
            for (const auto& f : fs) {
                GridPoint p{{"n", std::to_string(n)}, {"deg_f", std::to_string(f.degree())}, {"a", to_string(a)}, {"f", to_string(f)}};
                detail::record(r, "xn product rule", p, [&](std::string& why) {
                    FracPoly thm = thm_xn_product(n, f, a);
                    FracPoly classical = classical_leibniz_terminating(n, f, a);
                    FracPoly oracle = oracle::rl_oracle_naive(shift(f, n), a);
                    if (!(thm == oracle)) why = "truncated sum differs from oracle";
                    else if (!(classical == oracle)) why = "classical sum differs from oracle";
                    return thm == oracle && classical == oracle;
                });
            }
        }
    }
    return r;
}

/// 0F1 product rule against ordinary differentiation of the truncated product.
inline SuiteReport verify_hyp(const nlohmann::json& cfg, std::uint64_t seed)
{
    SuiteReport r{"hyp", {}};
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t n_max = cfg.at("n_max"), deg_max = cfg.at("deg_max"), K = cfg.at("truncation");
    for (const auto& a : detail::rationals(cfg.at("orders"))) {
        const std::size_t ai = static_cast<std::size_t>(numerator(a));
        for (std::size_t n = 1; n <= n_max; ++n) {
            for (std::size_t d = 0; d <= deg_max; ++d) {
                Poly f = rng.poly(d);
                GridPoint p{{"n", std::to_string(n)}, {"deg_f", std::to_string(d)}, {"a", to_string(a)}, {"K", std::to_string(K)}};
                detail::record(r, "0F1 product rule", p, [&](std::string& why) {
                    HypSeries thm = thm_0f1_product(n, f, a, K);
                    Poly product = truncate_poly(hyp0f1_series(Rational(n + 1), K) * f, K);
                    Poly direct = derivative(product, ai);
                    // Gamma(1+a) = a! at integer order.
                    Poly lhs = scale(thm.coefficients, Rational(1) / factorial(ai));
                    const long upto = static_cast<long>(K) - static_cast<long>(ai) - static_cast<long>(d);
                    if (upto < 0) return true;
                    bool ok = truncate_poly(lhs, static_cast<std::size_t>(upto)) == truncate_poly(direct, static_cast<std::size_t>(upto));
                    if (!ok) why = "coefficients differ below x^" + std::to_string(upto + 1);
                    return ok;
                });
            }
        }
    }
    for (const auto& a : detail::rationals(cfg.at("reduction_orders"))) {
        for (std::size_t n = 1; n <= n_max; ++n) {
            GridPoint p{{"n", std::to_string(n)}, {"deg_f", "0"}, {"a", to_string(a)}, {"K", std::to_string(K)}};
            detail::record(r, "0F1 rule with f = 1 reduces to the closed form", p, [&](std::string& why) {
                HypSeries thm = thm_0f1_product(n, Poly::constant(1), a, K);
                bool ok = thm.coefficients == frac_deriv_0f1(n, a, K).expand();
                if (!ok) why = "series differ";
                return ok;
            });
        }
    }
    return r;
}

/// Generating function vs closed forms, the delta-operator relation, the
/// family product rules, and the f = 1 corollaries.
inline SuiteReport verify_sheffer(const nlohmann::json& cfg, std::uint64_t seed)
{
    SuiteReport r{"sheffer", {}};
    Rng rng(seed ^ 0x5851f42d4c957f2dULL);
    const std::size_t n_max = cfg.at("n_max"), pn_max = cfg.at("product_n_max"), pdeg_max = cfg.at("product_deg_max"),
                      ap_max = cfg.at("appell_n_max");
    const auto betas = detail::rationals(cfg.at("laguerre_betas"));
    const auto orders = detail::rationals(cfg.at("orders"));
    const auto fams = detail::product_families(betas);

    for (const auto& fam : fams) {
        const std::string label = detail::family_label(fam);
        for (std::size_t n = 0; n <= n_max; ++n) {
            detail::record(r, "generating function = closed form", {{"fam", label}, {"n", std::to_string(n)}}, [&](std::string& why) {
                auto closed = fam.closed_form(n);
                if (!closed) return true;
                bool ok = *closed == fam.generating_polynomial(n);
                if (!ok) why = "closed " + to_string(*closed) + " vs generated " + to_string(fam.generating_polynomial(n));
                return ok;
            });
            if (n >= 1)
                detail::record(r, "k(D) s_n = n s_(n-1)", {{"fam", label}, {"n", std::to_string(n)}},
                               [&](std::string&) { return check_sheffer_relation(fam, n); });
        }
    }

    for (const auto& fam : fams) {
        const std::string label = detail::family_label(fam);
        for (std::size_t d = 0; d <= pdeg_max; ++d) {
            Poly f = rng.poly(d);
            for (std::size_t n = 0; n <= pn_max; ++n) {
                for (const auto& a : orders) {
                    GridPoint p{{"fam", label}, {"n", std::to_string(n)}, {"deg_f", std::to_string(d)}, {"a", to_string(a)}};
                    detail::record(r, "family product rule = oracle", p, [&](std::string& why) {
                        bool ok = frac_product_rule(fam, n, f, a) == oracle::rl_oracle_naive(fam.polynomial(n) * f, a);
                        if (!ok) why = "f = " + to_string(f);
                        return ok;
                    });
                }
            }
        }
        for (std::size_t n = 0; n <= pn_max; ++n) {
            for (const auto& a : orders) {
                GridPoint p{{"fam", label}, {"n", std::to_string(n)}, {"a", to_string(a)}};
                detail::record(r, "corollary = oracle", p, [&](std::string&) {
                    return cor_frac_sheffer(fam, n, a) == oracle::rl_oracle_naive(fam.polynomial(n), a);
                });
            }
        }
    }

    for (const auto& fam : {families::bernoulli(), families::euler(), families::hermite()}) {
        for (std::size_t n = 0; n <= ap_max; ++n) {
            for (std::size_t j = 0; j <= n; ++j) {
                GridPoint p{{"fam", fam.name()}, {"n", std::to_string(n)}, {"j", std::to_string(j)}};
                detail::record(r, "Appell integer-order reduction", p, [&](std::string&) {
                    return integer_order_sheffer(fam, n, j) == scale(fam.polynomial(n - j), factorial(n) / factorial(n - j));
                });
            }
        }
    }
    return r;
}

/// Lemma tables against brute-force differentiation.
inline SuiteReport verify_lemmas(const nlohmann::json& cfg, std::uint64_t)
{
    SuiteReport r{"lemmas", {}};
    const std::size_t m_max = cfg.at("m_max");
    for (auto v : {LemmaVariant::ln, LemmaVariant::exp, LemmaVariant::recip}) {
        for (std::size_t m = 0; m <= m_max; ++m) {
            detail::record(r, "lemma table = oracle", {{"variant", to_string(v)}, {"m", std::to_string(m)}}, [&](std::string&) {
                auto table = lemma_derivative_table(v, m);
                return oracle::nth_derivative(oracle::lemma_subject(v), m) == oracle::normalize(oracle::lemma_table_as_tree(v, table));
            });
        }
    }
    return r;
}

/// Iterated-logarithm chain table against brute-force differentiation.
inline SuiteReport verify_prop1(const nlohmann::json& cfg, std::uint64_t)
{
    SuiteReport r{"prop1", {}};
    const std::size_t eps_max = cfg.at("eps_max"), m_max = cfg.at("m_max");
    for (std::size_t eps = 1; eps <= eps_max; ++eps) {
        for (std::size_t m = 0; m <= m_max; ++m) {
            detail::record(r, "iterated ln chain table = oracle", {{"eps", std::to_string(eps)}, {"m", std::to_string(m)}}, [&](std::string&) {
                auto table = iterated_ln_derivative(eps, m);
                auto subject = oracle::f(0, oracle::iterated_ln(eps));
                return oracle::nth_derivative(subject, m) == oracle::normalize(oracle::chain_table_as_tree(eps, m, table));
            });
        }
    }
    return r;
}

/// Operator product theorem on random polynomial symbols.
inline SuiteReport verify_generalized(const nlohmann::json& cfg, std::uint64_t seed)
{
    SuiteReport r{"generalized", {}};
    Rng rng(seed ^ 0x2545f4914f6cdd1dULL);
    const std::size_t count = cfg.at("instances"), n_max = cfg.at("n_max"), dv = cfg.at("deg_v_max"), dj = cfg.at("deg_j_max");
    static const Rational betas[] = {Rational(0), Rational(1, 2), Rational(2)};
    for (std::size_t i = 0; i < count; ++i) {
        auto fams = families::builtins(betas[rng.below(3)]);
        const ShefferFamily& fam = fams[rng.below(fams.size())];
        std::size_t n = rng.below(n_max + 1);
        Poly v = rng.poly(rng.below(dv + 1));
        Poly j = rng.poly(rng.below(dj + 1));
        GridPoint p{{"fam", detail::family_label(fam)}, {"n", std::to_string(n)}, {"v", to_string(v)}, {"j", to_string(j)}};
        detail::record(r, "operator product LHS = RHS", p, [&](std::string&) {
            return generalized_operator_lhs(fam, n, v, j) == generalized_operator_product(fam, n, v, j);
        });
    }
    return r;
}

/// Runs "all" or one named suite.
inline std::vector<SuiteReport> run_verify(const std::string& suite, const nlohmann::json& manifest, std::uint64_t seed)
{
    using Fn = SuiteReport (*)(const nlohmann::json&, std::uint64_t);
    static const std::vector<std::pair<std::string, Fn>> table{{"xn", verify_xn},         {"hyp", verify_hyp},
                                                               {"sheffer", verify_sheffer}, {"lemmas", verify_lemmas},
                                                               {"prop1", verify_prop1},   {"generalized", verify_generalized}};
    std::vector<SuiteReport> out;
    bool found = false;
    for (const auto& [name, fn] : table) {
        if (suite != "all" && suite != name) continue;
        found = true;
        out.push_back(fn(manifest.at(name), seed));
    }
    if (!found) throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

inline nlohmann::ordered_json reports_to_json(const std::vector<SuiteReport>& reports)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json s;
        s["suite"] = r.suite;
        s["passed"] = r.passed();
        s["failed"] = r.failed();
        nlohmann::ordered_json inst = nlohmann::ordered_json::array();
        for (const auto& o : r.outcomes) {
            nlohmann::ordered_json e;
            e["identity"] = o.identity;
            nlohmann::ordered_json pt;
            for (const auto& [k, v] : o.point) pt[k] = v;
            e["point"] = pt;
            e["pass"] = o.pass;
            if (!o.detail.empty()) e["detail"] = o.detail;
            inst.push_back(e);
        }
        s["instances"] = inst;
        j.push_back(s);
    }
    return j;
}

// Summary lines plus every failure; the first failure is flagged.
inline std::string reports_to_text(const std::vector<SuiteReport>& reports, bool verbose = false)
{
    std::string out;
    bool first_failure = true;
    for (const auto& r : reports) {
        for (const auto& o : r.outcomes) {
            if (o.pass && !verbose) continue;
            out += std::string(o.pass ? "pass " : "FAIL ") + r.suite + ": " + o.identity + " [" + describe(o.point) + "]";
            if (!o.detail.empty()) out += " " + o.detail;
            if (!o.pass && first_failure) {
                out += " (first failure)";
                first_failure = false;
            }
            out += "\n";
        }
    }
    std::size_t total_fail = 0;
    for (const auto& r : reports) {
        out += r.suite + ": " + std::to_string(r.passed()) + "/" + std::to_string(r.outcomes.size()) + " passed\n";
        total_fail += r.failed();
    }
    out += total_fail == 0 ? "all identities hold\n" : std::to_string(total_fail) + " failure(s)\n";
    return out;
}

} // namespace fracleibniz::cli
