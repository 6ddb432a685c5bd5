#pragma once

// Evaluation of parsed expressions and rendering of the results as text,
// JSON or LaTeX.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "../errors.hpp"
#include "../exactnum.hpp"
#include "../fracpoly.hpp"
#include "../hypergeometric.hpp"
#include "../leibniz.hpp"
#include "../numeric.hpp"
#include "../polynomial.hpp"
#include "../sheffer.hpp"
#include "ast.hpp"

namespace fracleibniz::cli {

enum class Format { text, json, latex };

inline Format parse_format(const std::string& s)
{
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "latex") return Format::latex;
    throw std::invalid_argument("unknown format '" + s + "' (expected text, json or latex)");
}

struct EvalOptions {
    Rational order = Rational(1, 2);
    std::size_t truncation = 16;
    std::size_t digits = 15;
    std::optional<Rational> at;
};

// Shape is valid syntax but no evaluation path applies to it.
class unsupported_shape_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Value = std::variant<Poly, FracPoly, HypSeries, HypSeriesResult>;

struct Evaluation {
    NodePtr input;
    Rational order;
    std::string method;
    Value value;
    std::vector<std::string> warnings;
};

inline ShefferFamily family_of(const Node& n)
{
    if (n.name == "falling") return families::falling();
    if (n.name == "rising") return families::rising();
    if (n.name == "bell") return families::exponential();
    if (n.name == "laguerre") return families::laguerre(n.has_beta ? n.value : Rational(0));
    if (n.name == "bernoulli") return families::bernoulli();
    if (n.name == "euler") return families::euler();
    if (n.name == "hermite") return families::hermite();
    throw unsupported_shape_error("unknown family '" + n.name + "'");
}

/// Expands a D-free (or integer-order-D) expression to a polynomial.
inline Poly expand_polynomial(const Node& n)
{
    switch (n.kind) {
    case NodeKind::number: return Poly::constant(n.value);
    case NodeKind::variable: return Poly::x();
    case NodeKind::power: {
        Poly base = expand_polynomial(*n.children[0]);
        Poly acc = Poly::constant(1);
        for (std::size_t i = 0; i < n.index; ++i) acc = acc * base;
        return acc;
    }
    case NodeKind::product: {
        Poly acc = Poly::constant(1);
        for (const auto& c : n.children) acc = acc * expand_polynomial(*c);
        return acc;
    }
    case NodeKind::sum: {
        Poly acc;
        for (const auto& c : n.children) acc += expand_polynomial(*c);
        return acc;
    }
    case NodeKind::negate: return -expand_polynomial(*n.children[0]);
    case NodeKind::family: return family_of(n).polynomial(n.index);
    case NodeKind::hyp0f1:
        throw unsupported_shape_error("hyp0f1 is a series and only appears as D[hyp0f1(n); a] or D[hyp0f1(n)*f; a] with polynomial f");
    case NodeKind::derivative:
        if (!is_nonneg_integer(n.value))
            throw unsupported_shape_error("fractional D[...] of order " + to_string(n.value)
                                          + " cannot be nested inside a polynomial expression");
        return derivative(expand_polynomial(*n.children[0]), static_cast<std::size_t>(numerator(n.value)));
    }
    return {};
}

inline bool contains_kind(const Node& n, NodeKind kind)
{
    if (n.kind == kind) return true;
    for (const auto& c : n.children)
        if (contains_kind(*c, kind)) return true;
    return false;
}

namespace detail {

// Product split into one distinguished factor and the polynomial rest.
struct Split {
    const Node* special = nullptr;
    Poly rest = Poly::constant(1);
};

template <class Pred>
std::optional<Split> split_product(const Node& body, Pred is_special)
{
    if (is_special(body)) return Split{&body, Poly::constant(1)};
    if (body.kind != NodeKind::product) return std::nullopt;
    Split s;
    for (const auto& c : body.children) {
        if (!s.special && is_special(*c)) {
            s.special = c.get();
            continue;
        }
        s.rest = s.rest * expand_polynomial(*c);
    }
    if (!s.special) return std::nullopt;
    return s;
}

inline bool is_x_power(const Node& n)
{
    return n.kind == NodeKind::variable || (n.kind == NodeKind::power && n.children[0]->kind == NodeKind::variable);
}

inline std::size_t x_power(const Node& n) { return n.kind == NodeKind::variable ? 1 : n.index; }

} // namespace detail

/// D^a applied to body, dispatched on the body's shape.
inline Evaluation evaluate_derivative(const NodePtr& input, const Node& body, const Rational& a, const EvalOptions& opt)
{
    Evaluation ev{input, a, "", Poly{}, {}};

    if (contains_kind(body, NodeKind::hyp0f1)) {
        auto s = detail::split_product(body, [](const Node& n) { return n.kind == NodeKind::hyp0f1; });
        if (!s) throw unsupported_shape_error("hyp0f1 must appear as D[hyp0f1(n); a] or D[hyp0f1(n)*f; a] with polynomial f");
        std::size_t n = s->special->index;
        if (n == 0) throw unsupported_shape_error("hyp0f1(n) requires n >= 1 (parameter n+1 >= 2)");
        if (&body == s->special && !is_integer(a)) {
            ev.method = "0F1 fractional derivative";
            ev.value = frac_deriv_0f1(n, a, opt.truncation);
        } else {
            ev.method = "0F1 product rule";
            ev.value = thm_0f1_product(n, s->rest, a, opt.truncation);
        }
        return ev;
    }

    if (is_nonneg_integer(a)) {
        ev.method = a == 0 ? "identity" : "ordinary derivative";
        ev.value = derivative(expand_polynomial(body), static_cast<std::size_t>(numerator(a)));
        return ev;
    }

    if (auto s = detail::split_product(body, [](const Node& n) { return n.kind == NodeKind::family; })) {
        ShefferFamily fam = family_of(*s->special);
        std::size_t n = s->special->index;
        if (&body == s->special) {
            ev.method = "Sheffer corollary (" + fam.name() + ")";
            ev.value = cor_frac_sheffer(fam, n, a);
            ev.warnings = cor_side_condition_warnings(fam, n, a);
        } else {
            ev.method = "Sheffer product rule (" + fam.name() + ")";
            ev.value = frac_product_rule(fam, n, s->rest, a);
        }
        return ev;
    }

    if (auto s = detail::split_product(body, detail::is_x_power)) {
        // A lone monomial goes straight to the power rule.
        std::size_t n = detail::x_power(*s->special);
        if (n > 0 && &body != s->special) {
            ev.method = "truncated x^n product rule";
            ev.value = thm_xn_product(n, s->rest, a);
            return ev;
        }
    }

    ev.method = "power rule";
    ev.value = rl_frac_derivative(expand_polynomial(body), a);
    return ev;
}

inline Evaluation evaluate(const NodePtr& root, const EvalOptions& opt)
{
    if (root->kind == NodeKind::derivative) return evaluate_derivative(root, *root->children[0], root->value, opt);
    // No outer D: --order applies to the whole expression.
    return evaluate_derivative(root, *root, opt.order, opt);
}

inline Evaluation evaluate(std::string_view src, const EvalOptions& opt) { return evaluate(parse_expression(src), opt); }

// ---------------------------------------------------------------- rendering

namespace detail {

inline const char* minus() { return "−"; }

inline std::string text_rational(const Rational& r)
{
    std::string s = to_string(r < 0 ? Rational(-r) : r);
    return r < 0 ? minus() + s : s;
}

// x^e for a rational exponent, in the text style.
inline std::string text_xpow(const Rational& e)
{
    if (e == 0) return "";
    if (e == 1) return "x";
    if (is_integer(e) && e > 0) return "x^" + to_string(e);
    return "x^(" + text_rational(e) + ")";
}

inline Rational gamma_argument(GammaBase base, const Rational& a)
{
    return base == GammaBase::one_minus_a ? Rational(1 - a) : Rational(1 + a);
}

inline std::string json_gamma_base(GammaBase base, const Rational& a)
{
    if (base == GammaBase::none) return "none";
    std::string av = a < 0 ? "(" + to_string(a) + ")" : to_string(a);
    return std::string(base == GammaBase::one_minus_a ? "Gamma(1-" : "Gamma(1+") + av + ")";
}

struct Term {
    Rational coeff;
    Rational exponent;
};

// c1·t1 ± c2·t2 ..., each term divided by `denom` when non-empty.
inline std::string text_terms(const std::vector<Term>& terms, const std::string& denom)
{
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        Rational mag = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (t.coeff < 0) out += minus();
        } else {
            out += t.coeff < 0 ? std::string(" ") + minus() + " " : std::string(" + ");
        }
        first = false;
        std::string xp = text_xpow(t.exponent);
        std::string c = is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")";
        std::string body;
        if (xp.empty())
            body = c;
        else if (mag == 1)
            body = xp;
        else
            body = c + "·" + xp;
        out += body + denom;
    }
    return out;
}

inline std::string latex_rational(const Rational& r)
{
    if (is_integer(r)) return to_string(r);
    std::string s = "\\frac{" + numerator(r < 0 ? Rational(-r) : r).str() + "}{" + denominator(r).str() + "}";
    return r < 0 ? "-" + s : s;
}

inline std::string latex_terms(const std::vector<Term>& terms, const std::string& gamma)
{
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        Rational mag = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (t.coeff < 0) out += "-";
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        std::string xp = t.exponent == 0 ? "" : (t.exponent == 1 ? "x" : "x^{" + to_string(t.exponent) + "}");
        std::string c = latex_rational(mag);
        std::string num = xp.empty() ? "1" : xp;
        if (gamma.empty()) {
            if (xp.empty())
                out += c;
            else
                out += (mag == 1 ? "" : c + "\\,") + xp;
        } else {
            out += (mag == 1 ? "" : c + "\\,") + "\\frac{" + num + "}{" + gamma + "}";
        }
    }
    return out;
}

inline std::string latex_node(const Node& n);

inline std::string latex_wrap(const Node& n, bool paren) { return paren ? "\\left(" + latex_node(n) + "\\right)" : latex_node(n); }

inline std::string latex_node(const Node& n)
{
    switch (n.kind) {
    case NodeKind::number: return latex_rational(n.value);
    case NodeKind::variable: return "x";
    case NodeKind::power: return latex_wrap(*n.children[0], level(*n.children[0]) < 4) + "^{" + std::to_string(n.index) + "}";
    case NodeKind::product: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i)
            out += (i ? " \\cdot " : "") + latex_wrap(*n.children[i], level(*n.children[i]) <= 1);
        return out;
    }
    case NodeKind::sum: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const Node& c = *n.children[i];
            if (i && c.kind == NodeKind::negate)
                out += " - " + latex_wrap(*c.children[0], level(*c.children[0]) == 0);
            else
                out += (i ? " + " : "") + latex_wrap(c, level(c) == 0);
        }
        return out;
    }
    case NodeKind::negate: return "-" + latex_wrap(*n.children[0], level(*n.children[0]) <= 1);
    case NodeKind::family:
        if (n.name == "laguerre") return "L_{" + std::to_string(n.index) + "}^{(" + latex_rational(n.value) + ")}(x)";
        if (n.name == "falling") return "(x)_{" + std::to_string(n.index) + "}";
        if (n.name == "rising") return "x^{(" + std::to_string(n.index) + ")}";
        if (n.name == "bell") return "\\phi_{" + std::to_string(n.index) + "}(x)";
        if (n.name == "bernoulli") return "B_{" + std::to_string(n.index) + "}(x)";
        if (n.name == "euler") return "E_{" + std::to_string(n.index) + "}(x)";
        if (n.name == "hermite") return "He_{" + std::to_string(n.index) + "}(x)";
        return "\\mathrm{" + n.name + "}_{" + std::to_string(n.index) + "}(x)";
    case NodeKind::hyp0f1: return "{}_0F_1(" + std::to_string(n.index + 1) + ";x)";
    case NodeKind::derivative:
        return "D^{" + latex_rational(n.value) + "}\\left[" + latex_node(*n.children[0]) + "\\right]";
    }
    return "";
}

inline std::vector<Term> poly_terms_desc(const Poly& p)
{
    std::vector<Term> out;
    for (long k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coefficient(static_cast<std::size_t>(k));
        if (c != 0) out.push_back({c, Rational(k)});
    }
    return out;
}

inline std::vector<Term> frac_terms_desc(const FracPoly& u)
{
    std::vector<Term> out;
    for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) out.push_back({it->second, u.exponent(it->first)});
    return out;
}

inline nlohmann::ordered_json json_terms_poly(const Poly& p)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p.coefficient(k) != 0) arr.push_back({{"k", k}, {"coeff", to_string(p.coefficient(k))}});
    return arr;
}

} // namespace detail

// Numeric value at opt.at, if requested.
inline std::optional<std::string> numeric_value(const Evaluation& ev, const EvalOptions& opt)
{
    if (!opt.at) return std::nullopt;
    const Rational& x = *opt.at;
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly>) {
                return BigFloat(v(x), working_bits(opt.digits)).fixed(opt.digits);
            } else if constexpr (std::is_same_v<T, FracPoly>) {
                return fracpoly_eval_numeric(v, x, opt.digits).fixed(opt.digits);
            } else if constexpr (std::is_same_v<T, HypSeries>) {
                return hypseries_eval_numeric(v, x, opt.digits).fixed(opt.digits);
            } else {
                return hypseries_eval_numeric(HypSeries{v.order, v.truncation, v.expand()}, x, opt.digits).fixed(opt.digits);
            }
        },
        ev.value);
}

inline std::string render_text(const Evaluation& ev, const EvalOptions& opt)
{
    std::string out = std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly>) {
                return to_string(v);
            } else if constexpr (std::is_same_v<T, FracPoly>) {
                std::string denom = v.base() == GammaBase::none
                    ? ""
                    : "/Γ(" + detail::text_rational(detail::gamma_argument(v.base(), v.order())) + ")";
                return detail::text_terms(detail::frac_terms_desc(v), denom);
            } else if constexpr (std::is_same_v<T, HypSeries>) {
                std::string g = "Γ(" + detail::text_rational(1 + v.order) + ")";
                return "[" + to_string(v.coefficients) + "]/" + g + " + O(x^" + std::to_string(v.truncation + 1) + ")";
            } else {
                std::string g = "Γ(" + detail::text_rational(1 + v.order) + ")";
                std::string c = is_integer(v.prefactor) ? detail::text_rational(v.prefactor) : "(" + detail::text_rational(v.prefactor) + ")";
                return c + "·0F1(" + detail::text_rational(v.parameter) + "; x)/" + g;
            }
        },
        ev.value);
    if (auto num = numeric_value(ev, opt)) out += "\n  at x = " + to_string(*opt.at) + ": " + *num;
    for (const auto& w : ev.warnings) out += "\n  note: " + w;
    return out;
}

inline nlohmann::ordered_json render_json_value(const Evaluation& ev, const EvalOptions& opt)
{
    nlohmann::ordered_json j;
    j["order"] = to_string(ev.order);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly>) {
                j["gamma_base"] = "none";
                j["terms"] = detail::json_terms_poly(v);
            } else if constexpr (std::is_same_v<T, FracPoly>) {
                j["gamma_base"] = detail::json_gamma_base(v.base(), v.order());
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& [k, c] : v.terms()) arr.push_back({{"k", k}, {"coeff", to_string(c)}});
                j["terms"] = arr;
            } else if constexpr (std::is_same_v<T, HypSeries>) {
                j["gamma_base"] = detail::json_gamma_base(GammaBase::one_plus_a, v.order);
                j["terms"] = detail::json_terms_poly(v.coefficients);
                j["truncation"] = v.truncation;
            } else {
                j["gamma_base"] = detail::json_gamma_base(GammaBase::one_plus_a, v.order);
                j["terms"] = detail::json_terms_poly(v.expand());
                j["truncation"] = v.truncation;
                j["hypergeometric"] = {{"parameter", to_string(v.parameter)}, {"prefactor", to_string(v.prefactor)}};
            }
        },
        ev.value);
    j["method"] = ev.method;
    if (auto num = numeric_value(ev, opt)) j["value"] = {{"x", to_string(*opt.at)}, {"digits", opt.digits}, {"approx", *num}};
    if (!ev.warnings.empty()) j["warnings"] = ev.warnings;
    return j;
}

inline std::string render_json(const Evaluation& ev, const EvalOptions& opt) { return render_json_value(ev, opt).dump(); }

inline std::string render_latex(const Evaluation& ev, const EvalOptions& opt)
{
    std::string lhs = ev.input->kind == NodeKind::derivative
        ? detail::latex_node(*ev.input)
        : "D^{" + detail::latex_rational(ev.order) + "}\\left[" + detail::latex_node(*ev.input) + "\\right]";
    std::string rhs = std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly>) {
                return detail::latex_terms(detail::poly_terms_desc(v), "");
            } else if constexpr (std::is_same_v<T, FracPoly>) {
                std::string g = v.base() == GammaBase::none
                    ? ""
                    : "\\Gamma\\left(" + detail::latex_rational(detail::gamma_argument(v.base(), v.order())) + "\\right)";
                return detail::latex_terms(detail::frac_terms_desc(v), g);
            } else if constexpr (std::is_same_v<T, HypSeries>) {
                return "\\frac{1}{\\Gamma\\left(" + detail::latex_rational(1 + v.order) + "\\right)}\\left("
                    + detail::latex_terms(detail::poly_terms_desc(v.coefficients), "") + "\\right) + O\\left(x^{"
                    + std::to_string(v.truncation + 1) + "}\\right)";
            } else {
                return detail::latex_rational(v.prefactor) + "\\,\\frac{{}_0F_1\\left(" + detail::latex_rational(v.parameter)
                    + ";x\\right)}{\\Gamma\\left(" + detail::latex_rational(1 + v.order) + "\\right)}";
            }
        },
        ev.value);
    std::string out = "\\[ " + lhs + " = " + rhs + " \\]";
    if (auto num = numeric_value(ev, opt)) out += "\n% at x = " + to_string(*opt.at) + ": " + *num;
    return out;
}

inline std::string render_result(const Evaluation& ev, const EvalOptions& opt, Format fmt)
{
    switch (fmt) {
    case Format::text: return render_text(ev, opt);
    case Format::json: return render_json(ev, opt);
    case Format::latex: return render_latex(ev, opt);
    }
    return "";
}

} // namespace fracleibniz::cli
