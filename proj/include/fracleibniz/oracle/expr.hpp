#pragma once

// Brute-force symbolic differentiation used as the reference for the
// derivative lemmas. Nothing here shares code with the closed-form tables.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "../errors.hpp"
#include "../exactnum.hpp"

namespace fracleibniz::oracle {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Var {};
struct Const { Rational value; };
struct Sum { std::vector<ExprPtr> terms; };
struct Product { std::vector<ExprPtr> factors; };
struct Power { ExprPtr base; long exponent; };
struct Ln { ExprPtr arg; };
struct Exp { ExprPtr arg; };
struct Recip { ExprPtr arg; };
// f^(order)(arg) for the abstract function f.
struct FApply { std::size_t order; ExprPtr arg; };

class Expr {
public:
    using node_type = std::variant<Var, Const, Sum, Product, Power, Ln, Exp, Recip, FApply>;

    explicit Expr(node_type node) : node_(std::move(node)) {}

    const node_type& node() const { return node_; }

private:
    node_type node_;
};

inline ExprPtr make(Expr::node_type node) { return std::make_shared<const Expr>(std::move(node)); }

inline ExprPtr x() { return make(Var{}); }
inline ExprPtr constant(Rational c) { return make(Const{std::move(c)}); }
inline ExprPtr sum(std::vector<ExprPtr> terms) { return make(Sum{std::move(terms)}); }
inline ExprPtr product(std::vector<ExprPtr> factors) { return make(Product{std::move(factors)}); }
inline ExprPtr power(ExprPtr base, long e) { return make(Power{std::move(base), e}); }
inline ExprPtr ln(ExprPtr arg) { return make(Ln{std::move(arg)}); }
inline ExprPtr exp(ExprPtr arg) { return make(Exp{std::move(arg)}); }
inline ExprPtr recip(ExprPtr arg) { return make(Recip{std::move(arg)}); }
inline ExprPtr f(std::size_t order, ExprPtr arg) { return make(FApply{order, std::move(arg)}); }

// ln applied eps times to x.
inline ExprPtr iterated_ln(std::size_t eps)
{
    ExprPtr e = x();
    for (std::size_t i = 0; i < eps; ++i) e = ln(e);
    return e;
}

/// d/dx by the sum, product, power and chain rules; no simplification.
inline ExprPtr differentiate(const ExprPtr& e)
{
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                return constant(1);
            } else if constexpr (std::is_same_v<T, Const>) {
                return constant(0);
            } else if constexpr (std::is_same_v<T, Sum>) {
                std::vector<ExprPtr> out;
                for (const auto& t : n.terms) out.push_back(differentiate(t));
                return sum(std::move(out));
            } else if constexpr (std::is_same_v<T, Product>) {
                std::vector<ExprPtr> out;
                for (std::size_t i = 0; i < n.factors.size(); ++i) {
                    std::vector<ExprPtr> fs = n.factors;
                    fs[i] = differentiate(n.factors[i]);
                    out.push_back(product(std::move(fs)));
                }
                return sum(std::move(out));
            } else if constexpr (std::is_same_v<T, Power>) {
                if (n.exponent == 0) return constant(0);
                return product({constant(n.exponent), power(n.base, n.exponent - 1), differentiate(n.base)});
            } else if constexpr (std::is_same_v<T, Ln>) {
                return product({differentiate(n.arg), recip(n.arg)});
            } else if constexpr (std::is_same_v<T, Exp>) {
                return product({e, differentiate(n.arg)});
            } else if constexpr (std::is_same_v<T, Recip>) {
                return product({constant(-1), power(n.arg, -2), differentiate(n.arg)});
            } else {
                return product({f(n.order + 1, n.arg), differentiate(n.arg)});
            }
        },
        e->node());
}

/// Canonical form: a rational linear combination of Laurent monomials in
/// atoms. Atoms are x, ln(.), exp(.) and f^(v)(.), each keyed by the
/// canonical string of its (normalized) argument. exp(c x) with integer c
/// is folded to the atom exp(x) raised to c, so e^(jx) has one spelling.
class NormalForm {
public:
    using Monomial = std::map<std::string, long>;

    NormalForm() = default;

    static NormalForm scalar(const Rational& c)
    {
        NormalForm out;
        if (c != 0) out.terms_.emplace(Monomial{}, c);
        return out;
    }

    static NormalForm atom(const std::string& key, ExprPtr expr, long exponent = 1)
    {
        NormalForm out;
        out.atoms_.emplace(key, std::move(expr));
        if (exponent == 0)
            out.terms_.emplace(Monomial{}, Rational(1));
        else
            out.terms_.emplace(Monomial{{key, exponent}}, Rational(1));
        return out;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    friend NormalForm operator+(NormalForm lhs, const NormalForm& rhs)
    {
        lhs.atoms_.insert(rhs.atoms_.begin(), rhs.atoms_.end());
        for (const auto& [m, c] : rhs.terms_) lhs.terms_[m] += c;
        lhs.prune();
        return lhs;
    }

    friend NormalForm operator*(const NormalForm& lhs, const NormalForm& rhs)
    {
        NormalForm out;
        out.atoms_ = lhs.atoms_;
        out.atoms_.insert(rhs.atoms_.begin(), rhs.atoms_.end());
        for (const auto& [ml, cl] : lhs.terms_) {
            for (const auto& [mr, cr] : rhs.terms_) {
                Monomial m = ml;
                for (const auto& [atom, e] : mr) m[atom] += e;
                for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
                out.terms_[m] += cl * cr;
            }
        }
        out.prune();
        return out;
    }

    // Integer power; negative exponents only for a single monomial.
    NormalForm pow(long e) const
    {
        if (e >= 0) {
            NormalForm acc = scalar(1);
            for (long i = 0; i < e; ++i) acc = acc * *this;
            return acc;
        }
        if (terms_.size() != 1)
            throw incomparable_error("negative power of a multi-term expression is outside the canonical basis");
        const auto& [m, c] = *terms_.begin();
        NormalForm out;
        out.atoms_ = atoms_;
        Monomial inv;
        for (const auto& [atom, p] : m) inv[atom] = p * e;
        Rational ce = 1;
        for (long i = 0; i < -e; ++i) ce /= c;
        out.terms_.emplace(std::move(inv), ce);
        return out;
    }

    // Deterministic spelling used as the atom key of enclosing functions.
    std::string key() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += "+";
            out += fracleibniz::to_string(c);
            for (const auto& [atom, e] : m) out += "*" + atom + "^" + std::to_string(e);
        }
        return out;
    }

    // Single term c * x^1 with integer c, if that is what this is.
    bool is_integer_multiple_of_x(long& c) const
    {
        if (terms_.size() != 1) return false;
        const auto& [m, coeff] = *terms_.begin();
        if (m.size() != 1 || m.begin()->first != "x" || m.begin()->second != 1 || !is_integer(coeff)) return false;
        c = static_cast<long>(numerator(coeff));
        return true;
    }

    // Rebuilds an expression tree in canonical shape.
    ExprPtr to_expr() const
    {
        std::vector<ExprPtr> out;
        for (const auto& [m, c] : terms_) {
            std::vector<ExprPtr> fs{constant(c)};
            for (const auto& [atom, e] : m) fs.push_back(power(atoms_.at(atom), e));
            out.push_back(product(std::move(fs)));
        }
        return sum(std::move(out));
    }

    friend bool operator==(const NormalForm& lhs, const NormalForm& rhs) { return lhs.terms_ == rhs.terms_; }

private:
    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();) it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }

    std::map<std::string, ExprPtr> atoms_;
    std::map<Monomial, Rational> terms_;
};

inline NormalForm normalize(const ExprPtr& e)
{
    return std::visit(
        [&](const auto& n) -> NormalForm {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                return NormalForm::atom("x", x());
            } else if constexpr (std::is_same_v<T, Const>) {
                return NormalForm::scalar(n.value);
            } else if constexpr (std::is_same_v<T, Sum>) {
                NormalForm acc;
                for (const auto& t : n.terms) acc = acc + normalize(t);
                return acc;
            } else if constexpr (std::is_same_v<T, Product>) {
                NormalForm acc = NormalForm::scalar(1);
                for (const auto& t : n.factors) acc = acc * normalize(t);
                return acc;
            } else if constexpr (std::is_same_v<T, Power>) {
                return normalize(n.base).pow(n.exponent);
            } else if constexpr (std::is_same_v<T, Recip>) {
                return normalize(n.arg).pow(-1);
            } else if constexpr (std::is_same_v<T, Ln>) {
                NormalForm arg = normalize(n.arg);
                return NormalForm::atom("ln(" + arg.key() + ")", ln(arg.to_expr()));
            } else if constexpr (std::is_same_v<T, Exp>) {
                NormalForm arg = normalize(n.arg);
                long c = 0;
                if (arg.is_integer_multiple_of_x(c)) return NormalForm::atom("exp(x)", exp(x()), c);
                return NormalForm::atom("exp(" + arg.key() + ")", exp(arg.to_expr()));
            } else {
                NormalForm arg = normalize(n.arg);
                return NormalForm::atom("f" + std::to_string(n.order) + "(" + arg.key() + ")", f(n.order, arg.to_expr()));
            }
        },
        e->node());
}

// Canonical-form equality; throws incomparable_error outside the basis.
inline bool expr_normalize_equal(const ExprPtr& lhs, const ExprPtr& rhs) { return normalize(lhs) == normalize(rhs); }

inline ExprPtr expr_differentiate(const ExprPtr& e) { return differentiate(e); }

// m-fold derivative, re-canonicalizing after every step so trees stay small.
inline NormalForm nth_derivative(const ExprPtr& e, std::size_t m)
{
    NormalForm current = normalize(e);
    for (std::size_t i = 0; i < m; ++i) current = normalize(differentiate(current.to_expr()));
    return current;
}

} // namespace fracleibniz::oracle
