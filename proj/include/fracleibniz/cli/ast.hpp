#pragma once

// Expression language of the command-line tool.
//
//   sum     := unary (('+' | '-') unary)*          (leading term may carry '-')
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' digits)?
//   primary := rational | 'x' | '(' sum ')' | name '(' args ')' | 'D' '[' sum ';' signed-rational ']'
//
// Rational literals are "p" or "p/q"; there is no division operator.
// Sums and products are n-ary; parentheses introduce a nested node, so
// rendering an AST and parsing it back yields the same tree.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "../errors.hpp"
#include "../exactnum.hpp"

namespace fracleibniz::cli {

enum class NodeKind { number, variable, power, product, sum, negate, family, hyp0f1, derivative };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::number;
    Rational value;              // number literal (nonnegative), derivative order, Laguerre beta
    std::size_t index = 0;       // power exponent, family / hyp0f1 index
    std::string name;            // family constructor
    bool has_beta = false;       // laguerre(n; beta)
    std::vector<NodePtr> children;

    friend bool operator==(const Node& l, const Node& r)
    {
        if (l.kind != r.kind || l.value != r.value || l.index != r.index || l.name != r.name || l.has_beta != r.has_beta
            || l.children.size() != r.children.size())
            return false;
        for (std::size_t i = 0; i < l.children.size(); ++i)
            if (!(*l.children[i] == *r.children[i])) return false;
        return true;
    }
};

inline NodePtr number(Rational v)
{
    if (v < 0) throw std::invalid_argument("number literals are nonnegative; wrap in negate()");
    auto n = std::make_shared<Node>();
    n->value = std::move(v);
    return n;
}

inline NodePtr variable()
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::variable;
    return n;
}

inline NodePtr power(NodePtr base, std::size_t e)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::power;
    n->index = e;
    n->children = {std::move(base)};
    return n;
}

inline NodePtr nary(NodeKind kind, std::vector<NodePtr> children)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = std::move(children);
    return n;
}

inline NodePtr product(std::vector<NodePtr> c) { return nary(NodeKind::product, std::move(c)); }
inline NodePtr sum(std::vector<NodePtr> c) { return nary(NodeKind::sum, std::move(c)); }

inline NodePtr negate(NodePtr child)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::negate;
    n->children = {std::move(child)};
    return n;
}

inline NodePtr family(std::string name, std::size_t idx, std::optional<Rational> beta = std::nullopt)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::family;
    n->name = std::move(name);
    n->index = idx;
    if (beta) {
        n->has_beta = true;
        n->value = *beta;
    }
    return n;
}

inline NodePtr hyp0f1(std::size_t idx)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::hyp0f1;
    n->index = idx;
    return n;
}

inline NodePtr derivative(NodePtr body, Rational order)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::derivative;
    n->value = std::move(order);
    n->children = {std::move(body)};
    return n;
}

inline const std::vector<std::string>& constructor_names()
{
    static const std::vector<std::string> names{"falling", "rising", "bell", "laguerre", "bernoulli", "euler", "hermite", "hyp0f1"};
    return names;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

// Known constructors within edit distance 3, closest first.
inline std::vector<std::string> suggest_constructors(std::string_view name)
{
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& c : constructor_names()) {
        std::size_t d = edit_distance(name, c);
        if (d <= 3) scored.emplace_back(d, c);
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::string> out;
    for (auto& [d, c] : scored) out.push_back(std::move(c));
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse()
    {
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw parse_error(msg, at); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    NodePtr parse_sum()
    {
        std::vector<NodePtr> terms{parse_product()};
        while (true) {
            if (peek('+')) {
                ++pos_;
                terms.push_back(parse_product());
            } else if (peek('-')) {
                ++pos_;
                terms.push_back(negate(parse_product()));
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms.front() : sum(std::move(terms));
    }

    NodePtr parse_product()
    {
        std::vector<NodePtr> factors{parse_unary()};
        while (peek('*')) {
            ++pos_;
            factors.push_back(parse_unary());
        }
        return factors.size() == 1 ? factors.front() : product(std::move(factors));
    }

    NodePtr parse_unary()
    {
        if (peek('-')) {
            ++pos_;
            return negate(parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power()
    {
        NodePtr base = parse_primary();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == '-') fail("negative exponents are not supported");
            std::size_t e = parse_index("exponent");
            if (peek('^')) fail("chained '^' is ambiguous; parenthesize the base");
            return power(std::move(base), e);
        }
        return base;
    }

    std::size_t parse_index(const char* what)
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail(std::string("expected nonnegative integer ") + what);
        if (pos_ - start > 6) fail_at(std::string(what) + " is too large", start);
        return static_cast<std::size_t>(std::stoul(std::string(src_.substr(start, pos_ - start))));
    }

    // p or p/q starting at the current position; offsets point at the malformed part.
    Rational parse_literal()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        BigInt num(std::string(src_.substr(start, pos_ - start)));
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (dstart == pos_) fail_at("malformed rational: missing denominator", dstart);
            BigInt den(std::string(src_.substr(dstart, pos_ - dstart)));
            if (den == 0) fail_at("malformed rational: zero denominator", dstart);
            return Rational(num, den);
        }
        return Rational(num);
    }

    Rational parse_signed_rational()
    {
        skip_ws();
        bool negative = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            negative = src_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail("expected rational");
        Rational r = parse_literal();
        return negative ? Rational(-r) : r;
    }

    NodePtr parse_primary()
    {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number(parse_literal());
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            if (name == "x") return variable();
            if (name == "D") return parse_derivative();
            return parse_constructor(name, start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr parse_derivative()
    {
        expect('[');
        NodePtr body = parse_sum();
        expect(';');
        Rational order = parse_signed_rational();
        expect(']');
        return derivative(std::move(body), std::move(order));
    }

    NodePtr parse_constructor(const std::string& name, std::size_t start)
    {
        const auto& known = constructor_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            std::string msg = "unknown constructor '" + name + "'";
            auto sugg = suggest_constructors(name);
            if (!sugg.empty()) {
                msg += "; did you mean ";
                for (std::size_t i = 0; i < sugg.size(); ++i) msg += (i ? ", " : "") + sugg[i];
                msg += "?";
            }
            msg += " (known: ";
            for (std::size_t i = 0; i < known.size(); ++i) msg += (i ? ", " : "") + known[i];
            msg += ")";
            fail_at(msg, start);
        }
        expect('(');
        std::size_t idx = parse_index("index");
        std::optional<Rational> beta;
        if (name == "laguerre") {
            if (peek(';')) {
                ++pos_;
                beta = parse_signed_rational();
            } else {
                beta = Rational(0);
            }
        }
        expect(')');
        if (name == "hyp0f1") return hyp0f1(idx);
        return family(name, idx, beta);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline NodePtr parse_expression(std::string_view src) { return Parser(src).parse(); }

namespace detail {

// Binding strength used to decide where parentheses are needed.
inline int level(const Node& n)
{
    switch (n.kind) {
    case NodeKind::sum: return 0;
    case NodeKind::product: return 1;
    case NodeKind::negate: return 2;
    case NodeKind::power: return 3;
    default: return 4;
    }
}

} // namespace detail

inline std::string render(const Node& n);

namespace detail {

inline std::string wrap_if(const Node& n, bool paren) { return paren ? "(" + render(n) + ")" : render(n); }

} // namespace detail

/// Canonical ASCII spelling; parse_expression(render(t)) == t.
inline std::string render(const Node& n)
{
    switch (n.kind) {
    case NodeKind::number: return to_string(n.value);
    case NodeKind::variable: return "x";
    case NodeKind::power: {
        const Node& b = *n.children[0];
        bool paren = detail::level(b) < 4 || (b.kind == NodeKind::number && denominator(b.value) != 1);
        return detail::wrap_if(b, paren) + "^" + std::to_string(n.index);
    }
    case NodeKind::product: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const Node& c = *n.children[i];
            if (i) out += "*";
            out += detail::wrap_if(c, detail::level(c) <= 1);
        }
        return out;
    }
    case NodeKind::sum: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const Node& c = *n.children[i];
            if (i && c.kind == NodeKind::negate) {
                const Node& inner = *c.children[0];
                out += " - " + detail::wrap_if(inner, detail::level(inner) == 0);
                continue;
            }
            if (i) out += " + ";
            out += detail::wrap_if(c, detail::level(c) == 0);
        }
        return out;
    }
    case NodeKind::negate: {
        const Node& c = *n.children[0];
        return "-" + detail::wrap_if(c, detail::level(c) <= 1);
    }
    case NodeKind::family: {
        std::string out = n.name + "(" + std::to_string(n.index);
        if (n.has_beta) out += "; " + to_string(n.value);
        return out + ")";
    }
    case NodeKind::hyp0f1: return "hyp0f1(" + std::to_string(n.index) + ")";
    case NodeKind::derivative: return "D[" + render(*n.children[0]) + "; " + to_string(n.value) + "]";
    }
    return "?";
}

inline std::string render(const NodePtr& n) { return render(*n); }

} // namespace fracleibniz::cli
