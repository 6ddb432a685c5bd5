#pragma once

// Renders the closed-form derivative tables as expression trees so that
// they can be compared with brute-force differentiation.

#include <cstddef>
#include <vector>

#include "../lemmas.hpp"
#include "expr.hpp"

namespace fracleibniz::oracle {

inline ExprPtr lemma_inner(LemmaVariant variant)
{
    switch (variant) {
    case LemmaVariant::ln: return ln(x());
    case LemmaVariant::exp: return exp(x());
    case LemmaVariant::recip: return recip(x());
    }
    return x();
}

// f(inner(x)), the function the table differentiates.
inline ExprPtr lemma_subject(LemmaVariant variant) { return f(0, lemma_inner(variant)); }

inline ExprPtr lemma_table_as_tree(LemmaVariant variant, const std::vector<LemmaTerm>& table)
{
    std::vector<ExprPtr> terms;
    ExprPtr base = variant == LemmaVariant::exp ? exp(x()) : x();
    for (const auto& t : table)
        terms.push_back(product({constant(t.coefficient), f(t.derivative, lemma_inner(variant)), power(base, t.exponent)}));
    return sum(std::move(terms));
}

inline ExprPtr chain_table_as_tree(std::size_t epsilon, std::size_t m, const ChainTable& table)
{
    std::vector<ExprPtr> terms;
    for (const auto& [chain, coeff] : table) {
        std::vector<ExprPtr> fs{constant(coeff), f(chain.back(), iterated_ln(epsilon)), power(x(), -static_cast<long>(m))};
        for (std::size_t i = 0; i + 1 < epsilon; ++i) fs.push_back(power(iterated_ln(i + 1), -static_cast<long>(chain[i])));
        terms.push_back(product(std::move(fs)));
    }
    return sum(std::move(terms));
}

} // namespace fracleibniz::oracle
