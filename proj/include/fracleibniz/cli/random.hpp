#pragma once

// Seeded generators for randomized grids. Values are drawn with plain
// modular reduction so a seed means the same inputs on every standard library.

#include <cstddef>
#include <cstdint>
#include <random>

#include "../exactnum.hpp"
#include "../polynomial.hpp"
#include "ast.hpp"

namespace fracleibniz::cli {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform-ish integer in [lo, hi].
    long between(long lo, long hi) { return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    // p/q with |p| <= 9, 1 <= q <= 6; nonzero when asked.
    Rational rational(bool nonzero = false)
    {
        while (true) {
            Rational r(between(-9, 9), between(1, 6));
            if (!nonzero || r != 0) return r;
        }
    }

    // Exact degree d (the zero polynomial is never returned).
    Poly poly(std::size_t degree)
    {
        std::vector<Rational> c;
        for (std::size_t i = 0; i < degree; ++i) c.push_back(rational());
        c.push_back(rational(true));
        return Poly(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

/// Random expression tree of bounded depth over the full grammar.
inline NodePtr random_ast(Rng& rng, int depth)
{
    static const char* fams[] = {"falling", "rising", "bell", "laguerre", "bernoulli", "euler", "hermite"};
    auto leaf = [&]() -> NodePtr {
        switch (rng.below(5)) {
        case 0: {
            Rational r = rng.rational();
            return number(r < 0 ? Rational(-r) : r);
        }
        case 1: return variable();
        case 2: {
            std::string name = fams[rng.below(7)];
            if (name == "laguerre") return family(name, rng.below(6), rng.rational());
            return family(name, rng.below(6));
        }
        case 3: return hyp0f1(rng.below(5));
        default: return power(variable(), rng.below(7));
        }
    };
    if (depth <= 0) return leaf();
    switch (rng.below(7)) {
    case 0: return leaf();
    case 1: return power(random_ast(rng, depth - 1), rng.below(4));
    case 2:
    case 3: {
        std::vector<NodePtr> c;
        std::size_t k = 2 + rng.below(2);
        for (std::size_t i = 0; i < k; ++i) c.push_back(random_ast(rng, depth - 1));
        return rng.below(2) ? product(std::move(c)) : sum(std::move(c));
    }
    case 4: return negate(random_ast(rng, depth - 1));
    case 5: return derivative(random_ast(rng, depth - 1), rng.rational());
    default: return leaf();
    }
}

} // namespace fracleibniz::cli
