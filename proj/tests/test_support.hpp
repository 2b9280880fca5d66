#pragma once

// Hand-rolled generators shared by the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include "dvf/series.hpp"
#include "dvf/term.hpp"
#include "dvf/witt.hpp"

namespace dvf::testing {

inline unsigned uniform(std::mt19937_64& rng, unsigned lo, unsigned hi) {
    return lo + static_cast<unsigned>(rng() % (hi - lo + 1));
}

inline Exponent random_exponent(std::mt19937_64& rng, unsigned mx, unsigned ny, unsigned max_x, unsigned max_y) {
    Exponent e(mx + ny, 0);
    for (unsigned i = 0; i < mx; ++i) e[i] = uniform(rng, 0, max_x);
    unsigned budget = max_y;
    for (unsigned j = 0; j < ny; ++j) {
        e[mx + j] = uniform(rng, 0, budget);
        budget -= e[mx + j];
    }
    return e;
}

// Sparse series with `terms` random monomials.
inline SeparatedSeries random_series(const RingRef& ring, unsigned mx, unsigned ny, unsigned y_bound,
                                     std::mt19937_64& rng, unsigned terms, unsigned max_x = 3,
                                     unsigned min_val = 0) {
    SeparatedSeries f(ring, mx, ny, y_bound);
    const unsigned max_y = y_bound == 0 ? 0 : y_bound - 1;
    for (unsigned t = 0; t < terms; ++t) {
        f.add_term(random_exponent(rng, mx, ny, max_x, max_y), random_witt(ring, rng, min_val));
    }
    return f;
}

// Series regular of degree d in the X variable `var`.
inline SeparatedSeries random_x_regular(const RingRef& ring, unsigned mx, unsigned ny, unsigned y_bound,
                                        unsigned var, unsigned d, std::mt19937_64& rng) {
    SeparatedSeries f(ring, mx, ny, y_bound);
    Exponent top(mx + ny, 0);
    top[var] = d;
    f.add_term(top, WittNum::one(ring) + random_witt(ring, rng, 1));
    for (unsigned i = 0; i < d; ++i) {
        for (int rep = 0; rep < 2; ++rep) {
            Exponent e = random_exponent(rng, mx, 0, 2, 0);
            e.resize(mx + ny, 0);
            e[var] = i;
            f.add_term(e, random_witt(ring, rng));
        }
    }
    f += random_series(ring, mx, ny, y_bound, rng, 4, 3, 1);
    if (ny > 0) {
        SeparatedSeries y_part = random_series(ring, mx, ny, y_bound, rng, 4);
        f += y_part * SeparatedSeries::variable(ring, mx, ny, y_bound, mx + uniform(rng, 0, ny - 1));
    }
    return f;
}

// Series regular of degree d in the Y variable `var`.
inline SeparatedSeries random_y_regular(const RingRef& ring, unsigned mx, unsigned ny, unsigned y_bound,
                                        unsigned var, unsigned d, std::mt19937_64& rng) {
    SeparatedSeries f(ring, mx, ny, y_bound);
    Exponent top(mx + ny, 0);
    top[var] = d;
    f.add_term(top, WittNum::one(ring) + random_witt(ring, rng, 1));
    f += random_series(ring, mx, ny, y_bound, rng, 4, 3, 1);
    for (int rep = 0; rep < 3; ++rep) {
        Exponent e = random_exponent(rng, mx, ny, 2, y_bound - 1);
        if (e[var] <= d) e[var] = d + 1;
        f.add_term(e, random_witt(ring, rng));
    }
    for (unsigned j = mx; j < mx + ny; ++j) {
        if (j == var) continue;
        Exponent e = random_exponent(rng, mx, ny, 2, 1);
        e[j] = 1;
        f.add_term(e, random_witt(ring, rng));
    }
    return f;
}

// Random term of depth at most `depth`. Series references use the given
// names, each applied to `arity` arguments.
inline Term random_term(std::mt19937_64& rng, unsigned depth, const std::vector<std::string>& series = {},
                        unsigned arity = 1, bool allow_quot = true) {
    const unsigned leaf_kinds = 3;
    const unsigned kinds = leaf_kinds + 4 + (allow_quot ? 1 : 0) + (series.empty() ? 0 : 1);
    const unsigned pick = depth == 0 ? uniform(rng, 0, leaf_kinds - 1) : uniform(rng, 0, kinds - 1);
    auto sub = [&] { return random_term(rng, depth - 1, series, arity, allow_quot); };
    switch (pick) {
        case 0: return Term::constant(uniform(rng, 0, 60));
        case 1: return Term::prime();
        case 2: return Term::variable();
        case 3: return Term::add(sub(), sub());
        case 4: return Term::sub(sub(), sub());
        case 5: return Term::mul(sub(), sub());
        case 6: return Term::sigma(uniform(rng, 0, 3), sub());
        case 7:
            if (allow_quot) return Term::quot(sub(), sub());
            [[fallthrough]];
        default: {
            std::vector<Term> args;
            for (unsigned i = 0; i < arity; ++i) args.push_back(sub());
            return Term::series(series[uniform(rng, 0, static_cast<unsigned>(series.size()) - 1)], std::move(args));
        }
    }
}

}  // namespace dvf::testing
