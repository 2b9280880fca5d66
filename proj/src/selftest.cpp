#include "dvf/selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "dvf/error.hpp"
#include "dvf/hensel.hpp"
#include "dvf/leading_term.hpp"
#include "dvf/parser.hpp"
#include "dvf/series.hpp"
#include "dvf/witt.hpp"

namespace dvf {

namespace {

struct Suite {
    std::string name;
    unsigned cases;
    // Returns an empty string on success, else a description of the failure.
    std::function<std::string(std::mt19937_64&)> run_case;
};

std::string fail_unless(bool ok, const std::string& what) { return ok ? std::string() : what; }

RingRef ring(Int p, unsigned k, unsigned n) { return RingDesc::make(FieldDesc::make_default(p, k), n); }

std::string frobenius_laws(std::mt19937_64& rng) {
    static const std::vector<std::tuple<Int, unsigned, unsigned>> shapes{{2, 1, 4}, {3, 2, 4}, {7, 3, 8}, {2, 3, 8}};
    const auto& [p, k, n] = shapes[rng() % shapes.size()];
    const auto r = ring(p, k, n);
    const WittNum x = random_witt(r, rng);
    const WittNum y = random_witt(r, rng);
    if (frobenius(x + y) != frobenius(x) + frobenius(y)) return "sigma not additive on " + r->to_string();
    if (frobenius(x * y) != frobenius(x) * frobenius(y)) return "sigma not multiplicative on " + r->to_string();
    if (residue(frobenius(x)) != pow(residue(x), p)) return "sigma does not lift Frobenius";
    if (frobenius(x, k) != x) return "sigma^k is not the identity";
    return fail_unless(val(frobenius(x)) == val(x), "sigma changes the valuation");
}

std::string ac_laws(std::mt19937_64& rng) {
    const auto r = ring(rng() % 2 ? 7 : 2, 1 + static_cast<unsigned>(rng() % 2), 8);
    const unsigned m = static_cast<unsigned>(rng() % 3);
    const WittNum x = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
    const WittNum y = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
    if (ac(x * y, m) != ac(x, m) * ac(y, m)) return "ac is not multiplicative";
    if (ac(frobenius(x), m) != frobenius(ac(x, m))) return "ac does not commute with sigma";
    return fail_unless(lt_map(x * y, m) == lt_mul(lt_map(x, m), lt_map(y, m)), "lt is not multiplicative");
}

std::string division_identity(std::mt19937_64& rng) {
    const auto r = ring(rng() % 2 ? 3 : 5, 1, 5);
    const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
    SeparatedSeries f(r, 2, 0, 0);
    f.add_term({d, 0}, WittNum::one(r));
    for (unsigned i = 0; i < d + 3; ++i) {
        const unsigned e0 = static_cast<unsigned>(rng() % (d + 2));
        const WittNum c = e0 >= d ? mul_p_power(random_witt(r, rng), 1) : random_witt(r, rng);
        f.add_term({e0, static_cast<unsigned>(rng() % 3)}, c);
    }
    SeparatedSeries g(r, 2, 0, 0);
    for (unsigned i = 0; i < 5; ++i) {
        g.add_term({static_cast<unsigned>(rng() % 5), static_cast<unsigned>(rng() % 3)}, random_witt(r, rng));
    }
    const auto res = weierstrass_divide(g, f, 0);
    if (res.q * f + res.r != g) return "g != q f + r";
    for (const auto& [e, c] : res.r.terms()) {
        if (e[0] >= res.degree) return "remainder degree too large";
    }
    const auto prep = weierstrass_prepare(f, 0);
    if (prep.u * prep.P != f) return "f != u P";
    return fail_unless(is_unit(prep.u), "preparation factor is not a unit");
}

std::string hensel_roots(std::mt19937_64& rng) {
    const Int p = rng() % 2 ? 7 : 2;
    const auto r = ring(p, 1, 8);
    // (x - root) * (x - other) + p^2 * c: a simple root near `root` when p does
    // not divide root - other.
    const Int m = r->modulus();
    const Int root = rng() % m;
    const Int other = (root + 1 + (p == 2 ? 0 : rng() % (p - 1))) % m;
    std::ostringstream text;
    text << "(x + " << (m - root) % m << ")*(x + " << (m - other) % m << ") + p*p*" << rng() % 50;
    const Term t = parse_term(text.str());
    const WittNum a0 = WittNum::from_int(r, static_cast<std::int64_t>(root));
    const auto rep = sigma_hensel_solve(t, a0);
    if (!prolong_eval(t, rep.root).is_zero()) return "no root for " + text.str();
    for (std::size_t i = 1; i < rep.steps.size(); ++i) {
        if (!(rep.steps[i].value > rep.steps[i - 1].value)) return "step valuations not increasing";
    }
    return fail_unless(rep.steps.empty() || val(rep.root - a0) >= rep.steps.front().e, "root left the first ball");
}

std::string parse_round_trip(std::mt19937_64& rng) {
    std::function<std::string(unsigned)> gen = [&](unsigned depth) -> std::string {
        const unsigned pick = depth == 0 ? static_cast<unsigned>(rng() % 3) : static_cast<unsigned>(rng() % 8);
        switch (pick) {
            case 0: return std::to_string(rng() % 100);
            case 1: return "p";
            case 2: return "x";
            case 3: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
            case 4: return gen(depth - 1) + " - (" + gen(depth - 1) + ")";
            case 5: return "(" + gen(depth - 1) + ")*(" + gen(depth - 1) + ")";
            case 6: return "s^" + std::to_string(rng() % 3) + "(" + gen(depth - 1) + ")";
            default: return "Q(" + gen(depth - 1) + ", f(" + gen(depth - 1) + "))";
        }
    };
    const Term t = parse_term(gen(5));
    const std::string text = t.to_string();
    return fail_unless(parse_term(text) == t && parse_term(text).to_string() == text, "round trip fails on " + text);
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
    const std::vector<Suite> suites{
        {"frobenius-lift-laws", 200, frobenius_laws},
        {"leading-term-homomorphisms", 200, ac_laws},
        {"weierstrass-division", 40, division_identity},
        {"sigma-hensel-roots", 60, hensel_roots},
        {"term-print-parse", 200, parse_round_trip},
    };
    std::vector<SelftestResult> out;
    for (const auto& suite : suites) {
        std::mt19937_64 rng(seed);
        SelftestResult res{suite.name, true, 0, {}};
        for (unsigned i = 0; i < suite.cases && res.passed; ++i) {
            ++res.cases;
            try {
                res.detail = suite.run_case(rng);
            } catch (const Error& e) {
                res.detail = std::string(error_name(e.code())) + ": " + e.what();
            }
            res.passed = res.detail.empty();
        }
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace dvf
