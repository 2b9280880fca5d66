#include <map>
#include <random>

#include "doctest.h"
#include "dvf/error.hpp"
#include "dvf/finite_field.hpp"

using namespace dvf;

namespace {

FieldRef f4() { return FieldDesc::make(2, {1, 1, 1}); }

FieldElem el(const FieldRef& f, const char* text) { return FieldElem::parse(f, text); }

// Number of monic irreducibles of degree k over F_p (Gauss).
Int gauss_count(Int p, unsigned k) {
    auto mobius = [](unsigned n) {
        int m = 1;
        for (unsigned d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                n /= d;
                if (n % d == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    std::int64_t total = 0;
    for (unsigned d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        std::int64_t pw = 1;
        for (unsigned i = 0; i < d; ++i) pw *= static_cast<std::int64_t>(p);
        total += mobius(k / d) * pw;
    }
    return static_cast<Int>(total / k);
}

}  // namespace

TEST_CASE("F4 fixtures") {
    auto f = f4();
    const auto a = FieldElem::generator(f);
    CHECK(a * a == el(f, "a+1"));
    CHECK(FieldElem::one(f) + FieldElem::one(f) == FieldElem::zero(f));
    CHECK(a * el(f, "a+1") == FieldElem::one(f));
    CHECK(inverse(a) == el(f, "a+1"));
    CHECK(frobenius(a, 1) == el(f, "a+1"));
    CHECK(frobenius(FieldElem::one(f), 1) == FieldElem::one(f));
    for (const auto& x : all_elements(f)) CHECK(frobenius(frobenius(x, 1), 1) == x);
}

TEST_CASE("F4 linearized fixtures") {
    auto f = f4();
    const auto one = FieldElem::one(f);
    const auto zero = FieldElem::zero(f);
    {
        std::vector<FieldElem> c{one, one};
        auto sol = solve_linearized(c, zero);
        REQUIRE(sol.roots.size() == 2);
        CHECK(sol.roots[0] == zero);
        CHECK(sol.roots[1] == one);
        CHECK(sol.kernel_dimension == 1);
    }
    {
        std::vector<FieldElem> c{one, one};
        auto sol = solve_linearized(c, one);
        REQUIRE(sol.roots.size() == 2);
        CHECK(sol.roots[0] == el(f, "a"));
        CHECK(sol.roots[1] == el(f, "a+1"));
    }
    {
        std::vector<FieldElem> c{zero, one};
        auto sol = solve_linearized(c, el(f, "a"));
        REQUIRE(sol.roots.size() == 1);
        CHECK(sol.roots[0] == el(f, "a+1"));
    }
    {
        std::vector<FieldElem> c{zero, zero};
        CHECK_THROWS_AS(solve_linearized(c, one), Error);
    }
}

TEST_CASE("x^2 + x = 1 needs an extension over F_2") {
    auto f2 = FieldDesc::make_default(2, 1);
    std::vector<FieldElem> c{FieldElem::one(f2), FieldElem::one(f2)};
    auto sol = solve_linearized(c, FieldElem::one(f2));
    CHECK(sol.roots.empty());
    CHECK(sol.extension_required);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(FieldDesc::make(4, {1, 1}), Error);
    try {
        FieldDesc::make(2, {1, 0, 1});
        FAIL("reducible modulus accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotIrreducible);
    }
    auto f = f4();
    try {
        (void)inverse(FieldElem::zero(f));
        FAIL("inverse of zero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
    auto g = FieldDesc::make_default(3, 2);
    try {
        (void)(FieldElem::one(f) + FieldElem::one(g));
        FAIL("mixed fields");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MixedField);
    }
}

TEST_CASE("default moduli are least irreducibles") {
    CHECK(FieldDesc::make_default(2, 2)->modulus() == std::vector<Int>{1, 1, 1});
    CHECK(FieldDesc::make_default(2, 3)->modulus() == std::vector<Int>{1, 1, 0, 1});
    CHECK(FieldDesc::make_default(2, 8)->modulus() ==
          std::vector<Int>{1, 1, 0, 1, 1, 0, 0, 0, 1});
    CHECK(FieldDesc::make_default(3, 2)->modulus() == std::vector<Int>{1, 0, 1});
}

TEST_CASE("irreducibility test matches the Gauss count") {
    for (Int p : {2, 3, 5}) {
        for (unsigned k = 1; k <= 4; ++k) {
            Int total = 1;
            for (unsigned i = 0; i < k; ++i) total *= p;
            if (total > 700) continue;
            Int accepted = 0;
            for (Int n = 0; n < total; ++n) {
                std::vector<Int> m(k + 1, 0);
                Int t = n;
                for (unsigned i = 0; i < k; ++i) {
                    m[i] = t % p;
                    t /= p;
                }
                m[k] = 1;
                try {
                    FieldDesc::make(p, m);
                    ++accepted;
                } catch (const Error& e) {
                    CHECK(e.code() == ErrorCode::NotIrreducible);
                }
            }
            CHECK_MESSAGE(accepted == gauss_count(p, k), "p=", p, " k=", k);
        }
    }
}

TEST_CASE("Frobenius is a ring endomorphism, exhaustively") {
    for (Int p : {2, 3, 5, 7}) {
        for (unsigned k = 1; k <= 3; ++k) {
            auto f = FieldDesc::make_default(p, k);
            if (f->order() > 343) continue;
            const auto elems = all_elements(f);
            for (const auto& x : elems) {
                CHECK(frobenius(x, 1) == pow(x, p));
                CHECK(frobenius(x, static_cast<std::int64_t>(k)) == x);
                CHECK(frobenius(frobenius(x, 1), -1) == x);
                if (f->order() > 49) continue;
                for (const auto& y : elems) {
                    CHECK(frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1));
                    CHECK(frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1));
                }
            }
        }
    }
}

TEST_CASE("inverse agrees with Fermat") {
    for (Int p : {2, 3, 5, 7}) {
        for (unsigned k = 1; k <= 6; ++k) {
            auto f = FieldDesc::make_default(p, k);
            if (f->order() > 64) continue;
            for (const auto& x : all_elements(f)) {
                if (x.is_zero()) continue;
                CHECK(inverse(x) == pow(x, f->order() - 2));
                CHECK((inverse(x) * x).is_one());
            }
        }
    }
}

TEST_CASE("linearized solver matches brute force") {
    std::mt19937_64 rng(7);
    for (Int p : {2, 3, 5, 7}) {
        for (unsigned k = 1; k <= 8; ++k) {
            auto f = FieldDesc::make_default(p, k);
            if (f->order() > 343) continue;
            const auto elems = all_elements(f);
            for (int trial = 0; trial < 20; ++trial) {
                const std::size_t n = 1 + rng() % 3;
                std::vector<FieldElem> c;
                for (std::size_t i = 0; i < n; ++i) c.push_back(random_field_elem(f, rng));
                if (trial % 5 == 0) c.back() = FieldElem::zero(f);
                bool all_zero = true;
                for (const auto& ci : c) all_zero = all_zero && ci.is_zero();
                if (all_zero) c[0] = FieldElem::one(f);
                const auto b = random_field_elem(f, rng);

                std::vector<FieldElem> brute;
                for (const auto& x : elems) {
                    FieldElem lhs = FieldElem::zero(f);
                    FieldElem xp = x;
                    for (const auto& ci : c) {
                        lhs += ci * xp;
                        xp = pow(xp, p);
                    }
                    if (lhs == b) brute.push_back(x);
                }
                const auto sol = solve_linearized(c, b);
                CHECK(sol.roots == brute);
                CHECK(sol.extension_required == brute.empty());
            }
        }
    }
}

TEST_CASE("parse and print round trip") {
    auto f = FieldDesc::make_default(3, 3);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_field_elem(f, rng);
        CHECK(FieldElem::parse(f, x.to_string()) == x);
    }
    CHECK(el(f, "-a") == -FieldElem::generator(f));
    CHECK(el(f, "2*a^2 + a - 1").to_string() == "2*a^2+a+2");
    auto g = FieldDesc::parse("GF(2^2; 1,1,1)");
    CHECK(g->same_as(*f4()));
    CHECK(FieldDesc::parse(g->to_string())->same_as(*g));
    CHECK(FieldDesc::parse("GF(7)")->k() == 1);
    CHECK_THROWS_AS(FieldDesc::parse("GF(2^2; 1,1)"), Error);
    CHECK_THROWS_AS(FieldElem::parse(f, "a +"), Error);
}

TEST_CASE("field embeddings are ring homomorphisms") {
    for (auto [p, k, j] : std::vector<std::tuple<Int, unsigned, unsigned>>{
             {2, 2, 2}, {2, 2, 3}, {3, 2, 2}, {2, 3, 2}, {5, 1, 3}, {2, 4, 2}, {2, 8, 2}}) {
        auto f = FieldDesc::make_default(p, k);
        auto emb = extend_field(f, j);
        CHECK(emb.target->k() == k * j);
        std::mt19937_64 rng(p * 100 + k * 10 + j);
        for (int i = 0; i < 30; ++i) {
            const auto x = random_field_elem(f, rng);
            const auto y = random_field_elem(f, rng);
            CHECK(emb.apply(x * y) == emb.apply(x) * emb.apply(y));
            CHECK(emb.apply(x + y) == emb.apply(x) + emb.apply(y));
            CHECK(emb.apply(frobenius(x, 1)) == frobenius(emb.apply(x), 1));
        }
    }
}
