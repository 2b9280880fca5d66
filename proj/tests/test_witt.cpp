#include <random>

#include "doctest.h"
#include "dvf/error.hpp"
#include "dvf/witt.hpp"

using namespace dvf;

namespace {

RingRef zp(Int p, unsigned n) { return RingDesc::make(FieldDesc::make_default(p, 1), n); }

WittNum num(const RingRef& r, std::int64_t v) { return WittNum::from_int(r, v); }

// Digit-by-digit lift of a root of x^2 = c mod p^n from a simple root mod p.
Int sqrt_digit_lift(Int c, Int start, Int p, unsigned n) {
    Int x = start, pk = p;
    for (unsigned i = 1; i < n; ++i) {
        const Int next = pk * p;
        for (Int d = 0; d < p; ++d) {
            const Int cand = x + d * pk;
            if ((cand * cand) % next == c % next) {
                x = cand;
                break;
            }
        }
        pk = next;
    }
    return x;
}

}  // namespace

TEST_CASE("Z_7 fixtures") {
    auto r = zp(7, 4);
    const Int root = sqrt_digit_lift(2, 3, 7, 4);
    CHECK(root == 2166);
    CHECK(num(r, 2166) * num(r, 2166) == num(r, 2));

    Int brute_inv = 0;
    for (Int y = 0; y < 2401; ++y) {
        if ((36 * y) % 2401 == 1) brute_inv = y;
    }
    CHECK(brute_inv == 1534);
    CHECK(inverse(num(r, 36)) == num(r, 1534));

    CHECK(teichmuller(r, FieldElem::from_int(r->field(), 6)) == num(r, 2400));
    CHECK(teichmuller(r, FieldElem::from_int(r->field(), 0)).is_zero());
    CHECK(teichmuller(r, FieldElem::from_int(r->field(), 1)) == num(r, 1));
    CHECK(val(num(r, 98)) == 2);
    CHECK(!val(num(r, 0)).is_finite());
    CHECK(val(num(r, 2401)) == Valuation::infinity());
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_witt(r, rng);
        CHECK((x + (-x)).is_zero());
        CHECK(frobenius(x) == x);
    }
}

TEST_CASE("F_4 Teichmüller and sigma fixtures") {
    auto f = FieldDesc::make(2, {1, 1, 1});
    auto r3 = RingDesc::make(f, 3);
    const auto alpha = FieldElem::generator(f);
    const auto t = teichmuller(r3, alpha);
    CHECK(pow(t, 3) == WittNum::one(r3));

    auto r4 = RingDesc::make(f, 4);
    for (const auto& x : all_elements(f)) {
        CHECK(frobenius(teichmuller(r4, x)) == teichmuller(r4, frobenius(x, 1)));
    }
    const auto diff = frobenius(teichmuller(r4, alpha)) - teichmuller(r4, alpha);
    CHECK(val(diff) == 0);
}

TEST_CASE("sigma against the Teichmüller digit oracle, p=3 k=2 N=5") {
    auto r = RingDesc::make(FieldDesc::make_default(3, 2), 5);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_witt(r, rng);
        const auto y = random_witt(r, rng);
        CHECK(frobenius(x) * frobenius(y) == frobenius(x * y));
        CHECK(residue(frobenius(x)) == residue(pow(x, 3)));
        auto digits = teichmuller_digits(x);
        CHECK(from_teichmuller_digits(r, digits) == x);
        for (auto& d : digits) d = frobenius(d, 1);
        CHECK(from_teichmuller_digits(r, digits) == frobenius(x));
    }
}

TEST_CASE("ring laws, valuation and Frobenius lift") {
    for (Int p : {2, 3, 7}) {
        for (unsigned k : {1U, 2U, 3U}) {
            for (unsigned n : {4U, 8U}) {
                auto r = RingDesc::make(FieldDesc::make_default(p, k), n);
                std::mt19937_64 rng(p * 1000 + k * 10 + n);
                for (int i = 0; i < 200; ++i) {
                    const auto x = random_witt(r, rng);
                    const auto y = random_witt(r, rng);
                    const auto z = random_witt(r, rng);
                    REQUIRE((x * y) * z == x * (y * z));
                    REQUIRE(x * (y + z) == x * y + x * z);
                    REQUIRE(x * y == y * x);
                    REQUIRE(frobenius(x, static_cast<std::int64_t>(k)) == x);
                    REQUIRE(frobenius(frobenius(x, -1)) == x);
                    REQUIRE(val(frobenius(x)) == val(x));
                    const auto vx = val(x), vy = val(y);
                    if ((vx + vy) < static_cast<int>(n)) REQUIRE(val(x * y) == vx + vy);
                    REQUIRE(val(x + y) >= std::min(vx, vy));
                }
                const auto u = random_unit(r, rng);
                const auto v = random_unit(r, rng);
                CHECK(val(u * v * mul_p_power(WittNum::one(r), 3)) == 3);
                CHECK(inverse(u) * u == WittNum::one(r));
                const auto s = random_field_elem(r->field(), rng);
                const auto t = random_field_elem(r->field(), rng);
                CHECK(teichmuller(r, s) * teichmuller(r, t) == teichmuller(r, s * t));
            }
        }
    }
}

TEST_CASE("sigma image is a root of Phi lifting t^p") {
    for (Int p : {2, 3, 5}) {
        for (unsigned k : {2U, 3U, 4U}) {
            auto r = RingDesc::make(FieldDesc::make_default(p, k), 6);
            const WittNum s(r, r->sigma_image());
            WittNum acc = WittNum::zero(r);
            for (std::size_t i = r->phi().size(); i-- > 0;) acc = acc * s + WittNum(r, {r->phi()[i]});
            CHECK(acc.is_zero());
            CHECK(residue(s) == pow(FieldElem::generator(r->field()), p));
        }
    }
}

TEST_CASE("quot") {
    auto r = zp(7, 4);
    CHECK(quot(num(r, 5), num(r, 0)).is_zero());
    CHECK(quot(num(r, 98), num(r, 14)) == num(r, 7));
    CHECK(quot(num(r, 10), num(r, 5)) == num(r, 2));
    try {
        (void)quot(num(r, 1), num(r, 7));
        FAIL("expected PrecisionLoss");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecisionLoss);
    }
    try {
        (void)inverse(num(r, 7));
        FAIL("expected NonUnitInverse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonUnitInverse);
    }
}

TEST_CASE("literals") {
    auto r = zp(7, 4);
    CHECK(WittNum::parse(r, "2166") == num(r, 2166));
    CHECK(WittNum::parse(r, "-1") == num(r, 2400));
    CHECK(WittNum::parse(r, "[6] base 7") == num(r, 2400));
    CHECK_THROWS_AS(WittNum::parse(r, "[1] base 5"), Error);
    CHECK_THROWS_AS(WittNum::parse(r, "12x"), Error);

    auto f4 = RingDesc::make(FieldDesc::make(2, {1, 1, 1}), 4);
    CHECK(WittNum::parse(f4, "{1, 3}") == WittNum(f4, {1, 3}));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_witt(f4, rng);
        CHECK(WittNum::parse(f4, x.to_string()) == x);
        CHECK(WittNum::parse(f4, x.to_integer_string()) == x);
        const auto y = random_witt(r, rng);
        CHECK(WittNum::parse(r, y.to_digit_string()) == y);
    }
    CHECK(WittNum::parse(f4, "[a, a+1] base 2") ==
          teichmuller(f4, FieldElem::generator(f4->field())) +
              mul_p_power(teichmuller(f4, FieldElem::parse(f4->field(), "a+1")), 1));
}

TEST_CASE("ring embeddings lift field embeddings and commute with sigma") {
    auto r = RingDesc::make(FieldDesc::make(2, {1, 1, 1}), 4);
    auto emb = extend_ring(r, 2);
    CHECK(emb.target->k() == 4);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_witt(r, rng);
        const auto y = random_witt(r, rng);
        CHECK(emb.apply(x * y) == emb.apply(x) * emb.apply(y));
        CHECK(emb.apply(x + y) == emb.apply(x) + emb.apply(y));
        CHECK(emb.apply(frobenius(x)) == frobenius(emb.apply(x)));
        CHECK(residue(emb.apply(x)) == emb.residue_embedding.apply(residue(x)));
    }
}
