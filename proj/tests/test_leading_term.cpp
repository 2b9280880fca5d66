#include <random>

#include "doctest.h"
#include "dvf/error.hpp"
#include "dvf/leading_term.hpp"

using namespace dvf;

namespace {

RingRef z7(unsigned n) { return RingDesc::make(FieldDesc::make_default(7, 1), n); }

WittNum num(const RingRef& r, std::int64_t v) { return WittNum::from_int(r, v); }

// Direct definition: lt_{m_dst}(a + b) if the valuation condition holds on a, b.
LeadingTerm partial_add_oracle(const WittNum& a, const WittNum& b, unsigned m_src, unsigned m_dst) {
    const WittNum s = a + b;
    const Valuation bound = std::min(val(a), val(b)) + Valuation(static_cast<int>(m_src - m_dst));
    if (val(s) <= bound && val(s).is_finite()) return lt_map(s, m_dst);
    return LeadingTerm::zero(a.ring()->field(), m_dst);
}

}  // namespace

TEST_CASE("lt fixtures over Z_7") {
    auto r = z7(6);
    const auto l10 = lt_map(num(r, 10), 1);
    CHECK(l10.gamma() == 0);
    CHECK(l10.unit().coeffs()[0] == 10);
    CHECK(lt_map(num(r, 0), 1).is_zero());
    const auto l490 = lt_map(num(r, 490), 1);
    CHECK(l490.gamma() == 2);
    CHECK(l490.unit().coeffs()[0] == 10);
    CHECK(lt_map(num(r, 98), 1).to_string() == "lt[1](2; 2)");

    CHECK(lt_mul(l10, lt_map(num(r, 1), 1)) == l10);
    const auto prod = lt_mul(l10, lt_map(num(r, 5), 1));
    CHECK(prod.gamma() == 0);
    CHECK(prod.unit().coeffs()[0] == 1);
    CHECK(lt_divides(lt_map(num(r, 7), 1), lt_map(num(r, 49), 1)));
    CHECK(!lt_divides(lt_map(num(r, 49), 1), lt_map(num(r, 7), 1)));
}

TEST_CASE("partial addition fixtures") {
    auto r = z7(6);
    const auto s1 = lt_partial_add(lt_map(num(r, 1), 1), lt_map(num(r, 6), 1), 0);
    CHECK(s1 == lt_map(num(r, 7), 0));
    CHECK(s1.to_string() == "lt[0](1; 1)");
    CHECK(lt_partial_add(lt_map(num(r, 1), 1), lt_map(num(r, 48), 1), 0).is_zero());
    const auto s3 = lt_partial_add(lt_map(num(r, 1), 1), lt_map(num(r, 1), 1), 1);
    CHECK(s3.gamma() == 0);
    CHECK(s3.unit().coeffs()[0] == 2);
}

TEST_CASE("projection") {
    auto r = z7(6);
    const auto x = lt_map(num(r, 10), 1);
    CHECK(lt_project(x, 1) == x);
    CHECK(lt_project(x, 0).unit().coeffs()[0] == 3);
    CHECK(lt_project(LeadingTerm::zero(r->field(), 2), 0) == LeadingTerm::zero(r->field(), 0));
}

TEST_CASE("ac fixtures") {
    auto r = z7(6);
    CHECK(ac(num(r, 98), 0).value.coeffs()[0] == 2);
    CHECK(ac(num(r, 343), 2).value == WittNum::one(residue_ring(r->field(), 2)));
    CHECK(ac(num(r, 0), 1).value.is_zero());
    CHECK(ac(num(r, 98), 0).to_string() == "res[0](2)");
}

TEST_CASE("insufficient precision") {
    auto r = z7(4);
    try {
        (void)lt_map(num(r, 49), 2);
        FAIL("expected InsufficientPrecision");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientPrecision);
    }
    CHECK_NOTHROW(lt_map(num(r, 49), 1));
}

TEST_CASE("diagram commutes and ac is a sigma-compatible homomorphism") {
    std::mt19937_64 rng(21);
    for (auto [p, k] : std::vector<std::pair<Int, unsigned>>{{7, 1}, {2, 2}, {3, 2}, {2, 3}}) {
        auto r = RingDesc::make(FieldDesc::make_default(p, k), 8);
        for (int i = 0; i < 100; ++i) {
            const unsigned m = static_cast<unsigned>(rng() % 3);
            const WittNum x = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
            const WittNum y = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
            const auto lx = lt_map(x, m);
            CHECK(lx.gamma() == val(x));
            for (unsigned d = 0; d <= m; ++d) CHECK(lt_project(lx, d) == lt_map(x, d));
            CHECK(ac(x * y, m) == ac(x, m) * ac(y, m));
            CHECK(ac(frobenius(x), m) == frobenius(ac(x, m)));
            CHECK(lt_map(x * y, m) == lt_mul(lx, lt_map(y, m)));
        }
    }
}

TEST_CASE("partial addition does not depend on representatives") {
    std::mt19937_64 rng(22);
    for (auto [p, k] : std::vector<std::pair<Int, unsigned>>{{7, 1}, {2, 1}, {2, 2}, {3, 2}}) {
        auto r = RingDesc::make(FieldDesc::make_default(p, k), 10);
        for (int i = 0; i < 200; ++i) {
            const unsigned m_src = static_cast<unsigned>(rng() % 3);
            const unsigned m_dst = static_cast<unsigned>(rng() % (m_src + 1));
            const WittNum a = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
            // Half the time b nearly cancels a.
            WittNum b = mul_p_power(random_unit(r, rng), static_cast<unsigned>(rng() % 3));
            if (rng() % 2) b = -a + mul_p_power(random_witt(r, rng), static_cast<unsigned>(1 + rng() % 3));
            if (val(b) > 4) continue;
            const auto expected = lt_partial_add(lt_map(a, m_src), lt_map(b, m_src), m_dst);
            for (int rep = 0; rep < 3; ++rep) {
                const auto one = WittNum::one(r);
                const WittNum a2 = a * (one + mul_p_power(random_witt(r, rng), m_src + 1));
                const WittNum b2 = b * (one + mul_p_power(random_witt(r, rng), m_src + 1));
                CHECK(partial_add_oracle(a2, b2, m_src, m_dst) == expected);
            }
        }
    }
}

TEST_CASE("sort index normalisation and text form") {
    CHECK(level_of_index(1, 7) == 0);
    CHECK(level_of_index(49, 7) == 2);
    CHECK(level_of_index(98, 7) == 2);
    CHECK(level_of_index(12, 2) == 2);
    auto r = z7(6);
    const auto x = lt_map(num(r, 490), 1);
    CHECK(LeadingTerm::parse(r->field(), x.to_string()) == x);
    CHECK(LeadingTerm::parse(r->field(), "0[3]") == LeadingTerm::zero(r->field(), 3));
    auto f4 = RingDesc::make(FieldDesc::make_default(2, 2), 6);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto y = lt_map(mul_p_power(random_unit(f4, rng), 2), 2);
        CHECK(LeadingTerm::parse(f4->field(), y.to_string()) == y);
    }
}
