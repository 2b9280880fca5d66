#include <random>

#include "doctest.h"
#include "dvf/error.hpp"
#include "dvf/parser.hpp"
#include "test_support.hpp"

using namespace dvf;

namespace {

SyntaxError syntax_error_of(const std::string& text) {
    try {
        (void)parse_term(text);
    } catch (const SyntaxError& e) {
        return e;
    }
    FAIL("no syntax error for " << text);
    return SyntaxError(0, {}, "");
}

}  // namespace

TEST_CASE("grammar derivations") {
    const Term t = parse_term("s(x)*x - 7");
    CHECK(t == Term::sub(Term::mul(Term::sigma(1, Term::variable()), Term::variable()), Term::constant(7)));
    CHECK(parse_term("Q(x, s^2(x))") == Term::quot(Term::variable(), Term::sigma(2, Term::variable())));
    CHECK(parse_term("p") == Term::prime());
    CHECK(parse_term("geo(x, 3)") == Term::series("geo", {Term::variable(), Term::constant(3)}));
    CHECK(parse_term("((x))") == Term::variable());
    CHECK(parse_term("1 - 2 - 3") == Term::sub(Term::sub(Term::constant(1), Term::constant(2)), Term::constant(3)));
    CHECK(parse_term("1 + 2*3") == Term::add(Term::constant(1), Term::mul(Term::constant(2), Term::constant(3))));
    CHECK(parse_term("s^0(x)") == Term::sigma(0, Term::variable()));
}

TEST_CASE("spans are 1-based columns") {
    const Term t = parse_term("x + s(x)");
    CHECK(t.span().begin == 1);
    CHECK(t.span().end == 9);
    CHECK(t.children()[1].span().begin == 5);
    CHECK(t.children()[1].children()[0].span().begin == 7);
}

TEST_CASE("syntax errors carry column and expected set") {
    const auto e = syntax_error_of("x + * 3");
    CHECK(e.column() == 5);
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "integer") != e.expected().end());

    CHECK(syntax_error_of("").column() == 1);
    CHECK(syntax_error_of("x x").column() == 3);
    CHECK(syntax_error_of("s x").column() == 3);
    CHECK(syntax_error_of("s^(x)").column() == 3);
    CHECK(syntax_error_of("Q(x)").column() == 4);
    CHECK(syntax_error_of("f(x").column() == 4);
    CHECK(syntax_error_of("(x").column() == 3);
    CHECK(syntax_error_of("x # 1").column() == 3);
    CHECK(syntax_error_of("-x").column() == 1);
    CHECK(syntax_error_of("f()").column() == 3);
    CHECK(syntax_error_of("99999999999999999999").column() == 1);
}

TEST_CASE("canonical printing") {
    CHECK(parse_term("x*x-2").to_string() == "x*x - 2");
    CHECK(parse_term("2 * (x + 1)").to_string() == "2*(x + 1)");
    CHECK(parse_term("x - (1 - x)").to_string() == "x - (1 - x)");
    CHECK(parse_term("(x - 1) - x").to_string() == "x - 1 - x");
    CHECK(parse_term("x*(x*x)").to_string() == "x*(x*x)");
    CHECK(parse_term("s^1( x )").to_string() == "s(x)");
    CHECK(parse_term("Q( x ,s^2(x) )").to_string() == "Q(x, s^2(x))");
    CHECK(parse_term("f(x,p)").to_string() == "f(x, p)");
}

TEST_CASE("parse inverts print on random terms") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> names{"f", "geo", "g2"};
    for (int i = 0; i < 500; ++i) {
        const Term t = testing::random_term(rng, 6, names, 1 + static_cast<unsigned>(i % 3));
        const std::string text = t.to_string();
        CAPTURE(text);
        const Term back = parse_term(text);
        CHECK(back == t);
        CHECK(back.to_string() == text);
    }
}
