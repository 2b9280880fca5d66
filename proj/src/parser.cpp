#include "dvf/parser.hpp"

#include <cctype>
#include <limits>

#include "dvf/error.hpp"

namespace dvf {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, End, Bad };

struct Token {
    Tok kind = Tok::End;
    std::size_t begin = 0;  // 0-based offsets
    std::size_t end = 0;
    std::string_view text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        Token t;
        t.begin = pos_;
        if (pos_ == text_.size()) {
            t.kind = Tok::End;
            t.end = pos_;
            return t;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            t.kind = Tok::Int;
        } else if (ident_start(c)) {
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            t.kind = Tok::Ident;
        } else {
            ++pos_;
            switch (c) {
                case '+': t.kind = Tok::Plus; break;
                case '-': t.kind = Tok::Minus; break;
                case '*': t.kind = Tok::Star; break;
                case '^': t.kind = Tok::Caret; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case ',': t.kind = Tok::Comma; break;
                default: t.kind = Tok::Bad; break;
            }
        }
        t.end = pos_;
        t.text = text_.substr(t.begin, t.end - t.begin);
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

const std::vector<std::string> kAtomStart = {"integer", "p", "x", "s", "Q", "series name", "("};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { advance(); }

    Term parse() {
        Term t = sum();
        if (cur_.kind != Tok::End) fail({"+", "-", "*", "end of input"});
        return t;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string found = cur_.kind == Tok::End ? "end of input" : "'" + std::string(cur_.text) + "'";
        std::string list;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) list += ", ";
            list += expected[i];
        }
        const std::size_t column = cur_.begin + 1;
        throw SyntaxError(column, std::move(expected),
                          "syntax error at column " + std::to_string(column) + ": found " + found +
                              ", expected one of " + list);
    }

    SourceSpan span_from(std::size_t begin) const { return {begin + 1, last_end_ + 1}; }

    void consume() {
        last_end_ = cur_.end;
        advance();
    }

    Term sum() {
        const std::size_t begin = cur_.begin;
        Term acc = prod();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool plus = cur_.kind == Tok::Plus;
            consume();
            Term rhs = prod();
            acc = plus ? Term::add(std::move(acc), std::move(rhs), span_from(begin))
                       : Term::sub(std::move(acc), std::move(rhs), span_from(begin));
        }
        return acc;
    }

    Term prod() {
        const std::size_t begin = cur_.begin;
        Term acc = atom();
        while (cur_.kind == Tok::Star) {
            consume();
            acc = Term::mul(std::move(acc), atom(), span_from(begin));
        }
        return acc;
    }

    std::uint64_t integer() {
        if (cur_.kind != Tok::Int) fail({"integer"});
        std::uint64_t value = 0;
        for (char c : cur_.text) {
            const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
            if (value > (static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) - digit) / 10) {
                fail({"integer below 2^63"});
            }
            value = value * 10 + digit;
        }
        consume();
        return value;
    }

    void close() {
        if (cur_.kind != Tok::RParen) fail({")"});
        consume();
    }

    Term atom() {
        const std::size_t begin = cur_.begin;
        switch (cur_.kind) {
            case Tok::Int: {
                const std::uint64_t value = integer();
                return Term::constant(value, span_from(begin));
            }
            case Tok::LParen: {
                consume();
                Term inner = sum();
                close();
                return inner;
            }
            case Tok::Ident: break;
            default: fail(kAtomStart);
        }
        const std::string name(cur_.text);
        consume();
        if (name == "p") return Term::prime(span_from(begin));
        if (name == "x") return Term::variable(span_from(begin));
        if (name == "s") {
            unsigned power = 1;
            if (cur_.kind == Tok::Caret) {
                consume();
                const std::uint64_t e = integer();
                if (e > std::numeric_limits<unsigned>::max()) fail({"sigma power"});
                power = static_cast<unsigned>(e);
                if (cur_.kind != Tok::LParen) fail({"("});
            } else if (cur_.kind != Tok::LParen) {
                fail({"^", "("});
            }
            consume();
            Term inner = sum();
            close();
            return Term::sigma(power, std::move(inner), span_from(begin));
        }
        expect_open();
        if (name == "Q") {
            Term a = sum();
            if (cur_.kind != Tok::Comma) fail({","});
            consume();
            Term b = sum();
            close();
            return Term::quot(std::move(a), std::move(b), span_from(begin));
        }
        std::vector<Term> args;
        args.push_back(sum());
        while (cur_.kind == Tok::Comma) {
            consume();
            args.push_back(sum());
        }
        if (cur_.kind != Tok::RParen) fail({",", ")"});
        consume();
        return Term::series(name, std::move(args), span_from(begin));
    }

    void expect_open() {
        if (cur_.kind != Tok::LParen) fail({"("});
        consume();
    }

    Lexer lexer_;
    Token cur_;
    std::size_t last_end_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

}  // namespace dvf
