#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "dvf/error.hpp"
#include "dvf/modular.hpp"

namespace dvf::detail {

// Whitespace-skipping scanner for the small literal grammars (fields,
// field elements, ring elements, series files). Failures are LiteralError.
class TextCursor {
public:
    explicit TextCursor(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ == text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    void expect_word(std::string_view word) {
        if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
    }

    Int read_uint() {
        if (!peek_digit()) fail("expected integer");
        Int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const Int digit = static_cast<Int>(text_[pos_] - '0');
            if (value > (~Int{0} - digit) / 10) fail("integer literal too large");
            value = value * 10 + digit;
            ++pos_;
        }
        return value;
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing input");
    }

    // Text up to (not including) the first occurrence of any of `stops` at
    // bracket depth zero.
    std::string_view take_until(std::string_view stops) {
        skip_space();
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (depth == 0 && stops.find(c) != std::string_view::npos) break;
            if (c == '(' || c == '[' || c == '{') ++depth;
            if (c == ')' || c == ']' || c == '}') --depth;
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorCode::LiteralError, message + " at column " + std::to_string(column()) +
                                                 " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace dvf::detail
