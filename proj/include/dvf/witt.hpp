#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvf/finite_field.hpp"

namespace dvf {

class RingDesc;
using RingRef = std::shared_ptr<const RingDesc>;

/**
 * W(F_{p^k}) truncated at absolute precision p^N, presented as
 * (Z/p^N)[t]/(Phi) where Phi is the residue modulus with its coefficients read
 * as integers in [0, p). Phi is monic and separable mod p, so this is the
 * unramified extension of degree k and t reduces to the field generator a.
 *
 * The Frobenius lift sends t to the unique root of Phi congruent to t^p mod p.
 * Matrices of sigma^i for 0 <= i < k are precomputed.
 */
class RingDesc {
public:
    static RingRef make(FieldRef field, unsigned precision);

    const FieldRef& field() const noexcept { return field_; }
    Int p() const noexcept { return field_->p(); }
    unsigned k() const noexcept { return field_->k(); }
    unsigned N() const noexcept { return n_; }
    Int modulus() const noexcept { return pn_; }  // p^N

    const std::vector<Int>& phi() const noexcept { return phi_; }
    const std::vector<Int>& sigma_image() const noexcept { return sigma_image_; }

    // Column j of sigma_matrix(i) is sigma^i(t^j); i is taken modulo k.
    const std::vector<std::vector<Int>>& sigma_matrix(std::int64_t i) const;

    bool same_as(const RingDesc& other) const noexcept {
        return this == &other || (n_ == other.n_ && field_->same_as(*other.field_));
    }

    std::string to_string() const;

    RingDesc(FieldRef field, unsigned precision);

private:
    FieldRef field_;
    unsigned n_;
    Int pn_;
    std::vector<Int> phi_;
    std::vector<Int> sigma_image_;
    std::vector<std::vector<std::vector<Int>>> sigma_powers_;
};

// Valuation in Z together with infinity; the infinite value marks x = 0 mod p^N.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(int v) : v_(v), finite_(true) {}
    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_finite() const noexcept { return finite_; }
    constexpr int value() const noexcept { return v_; }

    friend constexpr bool operator==(Valuation a, Valuation b) noexcept {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) noexcept {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.v_ <=> b.v_;
    }
    friend constexpr bool operator==(Valuation a, int b) noexcept { return a == Valuation(b); }
    friend constexpr std::strong_ordering operator<=>(Valuation a, int b) noexcept {
        return a <=> Valuation(b);
    }
    friend constexpr Valuation operator+(Valuation a, Valuation b) noexcept {
        return (a.finite_ && b.finite_) ? Valuation(a.v_ + b.v_) : infinity();
    }

    std::string to_string() const { return finite_ ? std::to_string(v_) : "inf"; }

private:
    int v_ = 0;
    bool finite_ = false;
};

std::ostream& operator<<(std::ostream& os, Valuation v);

class WittNum {
public:
    WittNum(RingRef ring, std::vector<Int> coeffs);

    static WittNum zero(RingRef ring);
    static WittNum one(RingRef ring);
    static WittNum generator(RingRef ring);
    static WittNum from_int(RingRef ring, std::int64_t value);

    // Coefficientwise lift of a residue with coordinates in [0, p).
    static WittNum lift(RingRef ring, const FieldElem& r);

    /**
     * Accepted forms:
     *   `-123`                      integer
     *   `[d_0, d_1, ...] base p`    Teichmüller digits, sum of p^i teich(d_i)
     *   `{c_0, c_1, ...}`           coordinates in the basis 1, t, ..., t^{k-1}
     */
    static WittNum parse(RingRef ring, std::string_view text);

    const RingRef& ring() const noexcept { return ring_; }
    std::span<const Int> coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;

    WittNum operator-() const;
    WittNum& operator+=(const WittNum& rhs);
    WittNum& operator-=(const WittNum& rhs);
    WittNum& operator*=(const WittNum& rhs);

    friend WittNum operator+(WittNum lhs, const WittNum& rhs) { return lhs += rhs; }
    friend WittNum operator-(WittNum lhs, const WittNum& rhs) { return lhs -= rhs; }
    friend WittNum operator*(WittNum lhs, const WittNum& rhs) { return lhs *= rhs; }

    friend bool operator==(const WittNum& lhs, const WittNum& rhs);

    // Integer in [0, p^N) for k = 1, otherwise `{c_0, ..., c_{k-1}}`.
    std::string to_integer_string() const;
    // `[d_0, ..., d_{N-1}] base p` with Teichmüller digits.
    std::string to_digit_string() const;
    // Canonical form: the integer when k = 1, the digit form otherwise.
    std::string to_string() const;

private:
    RingRef ring_;
    std::vector<Int> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const WittNum& x);

Valuation val(const WittNum& x);

FieldElem residue(const WittNum& x);

// Throws NonUnitInverse unless val(x) = 0.
WittNum inverse(const WittNum& x);

WittNum pow(const WittNum& x, Int exponent);

/**
 * The symbol Q: x / y with Q(x, 0) = 0. The answer is determined modulo
 * p^{N - val(y)}; the top val(y) digits are returned as zero. PrecisionLoss when
 * val(x) < val(y).
 */
WittNum quot(const WittNum& x, const WittNum& y);

// x * p^e for e >= 0.
WittNum mul_p_power(const WittNum& x, unsigned e);

// x / p^e, requiring val(x) >= e; the top e digits of the result are zero.
WittNum div_p_power(const WittNum& x, unsigned e);

// sigma^iterate; negative iterates use sigma^{k - 1} repeatedly.
WittNum frobenius(const WittNum& x, std::int64_t iterate = 1);

WittNum teichmuller(const RingRef& ring, const FieldElem& r);

// d_0..d_{N-1} with x = sum p^i teich(d_i) mod p^N.
std::vector<FieldElem> teichmuller_digits(const WittNum& x);
WittNum from_teichmuller_digits(const RingRef& ring, std::span<const FieldElem> digits);

// Same element read at another precision over the same residue field.
WittNum change_precision(const WittNum& x, const RingRef& target);

// Uniform on W mod p^N; when min_val > 0 the result is divisible by p^min_val.
WittNum random_witt(const RingRef& ring, std::mt19937_64& rng, unsigned min_val = 0);

// Uniform unit.
WittNum random_unit(const RingRef& ring, std::mt19937_64& rng);

// Embedding W(F_{p^k}) -> W(F_{p^{kj}}) at equal precision, lifting a field
// embedding. Commutes with sigma.
struct RingEmbedding {
    RingRef source;
    RingRef target;
    WittNum generator_image;
    FieldEmbedding residue_embedding;

    WittNum apply(const WittNum& x) const;
};

RingEmbedding extend_ring(const RingRef& ring, unsigned factor);

}  // namespace dvf
