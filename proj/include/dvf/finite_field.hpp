#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvf/modular.hpp"

namespace dvf {

class FieldDesc;
using FieldRef = std::shared_ptr<const FieldDesc>;

/**
 * The finite field F_{p^k} = F_p[a]/(modulus).
 *
 * Immutable once built. Construction checks that p is prime and that the
 * modulus is monic and irreducible (Rabin's test), and precomputes the matrix
 * of the Frobenius x -> x^p in the basis 1, a, ..., a^{k-1}.
 */
class FieldDesc {
public:
    // modulus lists c_0..c_k low-to-high and must be monic of degree k.
    static FieldRef make(Int p, std::vector<Int> modulus);

    // Least irreducible of degree k, ordering candidates by the base-p integer
    // c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
    static FieldRef make_default(Int p, unsigned k);

    // `GF(p^k; c_0,c_1,...,c_k)`
    static FieldRef parse(std::string_view text);

    Int p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    const std::vector<Int>& modulus() const noexcept { return modulus_; }

    // p^k, saturating at UINT64_MAX.
    Int order() const noexcept { return order_; }

    // Column j holds the coordinates of frob(a^j).
    const std::vector<std::vector<Int>>& frobenius_matrix() const noexcept { return frob_; }

    std::string to_string() const;

    bool same_as(const FieldDesc& other) const noexcept {
        return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
    }

    FieldDesc(Int p, std::vector<Int> modulus);

private:
    Int p_;
    unsigned k_;
    std::vector<Int> modulus_;
    Int order_;
    std::vector<std::vector<Int>> frob_;
};

// Element of F_{p^k}, stored as k coordinates over F_p in the power basis of a.
class FieldElem {
public:
    FieldElem(FieldRef field, std::vector<Int> coeffs);

    static FieldElem zero(FieldRef field);
    static FieldElem one(FieldRef field);
    static FieldElem generator(FieldRef field);
    static FieldElem from_int(FieldRef field, std::int64_t value);

    // Inverse of index(): digit j of the base-p expansion is coordinate j.
    static FieldElem from_index(FieldRef field, Int index);

    // Parses a polynomial in `a`, e.g. `a+1`, `2*a^2+a`, `-a`, `3`.
    static FieldElem parse(FieldRef field, std::string_view text);

    const FieldRef& field() const noexcept { return field_; }
    std::span<const Int> coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    // Base-p integer c_0 + c_1 p + ...; also the total order used for
    // deterministic choices.
    Int index() const noexcept;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& rhs);
    FieldElem& operator-=(const FieldElem& rhs);
    FieldElem& operator*=(const FieldElem& rhs);

    friend FieldElem operator+(FieldElem lhs, const FieldElem& rhs) { return lhs += rhs; }
    friend FieldElem operator-(FieldElem lhs, const FieldElem& rhs) { return lhs -= rhs; }
    friend FieldElem operator*(FieldElem lhs, const FieldElem& rhs) { return lhs *= rhs; }

    friend bool operator==(const FieldElem& lhs, const FieldElem& rhs);
    friend bool operator<(const FieldElem& lhs, const FieldElem& rhs);

    std::string to_string() const;

private:
    FieldRef field_;
    std::vector<Int> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

FieldElem inverse(const FieldElem& x);
FieldElem pow(const FieldElem& x, Int exponent);

// x^{p^iterate}; iterate is taken modulo k.
FieldElem frobenius(const FieldElem& x, std::int64_t iterate = 1);

FieldElem random_field_elem(const FieldRef& field, std::mt19937_64& rng);

// Every element of the field, ordered by index(). Only for small fields.
std::vector<FieldElem> all_elements(const FieldRef& field);

struct LinearizedSolution {
    std::vector<FieldElem> roots;  // sorted by index()
    // The roots are empty here but a root exists in some finite extension.
    bool extension_required = false;
    unsigned kernel_dimension = 0;
};

/**
 * All x in F_{p^k} with sum_i coeffs[i] * x^{p^i} = rhs.
 *
 * The left side is F_p-linear in x, so the equation is a k x k linear system
 * over F_p. A nonzero additive polynomial is surjective on the algebraic
 * closure, so an empty answer always comes with extension_required set.
 */
LinearizedSolution solve_linearized(std::span<const FieldElem> coeffs, const FieldElem& rhs);

// Embedding of F_{p^k} into F_{p^{kj}}, fixed by the image of the generator.
struct FieldEmbedding {
    FieldRef source;
    FieldRef target;
    FieldElem generator_image;

    FieldElem apply(const FieldElem& x) const;
};

// Builds the default field of degree k*factor and an embedding into it.
FieldEmbedding extend_field(const FieldRef& field, unsigned factor);

// Some root in `target` of a polynomial over F_p (coefficients low-to-high),
// found by equal-degree splitting. Throws if there is none.
FieldElem find_root(const FieldRef& target, std::span<const Int> poly_over_fp);

}  // namespace dvf
