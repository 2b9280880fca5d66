#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvf/witt.hpp"

namespace dvf {

// Exponent of X_0..X_{mX-1} followed by Y_0..Y_{nY-1}.
using Exponent = std::vector<unsigned>;

/**
 * Truncation of an element of A<X>[[Y]] with A = W(F_{p^k}) mod p^N.
 *
 * Only monomials of total Y-degree below y_bound() are stored, and only nonzero
 * coefficients. The stored part determines f(x, y) mod p^N whenever
 * y_bound() * min val(y_j) >= N.
 */
class SeparatedSeries {
public:
    SeparatedSeries(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound);

    static SeparatedSeries constant(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound, const WittNum& c);
    // The variable with combined index `var` (X's first, then Y's).
    static SeparatedSeries variable(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound, unsigned var);

    const RingRef& ring() const noexcept { return ring_; }
    unsigned mx() const noexcept { return mx_; }
    unsigned ny() const noexcept { return ny_; }
    unsigned arity() const noexcept { return mx_ + ny_; }
    unsigned y_bound() const noexcept { return y_bound_; }
    const std::map<Exponent, WittNum>& terms() const noexcept { return terms_; }

    WittNum coefficient(const Exponent& e) const;
    // Adds c to the coefficient of e; dropped if |nu| >= y_bound.
    void add_term(const Exponent& e, const WittNum& c);

    unsigned y_degree(const Exponent& e) const;
    bool is_zero() const noexcept { return terms_.empty(); }

    SeparatedSeries& operator+=(const SeparatedSeries& rhs);
    SeparatedSeries& operator-=(const SeparatedSeries& rhs);
    SeparatedSeries operator-() const;
    friend SeparatedSeries operator+(SeparatedSeries a, const SeparatedSeries& b) { return a += b; }
    friend SeparatedSeries operator-(SeparatedSeries a, const SeparatedSeries& b) { return a -= b; }
    friend SeparatedSeries operator*(const SeparatedSeries& a, const SeparatedSeries& b);
    friend SeparatedSeries operator*(const WittNum& c, const SeparatedSeries& f);
    friend bool operator==(const SeparatedSeries& a, const SeparatedSeries& b);

    // Same series with a smaller Y-degree bound.
    SeparatedSeries truncate(unsigned y_bound) const;

    std::string to_string() const;

private:
    void require_compatible(const SeparatedSeries& other) const;

    RingRef ring_;
    unsigned mx_;
    unsigned ny_;
    unsigned y_bound_;
    std::map<Exponent, WittNum> terms_;
};

SeparatedSeries pow(const SeparatedSeries& f, unsigned e);

/**
 * f(x, y) mod p^N. Outside O^m x M^n, i.e. when some val(y_j) < 1, the value is 0.
 * TruncationUnsound when y_bound * min val(y_j) < N.
 */
WittNum eval(const SeparatedSeries& f, std::span<const WittNum> x, std::span<const WittNum> y);

// Formal partial derivative in the combined variable index. A Y-derivative
// lowers the bound by one since the dropped terms feed its top degree.
SeparatedSeries derivative(const SeparatedSeries& f, unsigned var);

// sigma^i applied to every coefficient.
SeparatedSeries frobenius(const SeparatedSeries& f, std::int64_t iterate = 1);

// Coefficientwise image under a ring embedding.
SeparatedSeries embed(const SeparatedSeries& f, const RingEmbedding& emb);

/**
 * Degree d such that f is regular in `var` of degree d:
 *   X_v: f = monic polynomial of degree d in X_v mod J + (Y);
 *   Y_n: f = Y_n^d mod J + (Y_{!=n}) + (Y_n^{d+1}).
 * The leading coefficient must reduce to exactly 1.
 */
std::optional<unsigned> regular_degree(const SeparatedSeries& f, unsigned var);

struct PreregularWitness {
    Exponent mu0;  // over the inner X variables
    Exponent nu0;  // over the inner Y variables
    unsigned d = 0;

    friend bool operator==(const PreregularWitness&, const PreregularWitness&) = default;
};

/**
 * Preregularity in the inner variables (X_1, Y_1) given by combined indices;
 * the rest are outer. All clauses are tested on residues mod J + (Y_2). The
 * witness is unique once d is minimal: nu0 is the least nu whose coefficient
 * survives, mu0 the greatest mu surviving with nu0, d one more than the largest
 * surviving |mu| + |nu|.
 */
std::optional<PreregularWitness> preregular(const SeparatedSeries& f, std::span<const unsigned> inner_x,
                                            std::span<const unsigned> inner_y);

// sum_i d^{m-1-i} mu_i
Int ord_index(std::span<const unsigned> mu, unsigned d);

/**
 * T_d on the block `vars` (all X or all Y, in order): v_i <- v_i + v_last^{d^{L-1-i}},
 * or minus when `inverse` is set.
 */
SeparatedSeries weierstrass_change(const SeparatedSeries& f, unsigned d, std::span<const unsigned> vars,
                                   bool inverse = false);

// Every X variable, or every Y variable, as a combined-index block.
std::vector<unsigned> x_block(const SeparatedSeries& f);
std::vector<unsigned> y_block(const SeparatedSeries& f);

struct DivisionResult {
    SeparatedSeries q;
    SeparatedSeries r;
    unsigned degree = 0;
    unsigned passes = 0;
};

struct DivisionOptions {
    // Order in which the long division consumes terms of g; the result is
    // the same either way.
    bool reverse_iteration = false;
};

/**
 * g = q f + r with r a polynomial in `var` of degree < d, f regular of degree d
 * (NotRegular otherwise). For a Y variable q and r carry the bound
 * y_bound - d and the identity holds at that bound.
 */
DivisionResult weierstrass_divide(const SeparatedSeries& g, const SeparatedSeries& f, unsigned var,
                                  const DivisionOptions& options = {});

struct Preparation {
    SeparatedSeries u;
    SeparatedSeries P;
    unsigned degree = 0;
};

// f = u P with P monic in `var` of degree d and u a unit.
Preparation weierstrass_prepare(const SeparatedSeries& f, unsigned var);

// True when f mod J + (Y) is a nonzero constant.
bool is_unit(const SeparatedSeries& f);

// NotUnit unless is_unit(f).
SeparatedSeries unit_inverse(const SeparatedSeries& f);

// `series mX nY yBound` then `mu | nu : <literal>` per line; `#` starts a comment.
SeparatedSeries parse_series(const RingRef& ring, std::string_view text);
std::string format_series(const SeparatedSeries& f);
SeparatedSeries read_series_file(const RingRef& ring, const std::filesystem::path& path);

}  // namespace dvf
