#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dvf/witt.hpp"

namespace dvf {

// Sort index m of lt_n for n = p^m. Any n >= 1 maps to m = v_p(n): the sorts for
// n and p^{v_p(n)} coincide in mixed characteristic.
unsigned level_of_index(Int n, Int p);

// The ring O / p^{m+1} O, i.e. W(F_{p^k}) at precision m + 1.
RingRef residue_ring(const FieldRef& field, unsigned m);

// Element of res_n = O / nM for n = p^m.
struct ResidueRingElem {
    unsigned level = 0;
    WittNum value;

    friend bool operator==(const ResidueRingElem&, const ResidueRingElem&) = default;
    ResidueRingElem operator*(const ResidueRingElem& rhs) const;

    // `res[m](v)`
    std::string to_string() const;
};

/**
 * Element of lt_n = K* / (1 + p^{m+1} O) together with 0_n.
 *
 * A nonzero class is u * p^gamma with u a unit known modulo p^{m+1}; unit()
 * lives in residue_ring(field, m).
 */
class LeadingTerm {
public:
    static LeadingTerm zero(const FieldRef& field, unsigned level);
    static LeadingTerm make(unsigned level, int gamma, WittNum unit);

    unsigned level() const noexcept { return level_; }
    bool is_zero() const noexcept { return !gamma_.is_finite(); }
    Valuation gamma() const noexcept { return gamma_; }
    const WittNum& unit() const { return *unit_; }
    const FieldRef& field() const noexcept { return field_; }

    friend bool operator==(const LeadingTerm& lhs, const LeadingTerm& rhs);

    // `lt[m](gamma; u)` or `0[m]`
    std::string to_string() const;
    static LeadingTerm parse(const FieldRef& field, std::string_view text);

private:
    LeadingTerm(FieldRef field, unsigned level, Valuation gamma, std::optional<WittNum> unit)
        : field_(std::move(field)), level_(level), gamma_(gamma), unit_(std::move(unit)) {}

    FieldRef field_;
    unsigned level_;
    Valuation gamma_;
    std::optional<WittNum> unit_;
};

std::ostream& operator<<(std::ostream& os, const LeadingTerm& x);

// InsufficientPrecision unless m + 1 + val(x) <= N.
LeadingTerm lt_map(const WittNum& x, unsigned m);

LeadingTerm lt_mul(const LeadingTerm& x, const LeadingTerm& y);

// Div_n: vallt(x) <= vallt(y).
bool lt_divides(const LeadingTerm& x, const LeadingTerm& y);

/**
 * x + y read at level m_dst <= level of x and y. Defined as lt_{m_dst}(a + b)
 * when the representatives a, b satisfy
 *   val(a + b) <= min(val a, val b) + (m_src - m_dst),
 * and 0 at level m_dst otherwise.
 */
LeadingTerm lt_partial_add(const LeadingTerm& x, const LeadingTerm& y, unsigned m_dst);

LeadingTerm lt_project(const LeadingTerm& x, unsigned m_dst);

// ac_m(x) = res_m(x p^{-val x}); ac_m(0) = 0.
ResidueRingElem ac(const WittNum& x, unsigned m);

// Reduction of an element of O to res_m. x must be known modulo p^{m+1}.
ResidueRingElem res_map(const WittNum& x, unsigned m);

// sigma_m on res_m.
ResidueRingElem frobenius(const ResidueRingElem& x, std::int64_t iterate = 1);

}  // namespace dvf
