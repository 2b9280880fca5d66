#include "dvf/leading_term.hpp"

#include <algorithm>
#include <ostream>

#include "dvf/error.hpp"
#include "text_cursor.hpp"

namespace dvf {

unsigned level_of_index(Int n, Int p) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "lt index must be >= 1");
    return static_cast<unsigned>(mod::valuation(n, p));
}

RingRef residue_ring(const FieldRef& field, unsigned m) { return RingDesc::make(field, m + 1); }

ResidueRingElem ResidueRingElem::operator*(const ResidueRingElem& rhs) const {
    if (level != rhs.level) throw Error(ErrorCode::InvalidArgument, "residue rings of different levels");
    return ResidueRingElem{level, value * rhs.value};
}

std::string ResidueRingElem::to_string() const {
    return "res[" + std::to_string(level) + "](" + value.to_string() + ")";
}

LeadingTerm LeadingTerm::zero(const FieldRef& field, unsigned level) {
    return LeadingTerm(field, level, Valuation::infinity(), std::nullopt);
}

LeadingTerm LeadingTerm::make(unsigned level, int gamma, WittNum unit) {
    const FieldRef field = unit.ring()->field();
    if (unit.ring()->N() != level + 1) {
        unit = change_precision(unit, residue_ring(field, level));
    }
    if (val(unit) != 0) throw Error(ErrorCode::NotUnit, "leading term unit part must be a unit");
    return LeadingTerm(field, level, Valuation(gamma), std::move(unit));
}

bool operator==(const LeadingTerm& lhs, const LeadingTerm& rhs) {
    if (lhs.level_ != rhs.level_ || lhs.gamma_ != rhs.gamma_) return false;
    if (lhs.is_zero()) return lhs.field_->same_as(*rhs.field_);
    return *lhs.unit_ == *rhs.unit_;
}

std::string LeadingTerm::to_string() const {
    if (is_zero()) return "0[" + std::to_string(level_) + "]";
    return "lt[" + std::to_string(level_) + "](" + std::to_string(gamma_.value()) + "; " +
           unit_->to_string() + ")";
}

LeadingTerm LeadingTerm::parse(const FieldRef& field, std::string_view text) {
    detail::TextCursor cur(text);
    if (cur.accept('0')) {
        cur.expect('[');
        const auto m = static_cast<unsigned>(cur.read_uint());
        cur.expect(']');
        cur.expect_end();
        return zero(field, m);
    }
    cur.expect_word("lt");
    cur.expect('[');
    const auto m = static_cast<unsigned>(cur.read_uint());
    cur.expect(']');
    cur.expect('(');
    const bool negative = cur.accept('-');
    const auto g = static_cast<int>(cur.read_uint());
    cur.expect(';');
    const auto unit_text = cur.take_until(")");
    cur.expect(')');
    cur.expect_end();
    WittNum unit = WittNum::parse(residue_ring(field, m), unit_text);
    if (val(unit) != 0) cur.fail("unit part is not a unit");
    return make(m, negative ? -g : g, std::move(unit));
}

std::ostream& operator<<(std::ostream& os, const LeadingTerm& x) { return os << x.to_string(); }

namespace {

void require_precision(const WittNum& x, unsigned m) {
    const Valuation v = val(x);
    if (!v.is_finite()) return;
    if (static_cast<Int>(m) + 1 + static_cast<Int>(v.value()) > x.ring()->N()) {
        throw Error(ErrorCode::InsufficientPrecision,
                    "level " + std::to_string(m) + " needs " + std::to_string(m + 1 + v.value()) +
                        " digits but N = " + std::to_string(x.ring()->N()));
    }
}

void require_same_level(const LeadingTerm& x, const LeadingTerm& y) {
    if (x.level() != y.level()) throw Error(ErrorCode::InvalidArgument, "leading terms of different levels");
    if (!x.field()->same_as(*y.field())) throw Error(ErrorCode::MixedField, "leading terms over different fields");
}

}  // namespace

LeadingTerm lt_map(const WittNum& x, unsigned m) {
    require_precision(x, m);
    const Valuation v = val(x);
    if (!v.is_finite()) return LeadingTerm::zero(x.ring()->field(), m);
    const WittNum u = div_p_power(x, static_cast<unsigned>(v.value()));
    return LeadingTerm::make(m, v.value(), change_precision(u, residue_ring(x.ring()->field(), m)));
}

LeadingTerm lt_mul(const LeadingTerm& x, const LeadingTerm& y) {
    require_same_level(x, y);
    if (x.is_zero() || y.is_zero()) return LeadingTerm::zero(x.field(), x.level());
    return LeadingTerm::make(x.level(), x.gamma().value() + y.gamma().value(), x.unit() * y.unit());
}

bool lt_divides(const LeadingTerm& x, const LeadingTerm& y) {
    require_same_level(x, y);
    return x.gamma() <= y.gamma();
}

LeadingTerm lt_project(const LeadingTerm& x, unsigned m_dst) {
    if (m_dst > x.level()) throw Error(ErrorCode::InvalidArgument, "projection must lower the level");
    if (x.is_zero()) return LeadingTerm::zero(x.field(), m_dst);
    return LeadingTerm::make(m_dst, x.gamma().value(), change_precision(x.unit(), residue_ring(x.field(), m_dst)));
}

LeadingTerm lt_partial_add(const LeadingTerm& x, const LeadingTerm& y, unsigned m_dst) {
    require_same_level(x, y);
    const unsigned m_src = x.level();
    if (m_dst > m_src) throw Error(ErrorCode::InvalidArgument, "partial addition must lower the level");
    if (x.is_zero()) return lt_project(y, m_dst);
    if (y.is_zero()) return lt_project(x, m_dst);

    const int g0 = std::min(x.gamma().value(), y.gamma().value());
    const auto shift = [&](const LeadingTerm& t) {
        return mul_p_power(t.unit(), static_cast<unsigned>(t.gamma().value() - g0));
    };
    // Both summands scaled by p^{-g0}; the sum is exact modulo p^{m_src + 1}.
    const WittNum sum = shift(x) + shift(y);
    const Valuation v = val(sum);
    const auto slack = static_cast<int>(m_src - m_dst);
    if (!v.is_finite() || v.value() > slack) return LeadingTerm::zero(x.field(), m_dst);
    const WittNum u = div_p_power(sum, static_cast<unsigned>(v.value()));
    return LeadingTerm::make(m_dst, g0 + v.value(), change_precision(u, residue_ring(x.field(), m_dst)));
}

ResidueRingElem ac(const WittNum& x, unsigned m) {
    require_precision(x, m);
    const RingRef target = residue_ring(x.ring()->field(), m);
    const Valuation v = val(x);
    if (!v.is_finite()) return ResidueRingElem{m, WittNum::zero(target)};
    return ResidueRingElem{m, change_precision(div_p_power(x, static_cast<unsigned>(v.value())), target)};
}

ResidueRingElem res_map(const WittNum& x, unsigned m) {
    if (m + 1 > x.ring()->N()) {
        throw Error(ErrorCode::InsufficientPrecision, "res_" + std::to_string(m) + " needs N > m");
    }
    return ResidueRingElem{m, change_precision(x, residue_ring(x.ring()->field(), m))};
}

ResidueRingElem frobenius(const ResidueRingElem& x, std::int64_t iterate) {
    return ResidueRingElem{x.level, frobenius(x.value, iterate)};
}

}  // namespace dvf
