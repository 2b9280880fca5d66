#include "dvf/witt.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "dvf/error.hpp"
#include "text_cursor.hpp"

namespace dvf {
namespace {

using Vec = std::vector<Int>;

// Arithmetic in (Z/m)[t]/(phi) on raw coordinate vectors of length k.
struct RawRing {
    const Vec& phi;
    Int m;
    unsigned k;

    Vec add(const Vec& a, const Vec& b) const {
        Vec out(k);
        for (unsigned i = 0; i < k; ++i) out[i] = mod::add(a[i], b[i], m);
        return out;
    }

    Vec sub(const Vec& a, const Vec& b) const {
        Vec out(k);
        for (unsigned i = 0; i < k; ++i) out[i] = mod::sub(a[i], b[i], m);
        return out;
    }

    Vec mul(const Vec& a, const Vec& b) const {
        std::vector<Int> prod(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j) {
                prod[i + j] = mod::add(prod[i + j], mod::mul(a[i], b[j], m), m);
            }
        }
        for (unsigned d = 2 * k - 1; d-- > k;) {
            const Int top = prod[d];
            if (top == 0) continue;
            for (unsigned i = 0; i < k; ++i) {
                prod[d - k + i] = mod::sub(prod[d - k + i], mod::mul(top, phi[i], m), m);
            }
        }
        prod.resize(k);
        return prod;
    }

    Vec one() const {
        Vec out(k, 0);
        out[0] = 1 % m;
        return out;
    }

    Vec eval_poly(const Vec& poly, const Vec& at) const {
        Vec acc(k, 0);
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = mul(acc, at);
            acc[0] = mod::add(acc[0], poly[i] % m, m);
        }
        return acc;
    }

    Vec apply_matrix(const std::vector<Vec>& cols, std::span<const Int> x) const {
        Vec out(k, 0);
        for (unsigned j = 0; j < k; ++j) {
            if (x[j] == 0) continue;
            for (unsigned i = 0; i < k; ++i) out[i] = mod::add(out[i], mod::mul(x[j], cols[j][i], m), m);
        }
        return out;
    }

    // Inverse of a unit by Newton iteration y <- y (2 - a y) from a residue inverse.
    Vec unit_inverse(const Vec& a, const FieldRef& field) const {
        const Int p = field->p();
        Vec r(k);
        for (unsigned i = 0; i < k; ++i) r[i] = a[i] % p;
        const FieldElem res_inv = inverse(FieldElem(field, r));
        Vec y(res_inv.coeffs().begin(), res_inv.coeffs().end());
        Vec two(k, 0);
        two[0] = 2 % m;
        for (int iter = 0; iter < 64; ++iter) {
            Vec next = mul(y, sub(two, mul(a, y)));
            if (next == y) break;
            y = std::move(next);
        }
        return y;
    }
};

void require_same_ring(const WittNum& a, const WittNum& b) {
    if (!a.ring()->same_as(*b.ring())) {
        throw Error(ErrorCode::MixedField,
                    "ring elements over " + a.ring()->to_string() + " and " + b.ring()->to_string());
    }
}

RawRing raw(const RingDesc& r) { return RawRing{r.phi(), r.modulus(), r.k()}; }

}  // namespace

// ---------------------------------------------------------------- RingDesc

RingDesc::RingDesc(FieldRef field, unsigned precision) : field_(std::move(field)), n_(precision) {
    if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "precision N must be >= 1");
    const auto pn = mod::checked_power(field_->p(), n_);
    if (!pn) {
        throw Error(ErrorCode::InvalidArgument,
                    "p^N exceeds 2^62 for p=" + std::to_string(field_->p()) + ", N=" + std::to_string(n_));
    }
    pn_ = *pn;
    const unsigned k = field_->k();
    phi_.assign(field_->modulus().begin(), field_->modulus().end());
    const RawRing ring{phi_, pn_, k};

    // Newton lift of the residue Frobenius image of t to a root of Phi.
    const auto& frob = field_->frobenius_matrix();
    Vec s = k > 1 ? frob[1] : Vec{0};
    if (k == 1) s[0] = (field_->p() - phi_[0]) % field_->p();
    Vec dphi(k, 0);
    for (unsigned i = 1; i <= k; ++i) dphi[i - 1] = mod::mul(phi_[i], i, pn_);
    for (int iter = 0; iter < 64; ++iter) {
        const Vec value = ring.eval_poly(phi_, s);
        if (std::all_of(value.begin(), value.end(), [](Int c) { return c == 0; })) break;
        const Vec slope_inv = ring.unit_inverse(ring.eval_poly(dphi, s), field_);
        s = ring.sub(s, ring.mul(value, slope_inv));
    }
    sigma_image_ = s;

    std::vector<Vec> first(k);
    Vec power = ring.one();
    for (unsigned j = 0; j < k; ++j) {
        first[j] = power;
        power = ring.mul(power, s);
    }
    std::vector<Vec> identity(k, Vec(k, 0));
    for (unsigned j = 0; j < k; ++j) identity[j][j] = 1 % pn_;
    sigma_powers_.push_back(identity);
    for (unsigned i = 1; i < k; ++i) {
        std::vector<Vec> next(k);
        for (unsigned j = 0; j < k; ++j) next[j] = ring.apply_matrix(first, sigma_powers_.back()[j]);
        sigma_powers_.push_back(std::move(next));
    }
}

RingRef RingDesc::make(FieldRef field, unsigned precision) {
    return std::make_shared<const RingDesc>(std::move(field), precision);
}

const std::vector<std::vector<Int>>& RingDesc::sigma_matrix(std::int64_t i) const {
    const auto k = static_cast<std::int64_t>(field_->k());
    std::int64_t r = i % k;
    if (r < 0) r += k;
    return sigma_powers_[static_cast<std::size_t>(r)];
}

std::string RingDesc::to_string() const {
    return "W(" + field_->to_string() + ") mod " + std::to_string(field_->p()) + "^" + std::to_string(n_);
}

std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

// ---------------------------------------------------------------- WittNum

WittNum::WittNum(RingRef ring, std::vector<Int> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    const unsigned k = ring_->k();
    if (coeffs_.size() > k) {
        throw Error(ErrorCode::InvalidArgument, "too many coordinates for " + ring_->to_string());
    }
    coeffs_.resize(k, 0);
    for (auto& c : coeffs_) c %= ring_->modulus();
}

WittNum WittNum::zero(RingRef ring) { return WittNum(std::move(ring), {}); }

WittNum WittNum::one(RingRef ring) { return WittNum(std::move(ring), {1}); }

WittNum WittNum::generator(RingRef ring) {
    if (ring->k() == 1) {
        const Int c = mod::neg(ring->phi()[0] % ring->modulus(), ring->modulus());
        return WittNum(std::move(ring), {c});
    }
    return WittNum(std::move(ring), {0, 1});
}

WittNum WittNum::from_int(RingRef ring, std::int64_t value) {
    const Int m = ring->modulus();
    const Int mag = value < 0 ? static_cast<Int>(-(value + 1)) + 1 : static_cast<Int>(value);
    const Int r = mag % m;
    return WittNum(std::move(ring), {value < 0 ? mod::neg(r, m) : r});
}

WittNum WittNum::lift(RingRef ring, const FieldElem& r) {
    if (!r.field()->same_as(*ring->field())) {
        throw Error(ErrorCode::MixedField, "residue from " + r.field()->to_string());
    }
    return WittNum(std::move(ring), std::vector<Int>(r.coeffs().begin(), r.coeffs().end()));
}

bool WittNum::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Int c) { return c == 0; });
}

WittNum WittNum::operator-() const {
    WittNum out = *this;
    for (auto& c : out.coeffs_) c = mod::neg(c, ring_->modulus());
    return out;
}

WittNum& WittNum::operator+=(const WittNum& rhs) {
    require_same_ring(*this, rhs);
    coeffs_ = raw(*ring_).add(coeffs_, rhs.coeffs_);
    return *this;
}

WittNum& WittNum::operator-=(const WittNum& rhs) {
    require_same_ring(*this, rhs);
    coeffs_ = raw(*ring_).sub(coeffs_, rhs.coeffs_);
    return *this;
}

WittNum& WittNum::operator*=(const WittNum& rhs) {
    require_same_ring(*this, rhs);
    coeffs_ = raw(*ring_).mul(coeffs_, rhs.coeffs_);
    return *this;
}

bool operator==(const WittNum& lhs, const WittNum& rhs) {
    return lhs.ring_->same_as(*rhs.ring_) && lhs.coeffs_ == rhs.coeffs_;
}

std::string WittNum::to_integer_string() const {
    if (ring_->k() == 1) return std::to_string(coeffs_[0]);
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i];
    os << '}';
    return os.str();
}

std::string WittNum::to_digit_string() const {
    std::ostringstream os;
    os << '[';
    const auto digits = teichmuller_digits(*this);
    for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? ", " : "") << digits[i];
    os << "] base " << ring_->p();
    return os.str();
}

std::string WittNum::to_string() const {
    return ring_->k() == 1 ? to_integer_string() : to_digit_string();
}

std::ostream& operator<<(std::ostream& os, const WittNum& x) { return os << x.to_string(); }

WittNum WittNum::parse(RingRef ring, std::string_view text) {
    detail::TextCursor cur(text);
    if (cur.accept('[')) {
        std::vector<FieldElem> digits;
        if (!cur.accept(']')) {
            do {
                const auto piece = cur.take_until(",]");
                digits.push_back(FieldElem::parse(ring->field(), piece));
            } while (cur.accept(','));
            cur.expect(']');
        }
        cur.expect_word("base");
        const Int base = cur.read_uint();
        cur.expect_end();
        if (base != ring->p()) cur.fail("digit base must be " + std::to_string(ring->p()));
        if (digits.size() > ring->N()) cur.fail("more digits than the precision");
        return from_teichmuller_digits(ring, digits);
    }
    if (cur.accept('{')) {
        std::vector<Int> coeffs;
        const Int m = ring->modulus();
        if (!cur.accept('}')) {
            do {
                const bool negative = cur.accept('-');
                const Int c = cur.read_uint() % m;
                coeffs.push_back(negative ? mod::neg(c, m) : c);
            } while (cur.accept(','));
            cur.expect('}');
        }
        cur.expect_end();
        if (coeffs.size() > ring->k()) cur.fail("more coordinates than the degree k");
        return WittNum(std::move(ring), std::move(coeffs));
    }
    const bool negative = cur.accept('-');
    const Int c = cur.read_uint() % ring->modulus();
    cur.expect_end();
    return WittNum(ring, {negative ? mod::neg(c, ring->modulus()) : c});
}

// ---------------------------------------------------------------- free functions

Valuation val(const WittNum& x) {
    int best = -1;
    const Int p = x.ring()->p();
    for (Int c : x.coeffs()) {
        if (c == 0) continue;
        const int v = mod::valuation(c, p);
        if (best < 0 || v < best) best = v;
    }
    return best < 0 ? Valuation::infinity() : Valuation(best);
}

FieldElem residue(const WittNum& x) {
    std::vector<Int> r(x.coeffs().begin(), x.coeffs().end());
    for (auto& c : r) c %= x.ring()->p();
    return FieldElem(x.ring()->field(), std::move(r));
}

WittNum inverse(const WittNum& x) {
    if (val(x) != 0) {
        throw Error(ErrorCode::NonUnitInverse, "inverse of non-unit (val " + val(x).to_string() + ")");
    }
    const Vec a(x.coeffs().begin(), x.coeffs().end());
    return WittNum(x.ring(), raw(*x.ring()).unit_inverse(a, x.ring()->field()));
}

WittNum pow(const WittNum& x, Int exponent) {
    WittNum result = WittNum::one(x.ring());
    WittNum base = x;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

WittNum mul_p_power(const WittNum& x, unsigned e) {
    const auto& ring = x.ring();
    if (e >= ring->N()) return WittNum::zero(ring);
    const Int pe = *mod::checked_power(ring->p(), e);
    std::vector<Int> out(x.coeffs().begin(), x.coeffs().end());
    for (auto& c : out) c = mod::mul(c, pe, ring->modulus());
    return WittNum(ring, std::move(out));
}

WittNum div_p_power(const WittNum& x, unsigned e) {
    const auto& ring = x.ring();
    if (val(x) < static_cast<int>(e)) {
        throw Error(ErrorCode::PrecisionLoss, "division by p^" + std::to_string(e) + " of element with val " +
                                                  val(x).to_string());
    }
    if (e >= ring->N()) return WittNum::zero(ring);
    const Int pe = *mod::checked_power(ring->p(), e);
    std::vector<Int> out(x.coeffs().begin(), x.coeffs().end());
    for (auto& c : out) c /= pe;
    return WittNum(ring, std::move(out));
}

WittNum quot(const WittNum& x, const WittNum& y) {
    if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::MixedField, "quot across rings");
    const Valuation vy = val(y);
    if (!vy.is_finite()) return WittNum::zero(x.ring());
    const Valuation vx = val(x);
    if (vx < vy) {
        throw Error(ErrorCode::PrecisionLoss,
                    "quotient leaves the valuation ring (val " + vx.to_string() + " < " + vy.to_string() + ")");
    }
    const auto e = static_cast<unsigned>(vy.value());
    return div_p_power(x, e) * inverse(div_p_power(y, e));
}

WittNum frobenius(const WittNum& x, std::int64_t iterate) {
    const auto& ring = x.ring();
    return WittNum(ring, raw(*ring).apply_matrix(ring->sigma_matrix(iterate), x.coeffs()));
}

WittNum teichmuller(const RingRef& ring, const FieldElem& r) {
    WittNum w = WittNum::lift(ring, r);
    // Each pass of x -> x^q gains one p-adic digit.
    for (unsigned pass = 0; pass <= ring->N(); ++pass) {
        WittNum next = w;
        for (unsigned i = 0; i < ring->k(); ++i) next = pow(next, ring->p());
        if (next == w) break;
        w = std::move(next);
    }
    return w;
}

std::vector<FieldElem> teichmuller_digits(const WittNum& x) {
    const auto& ring = x.ring();
    std::vector<FieldElem> digits;
    digits.reserve(ring->N());
    WittNum rest = x;
    for (unsigned i = 0; i < ring->N(); ++i) {
        const FieldElem d = residue(rest);
        digits.push_back(d);
        rest -= teichmuller(ring, d);
        rest = div_p_power(rest, 1);
    }
    return digits;
}

WittNum from_teichmuller_digits(const RingRef& ring, std::span<const FieldElem> digits) {
    WittNum out = WittNum::zero(ring);
    for (std::size_t i = digits.size(); i-- > 0;) {
        out = mul_p_power(out, 1) + teichmuller(ring, digits[i]);
    }
    return out;
}

WittNum change_precision(const WittNum& x, const RingRef& target) {
    if (!x.ring()->field()->same_as(*target->field())) {
        throw Error(ErrorCode::MixedField, "precision change across residue fields");
    }
    return WittNum(target, std::vector<Int>(x.coeffs().begin(), x.coeffs().end()));
}

WittNum random_witt(const RingRef& ring, std::mt19937_64& rng, unsigned min_val) {
    std::uniform_int_distribution<Int> dist(0, ring->modulus() - 1);
    std::vector<Int> coeffs(ring->k());
    for (auto& c : coeffs) c = dist(rng);
    return mul_p_power(WittNum(ring, std::move(coeffs)), min_val);
}

WittNum random_unit(const RingRef& ring, std::mt19937_64& rng) {
    while (true) {
        WittNum x = random_witt(ring, rng);
        if (val(x) == 0) return x;
    }
}

// ---------------------------------------------------------------- embeddings

WittNum RingEmbedding::apply(const WittNum& x) const {
    if (!x.ring()->same_as(*source)) throw Error(ErrorCode::MixedField, "embedding source mismatch");
    WittNum out = WittNum::zero(target);
    WittNum power = WittNum::one(target);
    for (Int c : x.coeffs()) {
        out += power * WittNum(target, {c});
        power *= generator_image;
    }
    return out;
}

RingEmbedding extend_ring(const RingRef& ring, unsigned factor) {
    FieldEmbedding femb = extend_field(ring->field(), factor);
    RingRef target = RingDesc::make(femb.target, ring->N());
    // Newton lift of the residue image to a root of the source Phi.
    WittNum s = WittNum::lift(target, femb.generator_image);
    const auto& phi = ring->phi();
    auto eval = [&](const std::vector<Int>& poly, const WittNum& at) {
        WittNum acc = WittNum::zero(target);
        for (std::size_t i = poly.size(); i-- > 0;) acc = acc * at + WittNum(target, {poly[i]});
        return acc;
    };
    std::vector<Int> dphi(phi.size() - 1);
    for (std::size_t i = 1; i < phi.size(); ++i) dphi[i - 1] = mod::mul(phi[i], i, target->modulus());
    for (int iter = 0; iter < 64; ++iter) {
        const WittNum value = eval(phi, s);
        if (value.is_zero()) break;
        s -= value * inverse(eval(dphi, s));
    }
    return RingEmbedding{ring, std::move(target), std::move(s), std::move(femb)};
}

}  // namespace dvf
