#include "dvf/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

#include "dvf/error.hpp"
#include "text_cursor.hpp"

namespace dvf {
namespace {

// ---- polynomials over F_p, coefficient vectors low-to-high ----

using Poly = std::vector<Int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_rem(Poly a, const Poly& b, Int p) {
    trim(a);
    const int db = degree(b);
    const Int lead_inv = *mod::inverse(b.back(), p);
    while (degree(a) >= db) {
        const int shift = degree(a) - db;
        const Int factor = mod::mul(a.back(), lead_inv, p);
        for (int i = 0; i <= db; ++i) {
            auto& slot = a[static_cast<std::size_t>(i + shift)];
            slot = mod::sub(slot, mod::mul(factor, b[static_cast<std::size_t>(i)], p), p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, Int p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = mod::add(out[i + j], mod::mul(a[i], b[j], p), p);
        }
    }
    trim(out);
    return out;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, Int p) {
    return poly_rem(poly_mul(a, b, p), m, p);
}

Poly poly_powmod(Poly base, Int exp, const Poly& m, Int p) {
    Poly result{1};
    result = poly_rem(result, m, p);
    base = poly_rem(std::move(base), m, p);
    while (exp != 0) {
        if (exp & 1U) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        exp >>= 1U;
    }
    return result;
}

Poly poly_sub(Poly a, const Poly& b, Int p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod::sub(a[i], b[i], p);
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, Int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x^{p^i} mod f for i = 0..k, by repeated p-th powering.
std::vector<Poly> frobenius_orbit_of_x(const Poly& f, Int p, unsigned k) {
    std::vector<Poly> orbit;
    orbit.reserve(k + 1);
    orbit.push_back(poly_rem(Poly{0, 1}, f, p));
    for (unsigned i = 1; i <= k; ++i) orbit.push_back(poly_powmod(orbit.back(), p, f, p));
    return orbit;
}

bool is_irreducible(const Poly& f, Int p) {
    const unsigned k = static_cast<unsigned>(degree(f));
    if (k == 1) return true;
    const auto orbit = frobenius_orbit_of_x(f, p, k);
    const Poly x = poly_rem(Poly{0, 1}, f, p);
    if (poly_sub(orbit[k], x, p) != Poly{}) return false;
    for (unsigned q : prime_factors(k)) {
        const Poly g = poly_gcd(f, poly_sub(orbit[k / q], x, p), p);
        if (degree(g) != 0) return false;
    }
    return true;
}

void require_same_field(const FieldElem& a, const FieldElem& b) {
    if (!a.field()->same_as(*b.field())) {
        throw Error(ErrorCode::MixedField,
                    "field elements over " + a.field()->to_string() + " and " +
                        b.field()->to_string());
    }
}

// ---- polynomials over F_{p^k} for root finding ----

using FPoly = std::vector<FieldElem>;

void ftrim(FPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int fdegree(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly frem(FPoly a, const FPoly& b) {
    ftrim(a);
    const int db = fdegree(b);
    const FieldElem lead_inv = inverse(b.back());
    while (fdegree(a) >= db) {
        const int shift = fdegree(a) - db;
        const FieldElem factor = a.back() * lead_inv;
        for (int i = 0; i <= db; ++i) {
            a[static_cast<std::size_t>(i + shift)] -= factor * b[static_cast<std::size_t>(i)];
        }
        ftrim(a);
    }
    return a;
}

FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& m) {
    if (a.empty() || b.empty()) return {};
    FPoly out(a.size() + b.size() - 1, FieldElem::zero(m.front().field()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return frem(std::move(out), m);
}

FPoly fpowmod(FPoly base, Int exp, const FPoly& m) {
    const FieldRef& field = m.front().field();
    FPoly result = frem(FPoly{FieldElem::one(field)}, m);
    base = frem(std::move(base), m);
    while (exp != 0) {
        if (exp & 1U) result = fmulmod(result, base, m);
        base = fmulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

FPoly fsub(FPoly a, const FPoly& b) {
    const FieldRef& field = b.empty() ? a.front().field() : b.front().field();
    if (a.size() < b.size()) a.resize(b.size(), FieldElem::zero(field));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ftrim(a);
    return a;
}

FPoly fmonic(FPoly f) {
    const FieldElem inv = inverse(f.back());
    for (auto& c : f) c *= inv;
    return f;
}

FPoly fgcd(FPoly a, FPoly b) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        FPoly r = frem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : fmonic(std::move(a));
}

FPoly fdiv_exact(FPoly a, const FPoly& b) {
    ftrim(a);
    const int db = fdegree(b);
    const FieldElem lead_inv = inverse(b.back());
    FPoly q(static_cast<std::size_t>(std::max(fdegree(a) - db + 1, 1)),
            FieldElem::zero(b.front().field()));
    while (fdegree(a) >= db) {
        const int shift = fdegree(a) - db;
        const FieldElem factor = a.back() * lead_inv;
        q[static_cast<std::size_t>(shift)] = factor;
        for (int i = 0; i <= db; ++i) {
            a[static_cast<std::size_t>(i + shift)] -= factor * b[static_cast<std::size_t>(i)];
        }
        ftrim(a);
    }
    ftrim(q);
    return q;
}

}  // namespace

// ---------------------------------------------------------------- FieldDesc

FieldDesc::FieldDesc(Int p, std::vector<Int> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (p < 2 || p >= (Int{1} << 31) || !mod::is_prime(p)) {
        throw Error(ErrorCode::NotPrime, "characteristic " + std::to_string(p) +
                                             " is not a prime below 2^31");
    }
    if (modulus_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "modulus must have degree at least 1");
    }
    for (Int c : modulus_) {
        if (c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficient not reduced mod p");
    }
    if (modulus_.back() != 1) throw Error(ErrorCode::InvalidArgument, "modulus must be monic");
    k_ = static_cast<unsigned>(modulus_.size() - 1);
    if (!is_irreducible(modulus_, p)) {
        throw Error(ErrorCode::NotIrreducible, "modulus of " + to_string() + " is reducible");
    }

    order_ = 1;
    for (unsigned i = 0; i < k_; ++i) {
        if (order_ > std::numeric_limits<Int>::max() / p) {
            order_ = std::numeric_limits<Int>::max();
            break;
        }
        order_ *= p;
    }

    const Poly ap = poly_powmod(Poly{0, 1}, p, modulus_, p);
    frob_.assign(k_, std::vector<Int>(k_, 0));
    Poly power{1};
    for (unsigned j = 0; j < k_; ++j) {
        for (std::size_t i = 0; i < power.size(); ++i) frob_[j][i] = power[i];
        power = poly_mulmod(power, ap, modulus_, p);
    }
}

FieldRef FieldDesc::make(Int p, std::vector<Int> modulus) {
    return std::make_shared<const FieldDesc>(p, std::move(modulus));
}

FieldRef FieldDesc::make_default(Int p, unsigned k) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    if (p < 2 || p >= (Int{1} << 31) || !mod::is_prime(p)) {
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 2^31");
    }
    Poly candidate(k + 1, 0);
    candidate[k] = 1;
    // Odometer over c_0..c_{k-1} with c_0 the least significant digit.
    while (true) {
        if ((k == 1 || candidate[0] != 0) && is_irreducible(candidate, p)) {
            return make(p, candidate);
        }
        unsigned i = 0;
        while (i < k && ++candidate[i] == p) candidate[i++] = 0;
        if (i == k) break;
    }
    throw Error(ErrorCode::NotIrreducible, "no irreducible polynomial found");
}

FieldRef FieldDesc::parse(std::string_view text) {
    detail::TextCursor cur(text);
    cur.expect_word("GF");
    cur.expect('(');
    const Int p = cur.read_uint();
    unsigned k = 1;
    if (cur.accept('^')) k = static_cast<unsigned>(cur.read_uint());
    if (cur.accept(')')) {
        cur.expect_end();
        return make_default(p, k);
    }
    cur.expect(';');
    std::vector<Int> modulus;
    do {
        modulus.push_back(cur.read_uint());
    } while (cur.accept(','));
    cur.expect(')');
    cur.expect_end();
    if (modulus.size() != k + 1) {
        throw Error(ErrorCode::LiteralError, "modulus of GF(" + std::to_string(p) + "^" +
                                                 std::to_string(k) + ") needs " +
                                                 std::to_string(k + 1) + " coefficients");
    }
    return make(p, std::move(modulus));
}

std::string FieldDesc::to_string() const {
    std::ostringstream os;
    os << "GF(" << p_ << '^' << k_ << ';';
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : " ") << modulus_[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(FieldRef field, std::vector<Int> coeffs) : field_(std::move(field)) {
    const Int p = field_->p();
    const unsigned k = field_->k();
    Poly reduced(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) reduced[i] = coeffs[i] % p;
    if (reduced.size() > k) reduced = poly_rem(std::move(reduced), field_->modulus(), p);
    reduced.resize(k, 0);
    coeffs_ = std::move(reduced);
}

FieldElem FieldElem::zero(FieldRef field) { return FieldElem(std::move(field), {}); }

FieldElem FieldElem::one(FieldRef field) { return FieldElem(std::move(field), {1}); }

FieldElem FieldElem::generator(FieldRef field) { return FieldElem(std::move(field), {0, 1}); }

FieldElem FieldElem::from_int(FieldRef field, std::int64_t value) {
    const auto p = static_cast<std::int64_t>(field->p());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return FieldElem(std::move(field), {static_cast<Int>(r)});
}

FieldElem FieldElem::from_index(FieldRef field, Int index) {
    std::vector<Int> coeffs(field->k(), 0);
    for (unsigned j = 0; j < field->k(); ++j) {
        coeffs[j] = index % field->p();
        index /= field->p();
    }
    return FieldElem(std::move(field), std::move(coeffs));
}

FieldElem FieldElem::parse(FieldRef field, std::string_view text) {
    detail::TextCursor cur(text);
    FieldElem result = zero(field);
    bool first = true;
    while (true) {
        bool negative = false;
        if (cur.accept('-')) {
            negative = true;
        } else if (!first && !cur.accept('+')) {
            break;
        }
        first = false;
        Int coeff = 1;
        Int power = 0;
        bool has_coeff = false;
        if (cur.peek_digit()) {
            coeff = cur.read_uint() % field->p();
            has_coeff = true;
            if (!cur.accept('*')) {
                FieldElem term = from_int(field, static_cast<std::int64_t>(coeff));
                result += negative ? -term : term;
                continue;
            }
        }
        if (!cur.accept('a')) {
            cur.fail(has_coeff ? "expected 'a' after '*'" : "expected integer or 'a'");
        }
        power = cur.accept('^') ? cur.read_uint() : 1;
        FieldElem term = pow(generator(field), power) * from_int(field, static_cast<std::int64_t>(coeff));
        result += negative ? -term : term;
    }
    cur.expect_end();
    return result;
}

bool FieldElem::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Int c) { return c == 0; });
}

bool FieldElem::is_one() const noexcept {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](Int c) { return c == 0; });
}

Int FieldElem::index() const noexcept {
    Int out = 0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) out = out * field_->p() + coeffs_[j];
    return out;
}

FieldElem FieldElem::operator-() const {
    FieldElem out = *this;
    for (auto& c : out.coeffs_) c = mod::neg(c, field_->p());
    return out;
}

FieldElem& FieldElem::operator+=(const FieldElem& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] = mod::add(coeffs_[i], rhs.coeffs_[i], field_->p());
    }
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] = mod::sub(coeffs_[i], rhs.coeffs_[i], field_->p());
    }
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& rhs) {
    require_same_field(*this, rhs);
    Poly product = poly_mulmod(coeffs_, rhs.coeffs_, field_->modulus(), field_->p());
    product.resize(field_->k(), 0);
    coeffs_ = std::move(product);
    return *this;
}

bool operator==(const FieldElem& lhs, const FieldElem& rhs) {
    return lhs.field_->same_as(*rhs.field_) && lhs.coeffs_ == rhs.coeffs_;
}

bool operator<(const FieldElem& lhs, const FieldElem& rhs) {
    require_same_field(lhs, rhs);
    return std::lexicographical_compare(lhs.coeffs_.rbegin(), lhs.coeffs_.rend(),
                                        rhs.coeffs_.rbegin(), rhs.coeffs_.rend());
}

std::string FieldElem::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
        const Int c = coeffs_[j];
        if (c == 0) continue;
        if (any) os << '+';
        any = true;
        if (j == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << '*';
        os << 'a';
        if (j > 1) os << '^' << j;
    }
    if (!any) os << '0';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

FieldElem inverse(const FieldElem& x) {
    if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + x.field()->to_string());
    const Int p = x.field()->p();
    // Extended Euclid on (x, modulus), tracking only the cofactor of x.
    Poly r0 = x.field()->modulus();
    Poly r1(x.coeffs().begin(), x.coeffs().end());
    trim(r1);
    Poly t0{}, t1{1};
    while (!r1.empty()) {
        // q = r0 div r1
        Poly q;
        Poly rem = r0;
        const Int lead_inv = *mod::inverse(r1.back(), p);
        const int d1 = degree(r1);
        if (degree(rem) >= d1) q.assign(static_cast<std::size_t>(degree(rem) - d1 + 1), 0);
        while (degree(rem) >= d1) {
            const int shift = degree(rem) - d1;
            const Int factor = mod::mul(rem.back(), lead_inv, p);
            q[static_cast<std::size_t>(shift)] = factor;
            for (int i = 0; i <= d1; ++i) {
                auto& slot = rem[static_cast<std::size_t>(i + shift)];
                slot = mod::sub(slot, mod::mul(factor, r1[static_cast<std::size_t>(i)], p), p);
            }
            trim(rem);
        }
        Poly t2 = poly_sub(t0, poly_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant since the modulus is irreducible.
    const Int scale = *mod::inverse(r0[0], p);
    for (auto& c : t0) c = mod::mul(c, scale, p);
    return FieldElem(x.field(), std::move(t0));
}

FieldElem pow(const FieldElem& x, Int exponent) {
    FieldElem result = FieldElem::one(x.field());
    FieldElem base = x;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

FieldElem frobenius(const FieldElem& x, std::int64_t iterate) {
    const auto k = static_cast<std::int64_t>(x.field()->k());
    std::int64_t times = iterate % k;
    if (times < 0) times += k;
    const Int p = x.field()->p();
    const auto& matrix = x.field()->frobenius_matrix();
    std::vector<Int> v(x.coeffs().begin(), x.coeffs().end());
    for (std::int64_t t = 0; t < times; ++t) {
        std::vector<Int> next(v.size(), 0);
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i) {
                next[i] = mod::add(next[i], mod::mul(v[j], matrix[j][i], p), p);
            }
        }
        v = std::move(next);
    }
    return FieldElem(x.field(), std::move(v));
}

FieldElem random_field_elem(const FieldRef& field, std::mt19937_64& rng) {
    std::uniform_int_distribution<Int> digit(0, field->p() - 1);
    std::vector<Int> coeffs(field->k());
    for (auto& c : coeffs) c = digit(rng);
    return FieldElem(field, std::move(coeffs));
}

std::vector<FieldElem> all_elements(const FieldRef& field) {
    if (field->order() > (Int{1} << 24)) {
        throw Error(ErrorCode::InvalidArgument, "field too large to enumerate: " + field->to_string());
    }
    std::vector<FieldElem> out;
    out.reserve(field->order());
    for (Int i = 0; i < field->order(); ++i) out.push_back(FieldElem::from_index(field, i));
    return out;
}

// ---------------------------------------------------------------- linearized equations

LinearizedSolution solve_linearized(std::span<const FieldElem> coeffs, const FieldElem& rhs) {
    const FieldRef& field = rhs.field();
    for (const auto& c : coeffs) require_same_field(c, rhs);
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const FieldElem& c) { return c.is_zero(); })) {
        throw Error(ErrorCode::AllCoefficientsZero, "linearized equation with all coefficients zero");
    }
    const Int p = field->p();
    const unsigned k = field->k();

    // Augmented matrix: column j is L(a^j), last column is rhs.
    std::vector<std::vector<Int>> m(k, std::vector<Int>(k + 1, 0));
    for (unsigned j = 0; j < k; ++j) {
        std::vector<Int> basis(k, 0);
        basis[j] = 1;
        const FieldElem e(field, std::move(basis));
        FieldElem image = FieldElem::zero(field);
        FieldElem power = e;
        for (const auto& c : coeffs) {
            if (!c.is_zero()) image += c * power;
            power = frobenius(power, 1);
        }
        for (unsigned i = 0; i < k; ++i) m[i][j] = image.coeffs()[i];
    }
    for (unsigned i = 0; i < k; ++i) m[i][k] = rhs.coeffs()[i];

    std::vector<int> pivot_of_col(k, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < k && row < k; ++col) {
        unsigned sel = row;
        while (sel < k && m[sel][col] == 0) ++sel;
        if (sel == k) continue;
        std::swap(m[sel], m[row]);
        const Int inv = *mod::inverse(m[row][col], p);
        for (auto& v : m[row]) v = mod::mul(v, inv, p);
        for (unsigned r = 0; r < k; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Int factor = m[r][col];
            for (unsigned c = 0; c <= k; ++c) {
                m[r][c] = mod::sub(m[r][c], mod::mul(factor, m[row][c], p), p);
            }
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }

    LinearizedSolution out;
    out.kernel_dimension = k - row;
    for (unsigned r = row; r < k; ++r) {
        if (m[r][k] != 0) {
            out.extension_required = true;
            return out;
        }
    }

    std::vector<Int> particular(k, 0);
    std::vector<std::vector<Int>> kernel;
    for (unsigned col = 0; col < k; ++col) {
        if (pivot_of_col[col] >= 0) {
            particular[col] = m[static_cast<unsigned>(pivot_of_col[col])][k];
            continue;
        }
        std::vector<Int> v(k, 0);
        v[col] = 1;
        for (unsigned c2 = 0; c2 < k; ++c2) {
            if (pivot_of_col[c2] >= 0) v[c2] = mod::neg(m[static_cast<unsigned>(pivot_of_col[c2])][col], p);
        }
        kernel.push_back(std::move(v));
    }

    Int count = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) count *= p;
    out.roots.reserve(count);
    std::vector<Int> digits(kernel.size(), 0);
    for (Int n = 0; n < count; ++n) {
        std::vector<Int> x = particular;
        for (std::size_t b = 0; b < kernel.size(); ++b) {
            if (digits[b] == 0) continue;
            for (unsigned i = 0; i < k; ++i) x[i] = mod::add(x[i], mod::mul(digits[b], kernel[b][i], p), p);
        }
        out.roots.emplace_back(field, std::move(x));
        for (std::size_t b = 0; b < digits.size() && ++digits[b] == p; ++b) digits[b] = 0;
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// ---------------------------------------------------------------- extensions

FieldElem FieldEmbedding::apply(const FieldElem& x) const {
    if (!x.field()->same_as(*source)) {
        throw Error(ErrorCode::MixedField, "embedding source is " + source->to_string());
    }
    FieldElem out = FieldElem::zero(target);
    FieldElem power = FieldElem::one(target);
    for (Int c : x.coeffs()) {
        if (c != 0) out += power * FieldElem::from_int(target, static_cast<std::int64_t>(c));
        power *= generator_image;
    }
    return out;
}

FieldElem find_root(const FieldRef& target, std::span<const Int> poly_over_fp) {
    FPoly f;
    for (Int c : poly_over_fp) f.push_back(FieldElem::from_int(target, static_cast<std::int64_t>(c % target->p())));
    ftrim(f);
    if (fdegree(f) < 1) throw Error(ErrorCode::InvalidArgument, "find_root needs a nonconstant polynomial");
    if (target->order() == std::numeric_limits<Int>::max()) {
        throw Error(ErrorCode::InvalidArgument, "field too large for root finding");
    }
    f = fmonic(std::move(f));
    const Int p = target->p();
    const unsigned big_k = target->k();
    const FieldElem zero = FieldElem::zero(target);
    const FieldElem one = FieldElem::one(target);

    // g = gcd(f, x^Q - x) collects the roots lying in the target field.
    FPoly xq = frem(FPoly{zero, one}, f);
    for (unsigned i = 0; i < big_k; ++i) xq = fpowmod(xq, p, f);
    FPoly g = fgcd(f, fsub(xq, FPoly{zero, one}));
    if (fdegree(g) < 1) {
        throw Error(ErrorCode::InvalidArgument, "polynomial has no root in " + target->to_string());
    }

    std::mt19937_64 rng(0x5eedULL ^ (p << 8U) ^ big_k);
    int attempts = 0;
    while (fdegree(g) > 1) {
        if (++attempts > 4096) throw Error(ErrorCode::StalledProgress, "root splitting did not converge");
        const FieldElem delta = random_field_elem(target, rng);
        FPoly splitter;
        if (p == 2) {
            FPoly y = frem(FPoly{zero, delta}, g);
            FPoly acc = y;
            for (unsigned i = 1; i < big_k; ++i) {
                y = fmulmod(y, y, g);
                if (acc.size() < y.size()) acc.resize(y.size(), zero);
                for (std::size_t t = 0; t < y.size(); ++t) acc[t] += y[t];
                ftrim(acc);
            }
            splitter = acc;
        } else {
            splitter = fsub(fpowmod(FPoly{delta, one}, (target->order() - 1) / 2, g), FPoly{one});
        }
        FPoly s = fgcd(g, splitter);
        if (s.empty() || fdegree(s) < 1 || fdegree(s) == fdegree(g)) continue;
        FPoly other = fmonic(fdiv_exact(g, s));
        g = fdegree(s) <= fdegree(other) ? s : other;
    }
    return -(g[0] * inverse(g[1]));
}

FieldEmbedding extend_field(const FieldRef& field, unsigned factor) {
    if (factor == 0) throw Error(ErrorCode::InvalidArgument, "extension factor must be >= 1");
    FieldRef target = FieldDesc::make_default(field->p(), field->k() * factor);
    FieldElem image = find_root(target, field->modulus());
    return FieldEmbedding{field, target, std::move(image)};
}

}  // namespace dvf
