#include "dvf/series.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dvf/error.hpp"
#include "text_cursor.hpp"

namespace dvf {

// ---------------------------------------------------------------- SeparatedSeries

SeparatedSeries::SeparatedSeries(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound)
    : ring_(std::move(ring)), mx_(mx), ny_(ny), y_bound_(y_bound) {}

SeparatedSeries SeparatedSeries::constant(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound,
                                          const WittNum& c) {
    SeparatedSeries f(std::move(ring), mx, ny, y_bound);
    f.add_term(Exponent(mx + ny, 0), c);
    return f;
}

SeparatedSeries SeparatedSeries::variable(RingRef ring, unsigned mx, unsigned ny, unsigned y_bound,
                                          unsigned var) {
    if (var >= mx + ny) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    SeparatedSeries f(ring, mx, ny, y_bound);
    Exponent e(mx + ny, 0);
    e[var] = 1;
    f.add_term(e, WittNum::one(ring));
    return f;
}

unsigned SeparatedSeries::y_degree(const Exponent& e) const {
    return std::accumulate(e.begin() + mx_, e.end(), 0U);
}

WittNum SeparatedSeries::coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? WittNum::zero(ring_) : it->second;
}

void SeparatedSeries::add_term(const Exponent& e, const WittNum& c) {
    if (e.size() != arity()) throw Error(ErrorCode::ArityMismatch, "exponent has the wrong length");
    if (y_degree(e) >= y_bound_ && ny_ > 0) return;
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void SeparatedSeries::require_compatible(const SeparatedSeries& other) const {
    if (!ring_->same_as(*other.ring_)) throw Error(ErrorCode::MixedField, "series over different rings");
    if (mx_ != other.mx_ || ny_ != other.ny_) {
        throw Error(ErrorCode::ArityMismatch, "series in different variable sets");
    }
}

SeparatedSeries SeparatedSeries::truncate(unsigned y_bound) const {
    SeparatedSeries out(ring_, mx_, ny_, std::min(y_bound, y_bound_));
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

SeparatedSeries& SeparatedSeries::operator+=(const SeparatedSeries& rhs) {
    require_compatible(rhs);
    if (rhs.y_bound_ < y_bound_) *this = truncate(rhs.y_bound_);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

SeparatedSeries& SeparatedSeries::operator-=(const SeparatedSeries& rhs) {
    require_compatible(rhs);
    if (rhs.y_bound_ < y_bound_) *this = truncate(rhs.y_bound_);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

SeparatedSeries SeparatedSeries::operator-() const {
    SeparatedSeries out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

SeparatedSeries operator*(const SeparatedSeries& a, const SeparatedSeries& b) {
    a.require_compatible(b);
    SeparatedSeries out(a.ring_, a.mx_, a.ny_, std::min(a.y_bound_, b.y_bound_));
    Exponent e(a.arity());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (out.ny_ > 0 && out.y_degree(e) >= out.y_bound_) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

SeparatedSeries operator*(const WittNum& c, const SeparatedSeries& f) {
    SeparatedSeries out(f.ring_, f.mx_, f.ny_, f.y_bound_);
    for (const auto& [e, x] : f.terms_) out.add_term(e, c * x);
    return out;
}

bool operator==(const SeparatedSeries& a, const SeparatedSeries& b) {
    return a.ring_->same_as(*b.ring_) && a.mx_ == b.mx_ && a.ny_ == b.ny_ && a.y_bound_ == b.y_bound_ &&
           a.terms_ == b.terms_;
}

std::string SeparatedSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_integer_string();
        for (unsigned i = 0; i < arity(); ++i) {
            if (e[i] == 0) continue;
            os << '*' << (i < mx_ ? 'X' : 'Y') << (i < mx_ ? i : i - mx_);
            if (e[i] > 1) os << '^' << e[i];
        }
    }
    os << " [Y-degree < " << y_bound_ << ']';
    return os.str();
}

SeparatedSeries pow(const SeparatedSeries& f, unsigned e) {
    SeparatedSeries result =
        SeparatedSeries::constant(f.ring(), f.mx(), f.ny(), f.y_bound(), WittNum::one(f.ring()));
    SeparatedSeries base = f;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------- evaluation

WittNum eval(const SeparatedSeries& f, std::span<const WittNum> x, std::span<const WittNum> y) {
    if (x.size() != f.mx() || y.size() != f.ny()) {
        throw Error(ErrorCode::ArityMismatch, "series expects " + std::to_string(f.mx()) + " X and " +
                                                  std::to_string(f.ny()) + " Y arguments");
    }
    const RingRef& ring = f.ring();
    for (const auto& a : x) {
        if (!a.ring()->same_as(*ring)) throw Error(ErrorCode::MixedField, "argument from another ring");
    }
    Valuation min_y = Valuation::infinity();
    for (const auto& b : y) {
        if (!b.ring()->same_as(*ring)) throw Error(ErrorCode::MixedField, "argument from another ring");
        const Valuation v = val(b);
        if (v < 1) return WittNum::zero(ring);
        min_y = std::min(min_y, v);
    }
    if (min_y.is_finite() &&
        static_cast<Int>(f.y_bound()) * static_cast<Int>(min_y.value()) < ring->N()) {
        throw Error(ErrorCode::TruncationUnsound,
                    "Y-degree bound " + std::to_string(f.y_bound()) + " with val(y) = " + min_y.to_string() +
                        " does not determine the value mod p^" + std::to_string(ring->N()));
    }

    std::vector<std::vector<WittNum>> powers(f.arity());
    auto power = [&](unsigned var, unsigned e) -> const WittNum& {
        auto& cache = powers[var];
        const WittNum& base = var < f.mx() ? x[var] : y[var - f.mx()];
        if (cache.empty()) cache.push_back(WittNum::one(ring));
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };
    WittNum sum = WittNum::zero(ring);
    for (const auto& [e, c] : f.terms()) {
        WittNum term = c;
        for (unsigned i = 0; i < f.arity() && !term.is_zero(); ++i) {
            if (e[i] != 0) term *= power(i, e[i]);
        }
        sum += term;
    }
    return sum;
}

SeparatedSeries derivative(const SeparatedSeries& f, unsigned var) {
    if (var >= f.arity()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    const unsigned bound = var < f.mx() ? f.y_bound() : (f.y_bound() == 0 ? 0 : f.y_bound() - 1);
    SeparatedSeries out(f.ring(), f.mx(), f.ny(), bound);
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        Exponent de = e;
        --de[var];
        out.add_term(de, WittNum::from_int(f.ring(), e[var]) * c);
    }
    return out;
}

SeparatedSeries frobenius(const SeparatedSeries& f, std::int64_t iterate) {
    SeparatedSeries out(f.ring(), f.mx(), f.ny(), f.y_bound());
    for (const auto& [e, c] : f.terms()) out.add_term(e, frobenius(c, iterate));
    return out;
}

SeparatedSeries embed(const SeparatedSeries& f, const RingEmbedding& emb) {
    SeparatedSeries out(emb.target, f.mx(), f.ny(), f.y_bound());
    for (const auto& [e, c] : f.terms()) out.add_term(e, emb.apply(c));
    return out;
}

// ---------------------------------------------------------------- regularity

namespace {

bool is_y_var(const SeparatedSeries& f, unsigned var) { return var >= f.mx(); }

bool survives(const WittNum& c) { return val(c) == 0; }

bool residue_is_one(const WittNum& c) { return residue(c).is_one(); }

bool only_var(const Exponent& e, unsigned var) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != var && e[i] != 0) return false;
    }
    return true;
}

bool y_free(const SeparatedSeries& f, const Exponent& e) { return f.ny() == 0 || f.y_degree(e) == 0; }

SeparatedSeries monomial(const SeparatedSeries& like, const Exponent& e, const WittNum& c) {
    SeparatedSeries out(like.ring(), like.mx(), like.ny(), like.y_bound());
    out.add_term(e, c);
    return out;
}

}  // namespace

std::optional<unsigned> regular_degree(const SeparatedSeries& f, unsigned var) {
    if (var >= f.arity()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    if (!is_y_var(f, var)) {
        int d = -1;
        for (const auto& [e, c] : f.terms()) {
            if (y_free(f, e) && survives(c)) d = std::max(d, static_cast<int>(e[var]));
        }
        if (d < 0) return std::nullopt;
        for (const auto& [e, c] : f.terms()) {
            if (!y_free(f, e) || !survives(c) || e[var] != static_cast<unsigned>(d)) continue;
            if (!only_var(e, var) || !residue_is_one(c)) return std::nullopt;
        }
        return static_cast<unsigned>(d);
    }
    auto other_y = [&](const Exponent& e) {
        for (unsigned j = f.mx(); j < f.arity(); ++j) {
            if (j != var && e[j] != 0) return true;
        }
        return false;
    };
    int d = -1;
    for (const auto& [e, c] : f.terms()) {
        if (other_y(e) || !survives(c)) continue;
        if (d < 0 || static_cast<int>(e[var]) < d) d = static_cast<int>(e[var]);
    }
    if (d < 0) return std::nullopt;
    for (const auto& [e, c] : f.terms()) {
        if (other_y(e) || !survives(c) || e[var] != static_cast<unsigned>(d)) continue;
        if (!only_var(e, var) || !residue_is_one(c)) return std::nullopt;
    }
    return static_cast<unsigned>(d);
}

std::optional<PreregularWitness> preregular(const SeparatedSeries& f, std::span<const unsigned> inner_x,
                                            std::span<const unsigned> inner_y) {
    std::vector<bool> is_inner(f.arity(), false);
    for (unsigned v : inner_x) {
        if (v >= f.mx()) throw Error(ErrorCode::InvalidArgument, "inner X index is not an X variable");
        is_inner[v] = true;
    }
    for (unsigned v : inner_y) {
        if (v < f.mx() || v >= f.arity()) throw Error(ErrorCode::InvalidArgument, "inner Y index is not a Y variable");
        is_inner[v] = true;
    }

    struct Survivor {
        Exponent mu, nu;
        bool outer_free;
        bool residue_one;
    };
    std::vector<Survivor> survivors;
    for (const auto& [e, c] : f.terms()) {
        if (!survives(c)) continue;
        bool in_outer_y = false;
        for (unsigned j = f.mx(); j < f.arity(); ++j) in_outer_y = in_outer_y || (!is_inner[j] && e[j] != 0);
        if (in_outer_y) continue;
        Survivor s;
        for (unsigned v : inner_x) s.mu.push_back(e[v]);
        for (unsigned v : inner_y) s.nu.push_back(e[v]);
        s.outer_free = true;
        for (unsigned i = 0; i < f.arity(); ++i) s.outer_free = s.outer_free && (is_inner[i] || e[i] == 0);
        s.residue_one = residue_is_one(c);
        survivors.push_back(std::move(s));
    }
    if (survivors.empty()) return std::nullopt;

    PreregularWitness w;
    w.nu0 = survivors.front().nu;
    for (const auto& s : survivors) w.nu0 = std::min(w.nu0, s.nu);
    bool have_mu = false;
    unsigned max_total = 0;
    for (const auto& s : survivors) {
        const unsigned total = std::accumulate(s.mu.begin(), s.mu.end(), 0U) + std::accumulate(s.nu.begin(), s.nu.end(), 0U);
        max_total = std::max(max_total, total);
        if (s.nu != w.nu0) continue;
        if (!have_mu || w.mu0 < s.mu) w.mu0 = s.mu;
        have_mu = true;
    }
    // Clause (i): the (mu0, nu0) coefficient is exactly 1 mod J + (Y_2).
    int ones = 0;
    for (const auto& s : survivors) {
        if (s.mu != w.mu0 || s.nu != w.nu0) continue;
        if (!s.outer_free || !s.residue_one) return std::nullopt;
        ++ones;
    }
    if (ones != 1) return std::nullopt;
    w.d = max_total + 1;
    if (!inner_y.empty() && w.d > f.y_bound()) return std::nullopt;
    return w;
}

Int ord_index(std::span<const unsigned> mu, unsigned d) {
    Int total = 0;
    for (unsigned m : mu) total = total * d + m;
    return total;
}

SeparatedSeries weierstrass_change(const SeparatedSeries& f, unsigned d, std::span<const unsigned> vars,
                                   bool inverse) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "Weierstrass change needs d >= 1");
    if (vars.size() <= 1) return f;
    const bool y_block_vars = is_y_var(f, vars.front());
    for (unsigned v : vars) {
        if (v >= f.arity() || is_y_var(f, v) != y_block_vars) {
            throw Error(ErrorCode::InvalidArgument, "Weierstrass change block must be all X or all Y");
        }
    }
    const std::size_t len = vars.size();
    const unsigned last = vars.back();
    const RingRef& ring = f.ring();
    // Substitutes for vars[0..len-2] and their cached powers.
    std::vector<std::vector<SeparatedSeries>> sub_powers(len - 1);
    for (std::size_t i = 0; i + 1 < len; ++i) {
        unsigned e = 1;
        for (std::size_t j = i + 1; j < len; ++j) e *= d;
        auto v = SeparatedSeries::variable(ring, f.mx(), f.ny(), f.y_bound(), vars[i]);
        auto shift = pow(SeparatedSeries::variable(ring, f.mx(), f.ny(), f.y_bound(), last), e);
        sub_powers[i].push_back(SeparatedSeries::constant(ring, f.mx(), f.ny(), f.y_bound(), WittNum::one(ring)));
        sub_powers[i].push_back(inverse ? v - shift : v + shift);
    }
    SeparatedSeries out(ring, f.mx(), f.ny(), f.y_bound());
    for (const auto& [e, c] : f.terms()) {
        Exponent rest = e;
        SeparatedSeries term = monomial(f, Exponent(f.arity(), 0), c);
        for (std::size_t i = 0; i + 1 < len; ++i) {
            const unsigned k = e[vars[i]];
            rest[vars[i]] = 0;
            auto& cache = sub_powers[i];
            while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
            if (k > 0) term = term * cache[k];
        }
        out += monomial(f, rest, WittNum::one(ring)) * term;
    }
    return out;
}

std::vector<unsigned> x_block(const SeparatedSeries& f) {
    std::vector<unsigned> out(f.mx());
    std::iota(out.begin(), out.end(), 0U);
    return out;
}

std::vector<unsigned> y_block(const SeparatedSeries& f) {
    std::vector<unsigned> out(f.ny());
    std::iota(out.begin(), out.end(), f.mx());
    return out;
}

// ---------------------------------------------------------------- units

bool is_unit(const SeparatedSeries& f) {
    const Exponent zero(f.arity(), 0);
    if (val(f.coefficient(zero)) != 0) return false;
    for (const auto& [e, c] : f.terms()) {
        if (e != zero && y_free(f, e) && survives(c)) return false;
    }
    return true;
}

SeparatedSeries unit_inverse(const SeparatedSeries& f) {
    if (!is_unit(f)) throw Error(ErrorCode::NotUnit, "series is not a unit mod J + (Y)");
    const RingRef& ring = f.ring();
    const WittNum c0_inv = inverse(f.coefficient(Exponent(f.arity(), 0)));
    const auto one = SeparatedSeries::constant(ring, f.mx(), f.ny(), f.y_bound(), WittNum::one(ring));
    // f = c0 (1 - z) with z in J + (Y), so 1/f = c0^{-1} sum z^j.
    const SeparatedSeries z = one - c0_inv * f;
    SeparatedSeries sum(ring, f.mx(), f.ny(), f.y_bound());
    SeparatedSeries power = one;
    const unsigned cap = ring->N() + f.y_bound() + 1;
    for (unsigned j = 0; j <= cap && !power.is_zero(); ++j) {
        sum += power;
        power = power * z;
    }
    if (!power.is_zero()) throw Error(ErrorCode::StalledProgress, "unit inverse did not converge");
    return c0_inv * sum;
}

// ---------------------------------------------------------------- division

namespace {

// Long division of g by P, monic of degree d in X_var with every other term of
// lower X_var-degree and no Y.
std::pair<SeparatedSeries, SeparatedSeries> long_divide(const SeparatedSeries& g, const SeparatedSeries& P,
                                                        unsigned var, unsigned d, bool reverse) {
    SeparatedSeries q(g.ring(), g.mx(), g.ny(), g.y_bound());
    SeparatedSeries rem = g;
    while (true) {
        const Exponent* key = nullptr;
        if (reverse) {
            for (auto it = rem.terms().rbegin(); it != rem.terms().rend(); ++it) {
                if (it->first[var] >= d) {
                    key = &it->first;
                    break;
                }
            }
        } else {
            for (const auto& [e, c] : rem.terms()) {
                if (e[var] >= d) {
                    key = &e;
                    break;
                }
            }
        }
        if (key == nullptr) break;
        Exponent shift = *key;
        shift[var] -= d;
        const WittNum c = rem.coefficient(*key);
        q.add_term(shift, c);
        rem -= monomial(rem, shift, c) * P;
    }
    return {q, rem};
}

}  // namespace

DivisionResult weierstrass_divide(const SeparatedSeries& g, const SeparatedSeries& f, unsigned var,
                                  const DivisionOptions& options) {
    if (!g.ring()->same_as(*f.ring()) || g.mx() != f.mx() || g.ny() != f.ny()) {
        throw Error(ErrorCode::ArityMismatch, "dividend and divisor live in different series rings");
    }
    const auto degree = regular_degree(f, var);
    if (!degree) {
        throw Error(ErrorCode::NotRegular, "divisor is not regular in " +
                                               std::string(var < f.mx() ? "X" : "Y") +
                                               std::to_string(var < f.mx() ? var : var - f.mx()));
    }
    const unsigned d = *degree;
    const RingRef& ring = f.ring();
    const unsigned bound = std::min(g.y_bound(), f.y_bound());
    const unsigned cap = ring->N() + bound + 2;

    if (!is_y_var(f, var)) {
        SeparatedSeries P(ring, f.mx(), f.ny(), bound);
        Exponent top(f.arity(), 0);
        top[var] = d;
        P.add_term(top, WittNum::one(ring));
        for (const auto& [e, c] : f.terms()) {
            if (y_free(f, e) && e[var] < d) P.add_term(e, c);
        }
        const SeparatedSeries E = f.truncate(bound) - P;

        DivisionResult out{SeparatedSeries(ring, f.mx(), f.ny(), bound),
                           SeparatedSeries(ring, f.mx(), f.ny(), bound), d, 0};
        SeparatedSeries rest = g.truncate(bound);
        while (!rest.is_zero() && out.passes < cap) {
            auto [qi, ri] = long_divide(rest, P, var, d, options.reverse_iteration);
            out.q += qi;
            out.r += ri;
            rest = -(qi * E);
            ++out.passes;
        }
        if (!rest.is_zero()) throw Error(ErrorCode::StalledProgress, "Weierstrass division did not converge");
        return out;
    }

    // Y variable: f = Y^d W + L with W a unit and L in J + (Y_{!=n}).
    if (d >= bound) throw Error(ErrorCode::TruncationUnsound, "Y-degree bound does not exceed the regular degree");
    const unsigned qbound = bound - d;
    SeparatedSeries W(ring, f.mx(), f.ny(), qbound);
    SeparatedSeries L(ring, f.mx(), f.ny(), qbound);
    for (const auto& [e, c] : f.terms()) {
        if (e[var] >= d) {
            Exponent s = e;
            s[var] -= d;
            W.add_term(s, c);
        } else {
            L.add_term(e, c);
        }
    }
    const SeparatedSeries W_inv = unit_inverse(W);
    DivisionResult out{SeparatedSeries(ring, f.mx(), f.ny(), qbound),
                       SeparatedSeries(ring, f.mx(), f.ny(), qbound), d, 0};
    SeparatedSeries rest = g.truncate(bound);
    while (!rest.is_zero() && out.passes < cap) {
        SeparatedSeries hi(ring, f.mx(), f.ny(), qbound);
        std::vector<std::pair<Exponent, WittNum>> order(rest.terms().begin(), rest.terms().end());
        if (options.reverse_iteration) std::reverse(order.begin(), order.end());
        for (const auto& [e, c] : order) {
            if (e[var] >= d) {
                Exponent s = e;
                s[var] -= d;
                hi.add_term(s, c);
            } else {
                out.r.add_term(e, c);
            }
        }
        const SeparatedSeries qi = hi * W_inv;
        out.q += qi;
        rest = -(qi * L);
        ++out.passes;
    }
    if (!rest.is_zero()) throw Error(ErrorCode::StalledProgress, "Weierstrass division did not converge");
    return out;
}

Preparation weierstrass_prepare(const SeparatedSeries& f, unsigned var) {
    const auto degree = regular_degree(f, var);
    if (!degree) throw Error(ErrorCode::NotRegular, "series is not regular in the requested variable");
    Exponent top(f.arity(), 0);
    top[var] = *degree;
    const SeparatedSeries g = monomial(f, top, WittNum::one(f.ring()));
    DivisionResult div = weierstrass_divide(g, f, var);
    SeparatedSeries P = g.truncate(div.q.y_bound()) - div.r;
    return Preparation{unit_inverse(div.q), std::move(P), *degree};
}

// ---------------------------------------------------------------- text form

SeparatedSeries parse_series(const RingRef& ring, std::string_view text) {
    std::optional<SeparatedSeries> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::LiteralError, "series line " + std::to_string(line_no) + ": " + msg);
    };
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        detail::TextCursor cur(line);
        if (cur.at_end()) continue;
        try {
            if (!out) {
                cur.expect_word("series");
                const auto mx = static_cast<unsigned>(cur.read_uint());
                const auto ny = static_cast<unsigned>(cur.read_uint());
                const auto bound = static_cast<unsigned>(cur.read_uint());
                cur.expect_end();
                out.emplace(ring, mx, ny, bound);
                continue;
            }
            Exponent e;
            for (unsigned i = 0; i < out->mx(); ++i) e.push_back(static_cast<unsigned>(cur.read_uint()));
            cur.expect('|');
            for (unsigned i = 0; i < out->ny(); ++i) e.push_back(static_cast<unsigned>(cur.read_uint()));
            cur.expect(':');
            const auto literal = cur.take_until("");
            const WittNum c = WittNum::parse(ring, literal);
            if (out->ny() > 0 && out->y_degree(e) >= out->y_bound()) fail("monomial beyond the Y-degree bound");
            if (out->terms().count(e) != 0) fail("repeated monomial");
            out->add_term(e, c);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::LiteralError) throw;
            if (std::string_view(err.what()).starts_with("series line")) throw;
            fail(err.what());
        }
    }
    if (!out) throw Error(ErrorCode::LiteralError, "series text has no header");
    return *std::move(out);
}

std::string format_series(const SeparatedSeries& f) {
    std::ostringstream os;
    os << "series " << f.mx() << ' ' << f.ny() << ' ' << f.y_bound() << '\n';
    for (const auto& [e, c] : f.terms()) {
        for (unsigned i = 0; i < f.mx(); ++i) os << e[i] << ' ';
        os << '|';
        for (unsigned j = f.mx(); j < f.arity(); ++j) os << ' ' << e[j];
        os << " : " << c.to_integer_string() << '\n';
    }
    return os.str();
}

SeparatedSeries read_series_file(const RingRef& ring, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read series file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series(ring, buf.str());
}

}  // namespace dvf
