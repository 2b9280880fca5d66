#include "dvf/term.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "dvf/error.hpp"

namespace dvf {

struct TermNode {
    TermKind kind = TermKind::Constant;
    SourceSpan span;
    std::vector<Term> children;
    std::optional<std::uint64_t> integer;
    std::optional<WittNum> element;
    unsigned index = 0;
    std::string name;
    std::shared_ptr<const SeparatedSeries> bound;
};

Term make_term(TermNode node) { return Term(std::make_shared<const TermNode>(std::move(node))); }

namespace {

TermNode node_of(TermKind kind, SourceSpan span, std::vector<Term> children = {}) {
    TermNode n;
    n.kind = kind;
    n.span = span;
    n.children = std::move(children);
    return n;
}

TermNode copy_node(const Term& t) {
    TermNode n;
    n.kind = t.kind();
    n.span = t.span();
    n.children = t.children();
    n.integer = t.integer();
    n.element = t.element();
    n.index = t.index();
    n.name = t.name();
    n.bound = t.bound();
    return n;
}

// Rebuilds t with every child replaced by f(child).
template <class F>
Term map_children(const Term& t, F&& f) {
    TermNode n = copy_node(t);
    for (auto& c : n.children) c = f(c);
    return make_term(std::move(n));
}

int precedence(const Term& t) {
    switch (t.kind()) {
        case TermKind::Add:
        case TermKind::Sub: return 1;
        case TermKind::Mul: return 2;
        default: return 3;
    }
}

void print(const Term& t, std::string& out);

void print_at_least(const Term& t, int min_prec, std::string& out) {
    if (precedence(t) < min_prec) {
        out += '(';
        print(t, out);
        out += ')';
    } else {
        print(t, out);
    }
}

void print_sigma(unsigned power, std::string& out) {
    out += power == 1 ? "s(" : "s^" + std::to_string(power) + "(";
}

void print(const Term& t, std::string& out) {
    const auto& ch = t.children();
    switch (t.kind()) {
        case TermKind::Constant:
            if (t.integer()) {
                out += std::to_string(*t.integer());
            } else {
                out += t.element()->to_integer_string();
            }
            return;
        case TermKind::Prime: out += 'p'; return;
        case TermKind::Variable: out += 'x'; return;
        case TermKind::Slot:
            if (t.index() == 0) {
                out += 'x';
            } else {
                print_sigma(t.index(), out);
                out += "x)";
            }
            return;
        case TermKind::Add:
        case TermKind::Sub:
            print_at_least(ch[0], 1, out);
            out += t.kind() == TermKind::Add ? " + " : " - ";
            print_at_least(ch[1], 2, out);
            return;
        case TermKind::Mul:
            print_at_least(ch[0], 2, out);
            out += '*';
            print_at_least(ch[1], 3, out);
            return;
        case TermKind::Quot:
            out += "Q(";
            print(ch[0], out);
            out += ", ";
            print(ch[1], out);
            out += ')';
            return;
        case TermKind::Sigma:
            print_sigma(t.index(), out);
            print(ch[0], out);
            out += ')';
            return;
        case TermKind::Series:
            out += t.name();
            out += '(';
            for (std::size_t i = 0; i < ch.size(); ++i) {
                if (i) out += ", ";
                print(ch[i], out);
            }
            out += ')';
            return;
    }
}

bool same_element(const std::optional<WittNum>& a, const std::optional<WittNum>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->ring()->same_as(*b->ring()) && *a == *b;
}

bool same_bound(const std::shared_ptr<const SeparatedSeries>& a, const std::shared_ptr<const SeparatedSeries>& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->ring()->same_as(*b->ring()) && a->mx() == b->mx() && a->ny() == b->ny() && *a == *b;
}

WittNum constant_value(const Term& t, const RingRef& ring) {
    if (t.integer()) {
        return WittNum::from_int(ring, static_cast<std::int64_t>(*t.integer() % ring->modulus()));
    }
    if (!t.element()->ring()->same_as(*ring)) {
        throw Error(ErrorCode::MixedField, "constant " + t.element()->to_string() + " from another ring");
    }
    return *t.element();
}

const SeparatedSeries& require_bound(const Term& t) {
    if (!t.bound()) throw Error(ErrorCode::UnknownSeries, "series '" + t.name() + "' is not bound");
    return *t.bound();
}

struct SeriesArgs {
    std::vector<WittNum> x;
    std::vector<WittNum> y;
};

SeriesArgs split_args(const SeparatedSeries& f, std::vector<WittNum> values) {
    SeriesArgs out;
    out.x.assign(values.begin(), values.begin() + f.mx());
    out.y.assign(values.begin() + f.mx(), values.end());
    return out;
}

bool in_domain(const SeriesArgs& args) {
    return std::all_of(args.y.begin(), args.y.end(), [](const WittNum& y) { return val(y) >= 1; });
}

WittNum eval_node(const Term& t, std::span<const WittNum> slots) {
    const RingRef& ring = slots.front().ring();
    const auto& ch = t.children();
    switch (t.kind()) {
        case TermKind::Constant: return constant_value(t, ring);
        case TermKind::Prime: return WittNum::from_int(ring, static_cast<std::int64_t>(ring->p()));
        case TermKind::Variable: return slots.front();
        case TermKind::Slot:
            if (t.index() >= slots.size()) {
                throw Error(ErrorCode::ArityMismatch, "slot " + std::to_string(t.index()) + " of " +
                                                          std::to_string(slots.size()));
            }
            return slots[t.index()];
        case TermKind::Add: return eval_node(ch[0], slots) + eval_node(ch[1], slots);
        case TermKind::Sub: return eval_node(ch[0], slots) - eval_node(ch[1], slots);
        case TermKind::Mul: return eval_node(ch[0], slots) * eval_node(ch[1], slots);
        case TermKind::Quot: return quot(eval_node(ch[0], slots), eval_node(ch[1], slots));
        case TermKind::Sigma: return frobenius(eval_node(ch[0], slots), t.index());
        case TermKind::Series: {
            const SeparatedSeries& f = require_bound(t);
            std::vector<WittNum> values;
            for (const auto& c : ch) values.push_back(eval_node(c, slots));
            const SeriesArgs args = split_args(f, std::move(values));
            return eval(f, args.x, args.y);
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown term kind");
}

// Value together with its partials in each slot.
struct Dual {
    WittNum v;
    std::vector<WittNum> d;
};

Dual dual_node(const Term& t, std::span<const WittNum> slots) {
    const RingRef& ring = slots.front().ring();
    const std::size_t n = slots.size();
    const WittNum zero = WittNum::zero(ring);
    const auto& ch = t.children();
    auto constant = [&](WittNum v) { return Dual{std::move(v), std::vector<WittNum>(n, zero)}; };
    switch (t.kind()) {
        case TermKind::Constant:
        case TermKind::Prime: return constant(eval_node(t, slots));
        case TermKind::Variable:
        case TermKind::Slot: {
            const unsigned i = t.kind() == TermKind::Slot ? t.index() : 0;
            Dual out = constant(eval_node(t, slots));
            out.d[i] = WittNum::one(ring);
            return out;
        }
        case TermKind::Add:
        case TermKind::Sub: {
            Dual a = dual_node(ch[0], slots);
            const Dual b = dual_node(ch[1], slots);
            const bool add = t.kind() == TermKind::Add;
            a.v = add ? a.v + b.v : a.v - b.v;
            for (std::size_t i = 0; i < n; ++i) a.d[i] = add ? a.d[i] + b.d[i] : a.d[i] - b.d[i];
            return a;
        }
        case TermKind::Mul: {
            const Dual a = dual_node(ch[0], slots);
            const Dual b = dual_node(ch[1], slots);
            Dual out = constant(a.v * b.v);
            for (std::size_t i = 0; i < n; ++i) out.d[i] = a.d[i] * b.v + a.v * b.d[i];
            return out;
        }
        case TermKind::Quot: {
            const Dual a = dual_node(ch[0], slots);
            const Dual b = dual_node(ch[1], slots);
            if (b.v.is_zero()) {
                throw Error(ErrorCode::QuotientSingularity, "denominator of " + t.to_string() + " vanishes");
            }
            Dual out = constant(quot(a.v, b.v));
            const WittNum b2 = b.v * b.v;
            for (std::size_t i = 0; i < n; ++i) {
                const WittNum num = a.d[i] * b.v - a.v * b.d[i];
                if (!num.is_zero()) out.d[i] = quot(num, b2);
            }
            return out;
        }
        case TermKind::Sigma:
            throw Error(ErrorCode::InvalidArgument, "gradient needs the sigma-free form");
        case TermKind::Series: {
            const SeparatedSeries& f = require_bound(t);
            std::vector<Dual> inner;
            std::vector<WittNum> values;
            for (const auto& c : ch) {
                inner.push_back(dual_node(c, slots));
                values.push_back(inner.back().v);
            }
            const SeriesArgs args = split_args(f, std::move(values));
            if (!in_domain(args)) return constant(zero);
            Dual out = constant(eval(f, args.x, args.y));
            for (unsigned j = 0; j < f.arity(); ++j) {
                if (std::all_of(inner[j].d.begin(), inner[j].d.end(), [](const WittNum& w) { return w.is_zero(); })) {
                    continue;
                }
                const WittNum partial = eval(derivative(f, j), args.x, args.y);
                for (std::size_t i = 0; i < n; ++i) out.d[i] += partial * inner[j].d[i];
            }
            return out;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown term kind");
}

Term push_sigma(const Term& t, unsigned shift) {
    switch (t.kind()) {
        case TermKind::Variable: return Term::slot(shift, t.span());
        case TermKind::Slot: return Term::slot(t.index() + shift, t.span());
        case TermKind::Sigma: return push_sigma(t.children()[0], shift + t.index());
        case TermKind::Constant:
            if (t.element() && shift != 0) return Term::constant(frobenius(*t.element(), shift), t.span());
            return t;
        case TermKind::Series: {
            TermNode n = copy_node(t);
            for (auto& c : n.children) c = push_sigma(c, shift);
            if (shift != 0) {
                n.bound = std::make_shared<const SeparatedSeries>(frobenius(require_bound(t), shift));
            }
            return make_term(std::move(n));
        }
        default: return map_children(t, [shift](const Term& c) { return push_sigma(c, shift); });
    }
}

}  // namespace

Term Term::constant(std::uint64_t value, SourceSpan span) {
    TermNode n = node_of(TermKind::Constant, span);
    n.integer = value;
    return make_term(std::move(n));
}

Term Term::constant(const WittNum& value, SourceSpan span) {
    TermNode n = node_of(TermKind::Constant, span);
    n.element = value;
    return make_term(std::move(n));
}

Term Term::prime(SourceSpan span) { return make_term(node_of(TermKind::Prime, span)); }
Term Term::variable(SourceSpan span) { return make_term(node_of(TermKind::Variable, span)); }

Term Term::slot(unsigned index, SourceSpan span) {
    TermNode n = node_of(TermKind::Slot, span);
    n.index = index;
    return make_term(std::move(n));
}

Term Term::add(Term a, Term b, SourceSpan span) {
    return make_term(node_of(TermKind::Add, span, {std::move(a), std::move(b)}));
}

Term Term::sub(Term a, Term b, SourceSpan span) {
    return make_term(node_of(TermKind::Sub, span, {std::move(a), std::move(b)}));
}

Term Term::mul(Term a, Term b, SourceSpan span) {
    return make_term(node_of(TermKind::Mul, span, {std::move(a), std::move(b)}));
}

Term Term::quot(Term a, Term b, SourceSpan span) {
    return make_term(node_of(TermKind::Quot, span, {std::move(a), std::move(b)}));
}

Term Term::sigma(unsigned power, Term child, SourceSpan span) {
    TermNode n = node_of(TermKind::Sigma, span, {std::move(child)});
    n.index = power;
    return make_term(std::move(n));
}

Term Term::series(std::string name, std::vector<Term> args, SourceSpan span) {
    TermNode n = node_of(TermKind::Series, span, std::move(args));
    n.name = std::move(name);
    return make_term(std::move(n));
}

TermKind Term::kind() const noexcept { return node_->kind; }
SourceSpan Term::span() const noexcept { return node_->span; }
const std::vector<Term>& Term::children() const noexcept { return node_->children; }
std::optional<std::uint64_t> Term::integer() const noexcept { return node_->integer; }
const std::optional<WittNum>& Term::element() const noexcept { return node_->element; }
unsigned Term::index() const noexcept { return node_->index; }
const std::string& Term::name() const noexcept { return node_->name; }
const std::shared_ptr<const SeparatedSeries>& Term::bound() const noexcept { return node_->bound; }

unsigned Term::sigma_depth() const {
    unsigned depth = 0;
    for (const auto& c : children()) depth = std::max(depth, c.sigma_depth());
    if (kind() == TermKind::Sigma) return depth + index();
    if (kind() == TermKind::Slot) return index();
    return depth;
}

bool Term::contains_quot() const {
    if (kind() == TermKind::Quot) return true;
    return std::any_of(children().begin(), children().end(), [](const Term& c) { return c.contains_quot(); });
}

bool Term::is_sigma_free() const {
    if (kind() == TermKind::Sigma || kind() == TermKind::Variable) return false;
    return std::all_of(children().begin(), children().end(), [](const Term& c) { return c.is_sigma_free(); });
}

std::string Term::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    return a.kind() == b.kind() && a.integer() == b.integer() && a.index() == b.index() &&
           a.name() == b.name() && same_element(a.element(), b.element()) && same_bound(a.bound(), b.bound()) &&
           a.children() == b.children();
}

Term bind_series(const Term& t, const SeriesTable& table) {
    Term out = map_children(t, [&](const Term& c) { return bind_series(c, table); });
    if (t.kind() != TermKind::Series) return out;
    const auto it = table.find(t.name());
    if (it == table.end()) throw Error(ErrorCode::UnknownSeries, "unknown series '" + t.name() + "'");
    if (it->second.arity() != t.children().size()) {
        throw Error(ErrorCode::ArityMismatch, "series '" + t.name() + "' takes " +
                                                  std::to_string(it->second.arity()) + " arguments, got " +
                                                  std::to_string(t.children().size()));
    }
    TermNode n = copy_node(out);
    n.bound = std::make_shared<const SeparatedSeries>(it->second);
    return make_term(std::move(n));
}

std::vector<std::string> series_names(const Term& t) {
    std::set<std::string> names;
    auto walk = [&](auto&& self, const Term& s) -> void {
        if (s.kind() == TermKind::Series) names.insert(s.name());
        for (const auto& c : s.children()) self(self, c);
    };
    walk(walk, t);
    return {names.begin(), names.end()};
}

Term sigma_free(const Term& t) { return push_sigma(t, 0); }

WittNum evaluate(const Term& t, const WittNum& x) {
    const WittNum slots[] = {x};
    return eval_node(t, slots);
}

WittNum evaluate_slots(const Term& u, std::span<const WittNum> slots) {
    if (slots.empty()) throw Error(ErrorCode::ArityMismatch, "no slot values");
    return eval_node(u, slots);
}

std::vector<WittNum> prolongation(const WittNum& x, unsigned n) {
    std::vector<WittNum> out{x};
    for (unsigned i = 0; i < n; ++i) out.push_back(frobenius(out.back()));
    return out;
}

WittNum prolong_eval(const Term& t, const WittNum& x) {
    const Term u = sigma_free(t);
    return evaluate_slots(u, prolongation(x, u.sigma_depth()));
}

std::vector<WittNum> term_gradient(const Term& t, const WittNum& a) {
    const Term u = sigma_free(t);
    return dual_node(u, prolongation(a, u.sigma_depth())).d;
}

Term base_change(const Term& t, const RingEmbedding& emb) {
    TermNode n = copy_node(t);
    for (auto& c : n.children) c = base_change(c, emb);
    if (n.element) n.element = emb.apply(*n.element);
    if (n.bound) n.bound = std::make_shared<const SeparatedSeries>(embed(*n.bound, emb));
    return make_term(std::move(n));
}

}  // namespace dvf
