#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvf/series.hpp"
#include "dvf/witt.hpp"

namespace dvf {

enum class TermKind {
    Constant,  // non-negative integer literal or ring element
    Prime,     // the symbol p
    Variable,  // x
    Slot,      // sigma^i(x) in the sigma-free form
    Add,
    Sub,
    Mul,
    Quot,    // Q(a, b)
    Sigma,   // sigma^power(child)
    Series,  // name(args...)
};

// Columns [begin, end) in the parsed text, 1-based. Zero for built terms.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct TermNode;

/**
 * Immutable difference-analytic term in one variable x.
 *
 * Series nodes refer to a SeparatedSeries by name; bind_series attaches the
 * series themselves, which evaluation requires. Equality is structural and
 * ignores spans.
 */
class Term {
public:
    static Term constant(std::uint64_t value, SourceSpan span = {});
    static Term constant(const WittNum& value, SourceSpan span = {});
    static Term prime(SourceSpan span = {});
    static Term variable(SourceSpan span = {});
    static Term slot(unsigned index, SourceSpan span = {});
    static Term add(Term a, Term b, SourceSpan span = {});
    static Term sub(Term a, Term b, SourceSpan span = {});
    static Term mul(Term a, Term b, SourceSpan span = {});
    static Term quot(Term a, Term b, SourceSpan span = {});
    static Term sigma(unsigned power, Term child, SourceSpan span = {});
    static Term series(std::string name, std::vector<Term> args, SourceSpan span = {});

    TermKind kind() const noexcept;
    SourceSpan span() const noexcept;
    const std::vector<Term>& children() const noexcept;

    // Constant: the integer literal, when there is one.
    std::optional<std::uint64_t> integer() const noexcept;
    // Constant: the ring element, when there is one.
    const std::optional<WittNum>& element() const noexcept;
    // Slot index or Sigma power.
    unsigned index() const noexcept;
    const std::string& name() const noexcept;
    // Bound series of a Series node; null until bound.
    const std::shared_ptr<const SeparatedSeries>& bound() const noexcept;

    // Largest total sigma power applied to x, i.e. the n of the prolongation.
    unsigned sigma_depth() const;
    bool contains_quot() const;
    bool is_sigma_free() const;

    // Canonical text: ` + ` and ` - ` spaced, `*` tight, minimal parentheses.
    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
    friend Term make_term(TermNode node);

    std::shared_ptr<const TermNode> node_;
};

using SeriesTable = std::map<std::string, SeparatedSeries, std::less<>>;

// Attaches series by name. UnknownSeries for missing names, ArityMismatch when
// the argument count differs from mX + nY.
Term bind_series(const Term& t, const SeriesTable& table);

// Names of all series referenced by t.
std::vector<std::string> series_names(const Term& t);

/**
 * The sigma-free form u with t(x) = u(x, sigma x, ..., sigma^n x): sigma is
 * pushed to the leaves, acting on ring constants and series coefficients by the
 * Frobenius lift. Integer literals and p are fixed by sigma.
 */
Term sigma_free(const Term& t);

// t at the prolongation of x, by direct recursion.
WittNum evaluate(const Term& t, const WittNum& x);

// u at the given slot values.
WittNum evaluate_slots(const Term& u, std::span<const WittNum> slots);

// (x, sigma x, ..., sigma^n x)
std::vector<WittNum> prolongation(const WittNum& x, unsigned n);

// u(prolongation(x)) for u = sigma_free(t).
WittNum prolong_eval(const Term& t, const WittNum& x);

/**
 * d_i = partial of u in slot i at the prolongation of a, i = 0..sigma_depth.
 * Q is differentiated by the quotient rule; QuotientSingularity when a
 * denominator vanishes. A series application outside its domain is the
 * constant 0 there and contributes nothing.
 */
std::vector<WittNum> term_gradient(const Term& t, const WittNum& a);

// Ring constants and bound series carried along an embedding.
Term base_change(const Term& t, const RingEmbedding& emb);

}  // namespace dvf
