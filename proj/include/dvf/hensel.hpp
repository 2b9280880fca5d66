#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dvf/term.hpp"
#include "dvf/witt.hpp"

namespace dvf {

// Order-preserving endomorphism of the value group applied i times. Only the
// identity occurs in the Witt model, since sigma is an isometry there.
using ValueGroupMap = std::function<Valuation(Valuation v, unsigned i)>;

Valuation identity_value_map(Valuation v, unsigned i);

/**
 * (t, a, d, xi): d linearly approximates t at prolongations on the open ball
 * {c : val(c - a) > xi}, and val(t(a, sigma a, ...)) > min_i (val d_i + xi).
 */
struct HenselConfig {
    Term t;
    Term u;  // sigma-free form of t
    WittNum a;
    std::vector<WittNum> d;
    int xi = 0;
    // d and xi are the gradient defaults on a Q-free term, for which the
    // approximation holds on the whole ball and sampling is only a cross-check.
    bool gradient_certified = false;
};

struct ConfigOptions {
    std::optional<std::vector<WittNum>> d;  // default: term_gradient(t, a)
    std::optional<int> xi;                  // default: min_i val(d_i)
    unsigned samples = 64;
    std::uint64_t seed = 0;
    ValueGroupMap value_map = identity_value_map;
};

struct ConfigRejection {
    enum class Reason { Inequality, Approximation };
    Reason reason = Reason::Inequality;
    Valuation lhs;  // val(t(prolongation(a))), or the error valuation of the pair
    Valuation rhs;  // the bound it failed to exceed
    std::optional<std::pair<WittNum, WittNum>> pair;  // violating (a', c') for Approximation

    std::string describe() const;
};

struct ConfigCheck {
    std::optional<HenselConfig> config;
    std::optional<ConfigRejection> rejection;

    bool accepted() const noexcept { return config.has_value(); }
};

/**
 * Checks the valuation inequality exactly and the linear approximation on
 * `samples` random pairs from the ball. ZeroGradient when every d_i is 0.
 */
ConfigCheck check_config(const Term& t, const WittNum& a, const ConfigOptions& options = {});

struct HenselStep {
    WittNum a;       // approximation before the step
    Valuation value;  // val(t(prolongation(a)))
    int e = 0;        // val(c - a) of the step taken
};

/**
 * One successive approximation: e = max_i (val t(a) - val d_i), then a root x of
 * sum_{i in S} res(d_i p^e / t(a)) x^{p^i} = -1 over the residue field, S the
 * indices attaining the max and x the least root, gives c = a + p^e lift(x).
 * Returns a when t(a) = 0 mod p^N. ResidueUnsolvable when the residue equation
 * has no root in the residue field; StalledProgress unless val t(c) > val t(a)
 * and val(c - a) = e.
 */
WittNum hensel_step(const HenselConfig& cfg, HenselStep* trace = nullptr);

struct SolveOptions {
    ConfigOptions config;
    // Recompute d at every approximation instead of keeping the initial one.
    bool newton = false;
};

struct SolveReport {
    WittNum root;
    std::vector<HenselStep> steps;
    Valuation residual_val;
    HenselConfig config;
};

/**
 * Iterates hensel_step from a0 until t(root) = 0 mod p^N, at most N steps
 * (StalledProgress beyond). ConfigRejected when (t, a0) fails check_config.
 */
SolveReport sigma_hensel_solve(const Term& t, const WittNum& a0, const SolveOptions& options = {});

struct ExtensionReport {
    SolveReport report;
    // Successive embeddings applied, outermost last.
    std::vector<RingEmbedding> extensions;

    // The composite embedding applied to an element of the starting ring.
    WittNum embed(const WittNum& x) const;
};

/**
 * sigma_hensel_solve that, when a residue equation needs an extension, moves to
 * the smallest extension of the current residue field where it is solvable and
 * continues from the embedded approximation. The total residue degree stays at
 * most max_degree.
 */
ExtensionReport solve_with_extension(const Term& t, const WittNum& a0, unsigned max_degree,
                                     const SolveOptions& options = {});

}  // namespace dvf
