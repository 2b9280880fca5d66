#include "dvf/hensel.hpp"

#include <algorithm>
#include <random>

#include "dvf/error.hpp"

namespace dvf {

namespace {

bool all_zero(const std::vector<WittNum>& d) {
    return std::all_of(d.begin(), d.end(), [](const WittNum& x) { return x.is_zero(); });
}

Valuation min_val(const std::vector<WittNum>& d) {
    Valuation m = Valuation::infinity();
    for (const auto& x : d) m = std::min(m, val(x));
    return m;
}

std::size_t slot_count(const HenselConfig& cfg) {
    return std::max<std::size_t>(cfg.u.sigma_depth() + 1, cfg.d.size());
}

WittNum value_at(const HenselConfig& cfg, const WittNum& x) {
    return evaluate_slots(cfg.u, prolongation(x, cfg.u.sigma_depth()));
}

// sum_i d_i sigma^i(eps)
WittNum linear_part(const std::vector<WittNum>& d, const WittNum& eps) {
    WittNum acc = WittNum::zero(eps.ring());
    WittNum power = eps;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) power = frobenius(power);
        if (!d[i].is_zero()) acc += d[i] * power;
    }
    return acc;
}

void require_ring(const WittNum& x, const RingRef& ring, const char* what) {
    if (!x.ring()->same_as(*ring)) throw Error(ErrorCode::MixedField, std::string(what) + " from another ring");
}

}  // namespace

Valuation identity_value_map(Valuation v, unsigned) { return v; }

std::string ConfigRejection::describe() const {
    if (reason == Reason::Inequality) {
        return "val(t(a)) = " + lhs.to_string() + " does not exceed min_i(val d_i + xi) = " + rhs.to_string();
    }
    std::string out = "linear approximation fails: error valuation " + lhs.to_string() + " <= " + rhs.to_string();
    if (pair) out += " at (" + pair->first.to_string() + ", " + pair->second.to_string() + ")";
    return out;
}

ConfigCheck check_config(const Term& t, const WittNum& a, const ConfigOptions& options) {
    const RingRef& ring = a.ring();
    HenselConfig cfg{t, sigma_free(t), a, {}, 0, false};
    const std::size_t slots = cfg.u.sigma_depth() + 1;
    cfg.d = options.d ? *options.d : term_gradient(t, a);
    for (const auto& x : cfg.d) require_ring(x, ring, "linear approximation");
    if (cfg.d.size() < slots) cfg.d.resize(slots, WittNum::zero(ring));
    if (all_zero(cfg.d)) throw Error(ErrorCode::ZeroGradient, "every d_i vanishes mod p^N");

    const int min_d = min_val(cfg.d).value();
    cfg.xi = options.xi.value_or(min_d);
    cfg.gradient_certified = !options.d && cfg.xi >= min_d && !t.contains_quot();

    const ValueGroupMap& vmap = options.value_map ? options.value_map : ValueGroupMap(identity_value_map);
    ConfigCheck out;

    const Valuation lhs = val(value_at(cfg, a));
    Valuation rhs = Valuation::infinity();
    for (unsigned i = 0; i < cfg.d.size(); ++i) {
        if (!cfg.d[i].is_zero()) rhs = std::min(rhs, val(cfg.d[i]) + vmap(Valuation(cfg.xi), i));
    }
    if (!(lhs > rhs)) {
        out.rejection = ConfigRejection{ConfigRejection::Reason::Inequality, lhs, rhs, std::nullopt};
        return out;
    }

    // Pairs from the open ball val(c - a) > xi.
    const int radius = std::max(cfg.xi + 1, 0);
    if (radius < static_cast<int>(ring->N())) {
        std::mt19937_64 rng(options.seed);
        const auto scale = static_cast<unsigned>(radius);
        for (unsigned s = 0; s < options.samples; ++s) {
            const WittNum a1 = a + mul_p_power(random_witt(ring, rng), scale);
            const WittNum c1 = a + mul_p_power(random_witt(ring, rng), scale);
            const WittNum eps = c1 - a1;
            if (eps.is_zero()) continue;
            const WittNum err = value_at(cfg, c1) - value_at(cfg, a1) - linear_part(cfg.d, eps);
            const Valuation err_val = val(err);
            Valuation bound = Valuation::infinity();
            for (unsigned i = 0; i < cfg.d.size(); ++i) {
                if (!cfg.d[i].is_zero()) bound = std::min(bound, val(cfg.d[i]) + vmap(val(eps), i));
            }
            if (err_val.is_finite() && !(err_val > bound)) {
                out.rejection = ConfigRejection{ConfigRejection::Reason::Approximation, err_val, bound,
                                                std::make_pair(a1, c1)};
                return out;
            }
        }
    }
    out.config = std::move(cfg);
    return out;
}

WittNum hensel_step(const HenselConfig& cfg, HenselStep* trace) {
    const WittNum& a = cfg.a;
    const RingRef& ring = a.ring();
    const WittNum value = value_at(cfg, a);
    const Valuation v = val(value);
    if (trace) *trace = HenselStep{a, v, 0};
    if (!v.is_finite()) return a;

    int e = 0;
    bool any = false;
    for (const auto& di : cfg.d) {
        if (di.is_zero()) continue;
        const int cand = v.value() - val(di).value();
        e = any ? std::max(e, cand) : cand;
        any = true;
    }
    if (!any) throw Error(ErrorCode::ZeroGradient, "every d_i vanishes mod p^N");
    if (e < 0) throw Error(ErrorCode::PrecisionLoss, "step of negative valuation " + std::to_string(e));
    if (trace) trace->e = e;

    const FieldElem t_res_inv = inverse(residue(div_p_power(value, static_cast<unsigned>(v.value()))));
    const FieldRef& field = ring->field();
    std::vector<FieldElem> coeffs;
    for (std::size_t i = 0; i < cfg.d.size(); ++i) {
        const WittNum& di = cfg.d[i];
        if (di.is_zero() || v.value() - val(di).value() != e) continue;
        coeffs.resize(i + 1, FieldElem::zero(field));
        coeffs[i] = residue(div_p_power(di, static_cast<unsigned>(val(di).value()))) * t_res_inv;
    }
    const LinearizedSolution sol = solve_linearized(coeffs, -FieldElem::one(field));
    if (sol.roots.empty()) {
        throw ResidueUnsolvable(sol.extension_required,
                                "residue equation has no root in " + field->to_string() +
                                    (sol.extension_required ? "; a finite extension has one" : ""));
    }
    const WittNum c = a + mul_p_power(WittNum::lift(ring, sol.roots.front()), static_cast<unsigned>(e));

    const Valuation next = val(value_at(cfg, c));
    if (!(next > v) || val(c - a) != e) {
        throw Error(ErrorCode::StalledProgress, "step from " + a.to_string() + " did not improve: val " +
                                                    v.to_string() + " -> " + next.to_string());
    }
    return c;
}

namespace {

// Steps until t(a) = 0, updating cfg.a and the trace. The step budget is
// shared across calls.
void iterate(HenselConfig& cfg, std::vector<HenselStep>& steps, unsigned& budget, bool newton) {
    while (true) {
        if (val(value_at(cfg, cfg.a)) == Valuation::infinity()) return;
        if (budget == 0) {
            throw Error(ErrorCode::StalledProgress, "no root after " + std::to_string(cfg.a.ring()->N()) + " steps");
        }
        if (newton) {
            cfg.d = term_gradient(cfg.t, cfg.a);
            cfg.d.resize(slot_count(cfg), WittNum::zero(cfg.a.ring()));
        }
        HenselStep step{cfg.a, Valuation::infinity(), 0};
        WittNum next = hensel_step(cfg, &step);
        steps.push_back(std::move(step));
        cfg.a = std::move(next);
        --budget;
    }
}

HenselConfig accepted_config(const Term& t, const WittNum& a0, const ConfigOptions& options) {
    ConfigCheck check = check_config(t, a0, options);
    if (!check.accepted()) throw Error(ErrorCode::ConfigRejected, check.rejection->describe());
    return std::move(*check.config);
}

// start is a0 read in the ring of the root.
SolveReport finish(HenselConfig cfg, std::vector<HenselStep> steps, const WittNum& start) {
    const WittNum root = cfg.a;
    if (!steps.empty() && val(root - start) < steps.front().e) {
        throw Error(ErrorCode::StalledProgress, "root left the ball of the first step");
    }
    const Valuation residual = val(value_at(cfg, root));
    return SolveReport{root, std::move(steps), residual, std::move(cfg)};
}

}  // namespace

SolveReport sigma_hensel_solve(const Term& t, const WittNum& a0, const SolveOptions& options) {
    HenselConfig cfg = accepted_config(t, a0, options.config);
    std::vector<HenselStep> steps;
    unsigned budget = a0.ring()->N();
    iterate(cfg, steps, budget, options.newton);
    return finish(std::move(cfg), std::move(steps), a0);
}

WittNum ExtensionReport::embed(const WittNum& x) const {
    WittNum out = x;
    for (const auto& e : extensions) out = e.apply(out);
    return out;
}

ExtensionReport solve_with_extension(const Term& t, const WittNum& a0, unsigned max_degree,
                                     const SolveOptions& options) {
    HenselConfig cfg = accepted_config(t, a0, options.config);
    std::vector<HenselStep> steps;
    unsigned budget = a0.ring()->N();
    std::vector<RingEmbedding> extensions;
    while (true) {
        try {
            iterate(cfg, steps, budget, options.newton);
            break;
        } catch (const ResidueUnsolvable& err) {
            if (!err.extension_required()) throw;
            const RingRef ring = cfg.a.ring();
            bool moved = false;
            for (unsigned j = 2; ring->k() * j <= max_degree && !moved; ++j) {
                RingEmbedding emb = extend_ring(ring, j);
                HenselConfig lifted{base_change(cfg.t, emb), base_change(cfg.u, emb), emb.apply(cfg.a), {},
                                    cfg.xi, cfg.gradient_certified};
                for (const auto& di : cfg.d) lifted.d.push_back(emb.apply(di));
                try {
                    (void)hensel_step(lifted);
                } catch (const ResidueUnsolvable&) {
                    continue;
                }
                cfg = std::move(lifted);
                extensions.push_back(std::move(emb));
                moved = true;
            }
            if (!moved) throw;
        }
    }
    ExtensionReport out{SolveReport{cfg.a, {}, Valuation::infinity(), cfg}, std::move(extensions)};
    out.report = finish(std::move(cfg), std::move(steps), out.embed(a0));
    return out;
}

}  // namespace dvf
