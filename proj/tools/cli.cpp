#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <future>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dvf/error.hpp"
#include "dvf/hensel.hpp"
#include "dvf/leading_term.hpp"
#include "dvf/parser.hpp"
#include "dvf/selftest.hpp"
#include "dvf/series.hpp"
#include "json.hpp"

namespace dvf::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Session {
    Int p = 0;
    unsigned k = 1;
    unsigned N = 8;
    std::string modulus;
    std::vector<std::string> series;
    unsigned samples = 64;
    std::uint64_t seed = 0;
    bool json = false;
};

struct Options {
    Session s;
    std::string term;
    std::vector<std::string> starts;
    std::optional<int> xi;
    bool ordered = false;
    bool newton = false;
    unsigned extend_max = 0;
    std::string at;
    std::optional<unsigned> level;
    std::optional<Int> index;
    std::string value;
    std::string var;
    std::string dividend;
    std::string divisor;
};

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json number(const WittNum& x) { return {{"integer", x.to_integer_string()}, {"digits", x.to_digit_string()}}; }

std::string both_forms(const WittNum& x) { return x.to_integer_string() + " = " + x.to_digit_string(); }

FieldRef make_field(const Session& s) {
    if (s.modulus.empty()) {
        if (s.p == 0) throw Error(ErrorCode::InvalidArgument, "-p is required");
        return FieldDesc::make_default(s.p, s.k);
    }
    if (s.modulus.rfind("GF(", 0) == 0) return FieldDesc::parse(s.modulus);
    std::vector<Int> coeffs;
    std::stringstream in(s.modulus);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            coeffs.push_back(std::stoull(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::LiteralError, "bad modulus coefficient '" + item + "'");
        }
    }
    if (coeffs.size() < 2) throw Error(ErrorCode::InvalidArgument, "modulus needs degree >= 1");
    if (s.k != 1 && s.k + 1 != coeffs.size()) {
        throw Error(ErrorCode::InvalidArgument, "modulus degree does not match -k");
    }
    return FieldDesc::make(s.p, std::move(coeffs));
}

RingRef make_ring(const Session& s) {
    if (s.N == 0) throw Error(ErrorCode::InvalidArgument, "-N must be at least 1");
    return RingDesc::make(make_field(s), s.N);
}

SeriesTable load_series(const Session& s, const RingRef& ring) {
    SeriesTable table;
    for (const auto& entry : s.series) {
        const auto eq = entry.find('=');
        const std::filesystem::path path = eq == std::string::npos ? entry : entry.substr(eq + 1);
        const std::string name = eq == std::string::npos ? path.stem().string() : entry.substr(0, eq);
        if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty series name in '" + entry + "'");
        table.insert_or_assign(name, read_series_file(ring, path));
    }
    return table;
}

const SeparatedSeries& lookup(const SeriesTable& table, const std::string& name) {
    const auto it = table.find(name);
    if (it == table.end()) throw Error(ErrorCode::UnknownSeries, "unknown series '" + name + "'");
    return it->second;
}

unsigned parse_var(const SeparatedSeries& f, const std::string& entry) {
    if (entry.size() < 2 || (entry[0] != 'X' && entry[0] != 'Y') ||
        entry.find_first_not_of("0123456789", 1) != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "variable must look like X0 or Y1, got '" + entry + "'");
    }
    const unsigned i = static_cast<unsigned>(std::stoul(entry.substr(1)));
    const unsigned count = entry[0] == 'X' ? f.mx() : f.ny();
    if (i >= count) throw Error(ErrorCode::InvalidArgument, "no variable " + entry + " in this series");
    return entry[0] == 'X' ? i : f.mx() + i;
}

unsigned level_of(const Options& o, Int p) {
    if (o.level && o.index) throw Error(ErrorCode::InvalidArgument, "give either -m or --index");
    if (o.index) {
        if (*o.index == 0) throw Error(ErrorCode::InvalidArgument, "--index must be positive");
        return level_of_index(*o.index, p);
    }
    return o.level.value_or(0);
}

json config_json(const Session& s, const RingRef& ring) {
    return {{"p", ring->p()},        {"k", ring->k()},      {"N", ring->N()},
            {"field", ring->field()->to_string()},           {"samples", s.samples},
            {"seed", s.seed}};
}

json step_json(const HenselStep& st) {
    return {{"a", number(st.a)}, {"val", st.value.to_string()}, {"e", st.e}};
}

struct SolveOutcome {
    std::string start;
    std::optional<ExtensionReport> report;
    std::optional<Error> error;
};

SolveOutcome solve_one(const Options& o, const Term& t, const RingRef& ring, const std::string& start) {
    SolveOutcome out{start, std::nullopt, std::nullopt};
    try {
        SolveOptions so;
        so.newton = o.newton;
        so.config.samples = o.s.samples;
        so.config.seed = o.s.seed;
        so.config.xi = o.xi;
        const WittNum a0 = WittNum::parse(ring, start);
        if (o.extend_max > 0) {
            out.report = solve_with_extension(t, a0, o.extend_max, so);
        } else {
            out.report = ExtensionReport{sigma_hensel_solve(t, a0, so), {}};
        }
    } catch (const Error& e) {
        out.error = e;
    }
    return out;
}

json outcome_json(const SolveOutcome& r) {
    json j{{"start", r.start}};
    if (r.error) {
        j["error"] = {{"code", static_cast<int>(r.error->code())},
                      {"name", std::string(error_name(r.error->code()))},
                      {"message", r.error->what()}};
        return j;
    }
    const SolveReport& rep = r.report->report;
    j["root"] = number(rep.root);
    j["residue"] = residue(rep.root).to_string();
    j["residual_val"] = rep.residual_val.to_string();
    j["xi"] = rep.config.xi;
    j["step_count"] = rep.steps.size();
    if (!r.report->extensions.empty()) j["ring"] = rep.root.ring()->to_string();
    json steps = json::array();
    for (const auto& st : rep.steps) steps.push_back(step_json(st));
    j["steps"] = std::move(steps);
    return j;
}

std::string outcome_text(const SolveOutcome& r, bool header) {
    std::ostringstream os;
    if (header) os << "start " << r.start << "\n";
    if (r.error) {
        os << "error " << error_name(r.error->code()) << ": " << r.error->what() << "\n";
        return os.str();
    }
    const SolveReport& rep = r.report->report;
    os << "root " << both_forms(rep.root) << "\n";
    if (!r.report->extensions.empty()) {
        os << "ring " << rep.root.ring()->to_string() << "\n";
        os << "residue " << residue(rep.root).to_string() << "\n";
    }
    os << "steps " << rep.steps.size() << "\n";
    for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        const auto& st = rep.steps[i];
        os << "  " << i << ": a = " << st.a.to_integer_string() << ", val = " << st.value << ", e = " << st.e << "\n";
    }
    os << "residual_val " << rep.residual_val << "\n";
    return os.str();
}

int exit_code_for(const Error& e) { return is_input_error(e.code()) ? UsageError : DomainError; }

int cmd_solve(const Options& o, std::ostream& out, json& report) {
    const auto start = Clock::now();
    const RingRef ring = make_ring(o.s);
    const SeriesTable table = load_series(o.s, ring);
    const Term t = bind_series(parse_term(o.term), table);
    report["config"] = config_json(o.s, ring);
    report["config"]["newton"] = o.newton;
    report["inputs"] = {{"term", t.to_string()}, {"starts", o.starts}};

    std::vector<SolveOutcome> results(o.starts.size());
    std::mutex out_mutex;
    const bool many = o.starts.size() > 1;
    auto emit = [&](const SolveOutcome& r) {
        if (o.s.json) return;
        std::lock_guard lock(out_mutex);
        out << outcome_text(r, many);
    };
    if (!many) {
        results[0] = solve_one(o, t, ring, o.starts[0]);
        if (results[0].error) throw *results[0].error;
        emit(results[0]);
    } else {
        std::vector<std::future<void>> tasks;
        for (std::size_t i = 0; i < o.starts.size(); ++i) {
            tasks.push_back(std::async(std::launch::async, [&, i] {
                results[i] = solve_one(o, t, ring, o.starts[i]);
                if (!o.ordered) emit(results[i]);
            }));
        }
        for (auto& task : tasks) task.get();
        if (o.ordered) {
            for (const auto& r : results) emit(r);
        }
    }

    int code = Success;
    json outputs = json::array();
    json steps = json::array();
    for (const auto& r : results) {
        outputs.push_back(outcome_json(r));
        if (r.error) {
            code = std::max(code, exit_code_for(*r.error));
            continue;
        }
        for (const auto& st : r.report->report.steps) {
            json j = step_json(st);
            j["start"] = r.start;
            steps.push_back(std::move(j));
        }
    }
    report["outputs"] = many ? json{{"results", outputs}} : outputs[0];
    report["steps"] = std::move(steps);
    report["timings_ms"] = {{"total", ms_since(start)}};
    return code;
}

int cmd_eval(const Options& o, std::ostream& out, json& report) {
    const auto start = Clock::now();
    const RingRef ring = make_ring(o.s);
    const Term t = bind_series(parse_term(o.term), load_series(o.s, ring));
    const WittNum x = WittNum::parse(ring, o.at);
    const WittNum v = prolong_eval(t, x);
    report["config"] = config_json(o.s, ring);
    report["inputs"] = {{"term", t.to_string()}, {"at", number(x)}};
    report["outputs"] = {{"value", number(v)}};
    report["timings_ms"] = {{"total", ms_since(start)}};
    if (!o.s.json) out << "value " << both_forms(v) << "\n";
    return Success;
}

int cmd_lt(const Options& o, std::ostream& out, json& report, bool angular) {
    const auto start = Clock::now();
    const RingRef ring = make_ring(o.s);
    const WittNum x = WittNum::parse(ring, o.value);
    const unsigned m = level_of(o, ring->p());
    report["config"] = config_json(o.s, ring);
    report["inputs"] = {{"value", number(x)}, {"level", m}};
    std::string text;
    if (angular) {
        const ResidueRingElem r = ac(x, m);
        text = r.to_string();
        report["outputs"] = {{"ac", text}, {"value", number(r.value)}};
    } else {
        const LeadingTerm l = lt_map(x, m);
        text = l.to_string();
        json j{{"lt", text}, {"level", l.level()}};
        if (!l.is_zero()) {
            j["gamma"] = l.gamma().to_string();
            j["unit"] = number(l.unit());
        }
        report["outputs"] = std::move(j);
    }
    report["timings_ms"] = {{"total", ms_since(start)}};
    if (!o.s.json) out << text << "\n";
    return Success;
}

int cmd_weierstrass(const Options& o, std::ostream& out, json& report, bool divide) {
    const auto start = Clock::now();
    const RingRef ring = make_ring(o.s);
    const SeriesTable table = load_series(o.s, ring);
    report["config"] = config_json(o.s, ring);
    if (divide) {
        const SeparatedSeries& g = lookup(table, o.dividend);
        const SeparatedSeries& f = lookup(table, o.divisor);
        const DivisionResult res = weierstrass_divide(g, f, parse_var(f, o.var));
        report["inputs"] = {{"g", o.dividend}, {"f", o.divisor}, {"var", o.var}};
        report["outputs"] = {{"degree", res.degree},
                             {"passes", res.passes},
                             {"q", format_series(res.q)},
                             {"r", format_series(res.r)}};
        if (!o.s.json) {
            out << "degree " << res.degree << "\n# q\n" << format_series(res.q) << "# r\n" << format_series(res.r);
        }
    } else {
        const SeparatedSeries& f = lookup(table, o.divisor);
        const Preparation prep = weierstrass_prepare(f, parse_var(f, o.var));
        report["inputs"] = {{"f", o.divisor}, {"var", o.var}};
        report["outputs"] = {{"degree", prep.degree}, {"u", format_series(prep.u)}, {"P", format_series(prep.P)}};
        if (!o.s.json) {
            out << "degree " << prep.degree << "\n# u\n" << format_series(prep.u) << "# P\n" << format_series(prep.P);
        }
    }
    report["timings_ms"] = {{"total", ms_since(start)}};
    return Success;
}

int cmd_selftest(const Options& o, std::ostream& out, json& report) {
    const auto start = Clock::now();
    const auto results = run_selftest(o.s.seed);
    json outputs = json::array();
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed;
        outputs.push_back({{"suite", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"detail", r.detail}});
        if (!o.s.json) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
            if (!r.passed) out << ": " << r.detail;
            out << "\n";
        }
    }
    report["config"] = {{"seed", o.s.seed}};
    report["outputs"] = std::move(outputs);
    report["timings_ms"] = {{"total", ms_since(start)}};
    return ok ? Success : DomainError;
}

void add_session(CLI::App* cmd, Session& s, bool needs_ring) {
    if (needs_ring) {
        cmd->add_option("-p", s.p, "Residue characteristic");
        cmd->add_option("-k", s.k, "Residue degree")->check(CLI::PositiveNumber);
        cmd->add_option("-N", s.N, "Absolute precision, elements live mod p^N");
        cmd->add_option("--modulus", s.modulus, "Residue modulus: c0,c1,...,ck low to high, or GF(p^k; ...)");
    }
    cmd->add_option("--seed", s.seed, "Random seed");
    cmd->add_flag("--json", s.json, "Print a JSON report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-precision difference-analytic algebra over W(F_q)", "dvf"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "Find a root of a difference term by successive approximation");
    add_session(solve, o.s, true);
    solve->add_option("term", o.term, "Term in x")->required();
    solve->add_option("--start", o.starts, "Starting approximation; repeat for a batch")
        ->required()
        ->allow_extra_args(false);
    solve->add_option("--series", o.s.series, "[NAME=]FILE series definition; repeatable")->allow_extra_args(false);
    solve->add_option("--xi", o.xi, "Ball radius (default: min valuation of the gradient)");
    solve->add_option("--samples", o.s.samples, "Pairs sampled to check the linear approximation");
    solve->add_flag("--ordered", o.ordered, "Print batch results in input order");
    solve->add_flag("--newton", o.newton, "Recompute the gradient at every step");
    solve->add_option("--extend-max", o.extend_max,
                      "Allow residue field extensions up to this total degree (0: none)");

    auto* evalc = app.add_subcommand("eval", "Evaluate a term at a point");
    add_session(evalc, o.s, true);
    evalc->add_option("term", o.term, "Term in x")->required();
    evalc->add_option("--at", o.at, "Point")->required();
    evalc->add_option("--series", o.s.series, "[NAME=]FILE series definition; repeatable")->allow_extra_args(false);

    CLI::App* ltc = nullptr;
    CLI::App* acc = nullptr;
    for (auto** slot : {&ltc, &acc}) {
        const bool is_lt = slot == &ltc;
        *slot = app.add_subcommand(is_lt ? "lt" : "ac", is_lt ? "Leading term at level m" : "Angular component mod p^{m+1}");
        add_session(*slot, o.s, true);
        (*slot)->add_option("value", o.value, "Ring element")->required();
        (*slot)->add_option("-m", o.level, "Level");
        (*slot)->add_option("--index", o.index, "Sort index n; the level is v_p(n)");
    }

    auto* wdiv = app.add_subcommand("wdiv", "Weierstrass division of G by F");
    add_session(wdiv, o.s, true);
    wdiv->add_option("G", o.dividend, "Dividend series name")->required();
    wdiv->add_option("F", o.divisor, "Divisor series name")->required();
    wdiv->add_option("--var", o.var, "Variable, X0.. or Y0..")->required();
    wdiv->add_option("--series", o.s.series, "[NAME=]FILE series definition; repeatable")->allow_extra_args(false);

    auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation of F");
    add_session(wprep, o.s, true);
    wprep->add_option("F", o.divisor, "Series name")->required();
    wprep->add_option("--var", o.var, "Variable, X0.. or Y0..")->required();
    wprep->add_option("--series", o.s.series, "[NAME=]FILE series definition; repeatable")->allow_extra_args(false);

    auto* self = app.add_subcommand("selftest", "Run the randomized invariant suites");
    add_session(self, o.s, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return UsageError;
    }

    CLI::App* chosen = app.get_subcommands().front();
    json report{{"command", chosen->get_name()}, {"args", args},   {"config", nullptr},     {"inputs", nullptr},
                {"outputs", nullptr},           {"steps", json::array()}, {"timings_ms", nullptr}};
    int code = Success;
    try {
        if (chosen == solve) {
            code = cmd_solve(o, out, report);
        } else if (chosen == evalc) {
            code = cmd_eval(o, out, report);
        } else if (chosen == ltc || chosen == acc) {
            code = cmd_lt(o, out, report, chosen == acc);
        } else if (chosen == wdiv || chosen == wprep) {
            code = cmd_weierstrass(o, out, report, chosen == wdiv);
        } else {
            code = cmd_selftest(o, out, report);
        }
    } catch (const Error& e) {
        code = exit_code_for(e);
        err << "error " << error_name(e.code()) << ": " << e.what() << "\n";
        report["error"] = {{"code", static_cast<int>(e.code())},
                           {"name", std::string(error_name(e.code()))},
                           {"message", e.what()}};
        if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
            report["error"]["column"] = se->column();
            report["error"]["expected"] = se->expected();
        }
    }
    if (o.s.json) out << report.dump(2) << "\n";
    return code;
}

}  // namespace dvf::cli
