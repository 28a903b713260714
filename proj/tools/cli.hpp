#pragma once

// Command-line front end. run() parses a full argument vector and writes to
// the given streams so the commands can be exercised without a process.

#include <okamoto/okamoto.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace okamoto::cli {

enum ExitCode : int { ok = 0, usage_error = 1, numerical_failure = 2 };

struct LevelRange {
    unsigned lo = 0, hi = 0;
};

// "lo..hi", inclusive
inline LevelRange parse_levels(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw domain_error("level range must look like lo..hi, got '" + s + "'");
    try {
        std::size_t used = 0;
        LevelRange r;
        r.lo = static_cast<unsigned>(std::stoul(s.substr(0, dots), &used));
        if (used != dots) throw std::invalid_argument(s);
        const std::string tail = s.substr(dots + 2);
        r.hi = static_cast<unsigned>(std::stoul(tail, &used));
        if (used != tail.size()) throw std::invalid_argument(s);
        if (r.hi < r.lo) throw domain_error("level range '" + s + "' is empty");
        return r;
    } catch (const std::logic_error&) {
        throw domain_error("level range must look like lo..hi, got '" + s + "'");
    }
}

struct RunConfig {
    std::string a;
    bool exact = false;
    std::uint64_t seed = 1;
    std::string output;
    std::string format;
    unsigned threads = 1;
    unsigned level_cap = default_level_cap;

    // eval / derivative
    std::string x;
    double tol = 1e-12;
    std::size_t digits = 64;
    std::string pattern;
    std::size_t n = 100;
    double gamma = 1.0 / 3.0;

    // iterate / dim / arclength
    unsigned level = 5;
    std::string levels = "1..10";
    bool square_grid = false;
    std::string metric = "euclidean";

    // chaos / experiment
    std::size_t points = 10000;
    std::size_t burn_in = 30;
    std::size_t chains = 1;
    unsigned mass_level = 0;
    double slack = default_mass_slack;
    std::string kind = "digits";
    std::size_t samples = 200;

    Mode mode() const { return exact ? Mode::exact : Mode::floating; }
    OutputHeader header() const { return {a, mode(), seed}; }
};

class Runner {
public:
    Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void eval() { dispatch([this](auto p) { eval_impl(p); }); }
    void iterate() { dispatch([this](auto p) { iterate_impl(p); }); }
    void dim() { dispatch([this](auto p) { dim_impl(p); }); }
    void arclength() { dispatch([this](auto p) { arclength_impl(p); }); }
    void derivative() { dispatch([this](auto p) { derivative_impl(p); }); }
    void classify() { dispatch([this](auto p) { classify_impl(p); }); }

    void a0() {
        const auto c = find_a0(cfg_.tol);
        text_header();
        report("a0", c.a0);
        report("residual", c.residual);
        report("bracket_lower", c.lower);
        report("bracket_upper", c.upper);
        report("iterations", c.iterations);
    }

    void chaos() {
        const auto p = float_parameter();
        const auto sample = chaos_game(p, cfg_.points, cfg_.burn_in, cfg_.seed, {cfg_.chains, cfg_.threads});
        const std::string fmt = cfg_.format.empty() ? "csv" : cfg_.format;
        if (cfg_.mass_level > 0) {
            const auto r = mass_bound_check(sample, cfg_.mass_level, cfg_.slack);
            text_header();
            report("points", r.points);
            report("grid_level", r.grid_level);
            report("cell_diameter", r.diameter);
            report("exponent", r.exponent);
            report("bound", r.bound);
            report("slack", r.slack);
            report("occupied_cells", r.cells.size());
            report("max_ratio", r.max_ratio);
            report("flagged_cells", r.flagged);
            report("left_branch_mass", left_branch_mass(sample));
            if (cfg_.output.empty()) return;
        }
        with_output([&](std::ostream& os) {
            if (fmt == "svg") {
                auto pts = sample.points;
                std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
                write_svg_polyline(os, cfg_.header(), pts);
            } else {
                write_chaos_csv(os, cfg_.header(), sample);
            }
        });
    }

    void experiment() {
        if (cfg_.kind == "digits") {
            const auto s = digit_frequency_experiment(cfg_.samples, cfg_.digits, cfg_.seed, cfg_.threads);
            text_header();
            report("kind", "digits");
            report("samples", s.samples);
            report("digits", s.n);
            report("mean_ratio", s.mean);
            report("min_ratio", s.min);
            report("max_ratio", s.max);
            report("fraction_within_0.02", s.fraction_within);
        } else if (cfg_.kind == "derivative") {
            const auto p = float_parameter();
            const auto e = derivative_experiment(p, cfg_.samples, cfg_.digits, cfg_.seed, 1e-2, 1e6, cfg_.threads);
            text_header();
            report("kind", "derivative");
            report("streams", e.streams);
            report("digits", e.n);
            report("final_below_1e-2", e.final_below);
            report("ever_above_1e6", e.ever_above);
        } else {
            throw domain_error("unknown experiment kind '" + cfg_.kind + "' (digits | derivative)");
        }
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;

    Rational rational_a() const {
        if (cfg_.a.empty()) throw domain_error("--a is required");
        return parse_rational(cfg_.a);
    }

    Parameter<double> float_parameter() const {
        if (cfg_.a == "a0") return Parameter<double>(critical_a0());
        return Parameter<double>(rational_a().convert_to<double>());
    }

    template <typename F>
    void dispatch(F&& f) {
        if (cfg_.exact) {
            if (cfg_.a == "a0") throw domain_error("a0 is irrational and has no exact-mode value");
            f(Parameter<Rational>(rational_a()));
        } else {
            f(float_parameter());
        }
    }

    template <typename F>
    void with_output(F&& f) {
        if (cfg_.output.empty()) {
            f(out_);
            return;
        }
        std::ofstream file(cfg_.output);
        if (!file) throw domain_error("cannot open output file '" + cfg_.output + "'");
        f(file);
        out_ << "wrote " << cfg_.output << '\n';
    }

    void text_header() { write_header(out_, cfg_.header()); }

    template <typename V>
    void report(const std::string& key, const V& v) {
        out_ << key << " = ";
        if constexpr (std::is_same_v<V, double> || std::is_same_v<V, Rational>)
            out_ << format_number(v);
        else
            out_ << v;
        out_ << '\n';
    }

    static double left_branch_mass(const MassSample& s) {
        std::size_t left = 0;
        for (const auto& p : s.points)
            if (p.x < 1.0 / 3.0) ++left;
        return static_cast<double>(left) / static_cast<double>(s.points.size());
    }

    TernaryExpansion point_digits() const {
        if (cfg_.x.empty()) throw domain_error("--x is required");
        return to_ternary(parse_rational(cfg_.x), cfg_.digits);
    }

    template <typename T>
    void eval_impl(const Parameter<T>& p) {
        const auto x = point_digits();
        const auto v = eval_digit_series(p, x, cfg_.tol);
        text_header();
        report("x", cfg_.x);
        report("value", v.value);
        report("error_bound", v.error_bound);
        report("digits_used", v.digits_used);
    }

    template <typename T>
    void iterate_impl(const Parameter<T>& p) {
        const auto pts = sample_graph(p, cfg_.level, cfg_.level_cap);
        with_output([&](std::ostream& os) {
            if (cfg_.format == "svg")
                write_svg_polyline(os, cfg_.header(), pts);
            else
                write_xy_csv(os, cfg_.header(), pts);
        });
    }

    template <typename T>
    void dim_impl(const Parameter<T>& p) {
        const auto range = parse_levels(cfg_.levels);
        const auto est = dimension_estimate(p, range.lo, range.hi, cfg_.level_cap);
        if (cfg_.format == "csv" || !cfg_.output.empty()) {
            const auto cover = cover_profile(p, range.hi, cfg_.level_cap);
            with_output([&](std::ostream& os) { write_dim_csv(os, cfg_.header(), cover, range.lo); });
            if (cfg_.output.empty()) return;
        }
        text_header();
        report("levels", cfg_.levels);
        report("slope", est.slope);
        report("intercept", est.intercept);
        report("max_residual", est.max_residual);
        report("reference", est.reference);
        report("reference_formula", p.as_double() > 0.5 ? "log3(12a-3)" : "1");
        if (cfg_.square_grid) {
            const auto sq = square_grid_dimension(Parameter<double>(p.as_double()), 4, 10, 12, cfg_.level_cap);
            report("square_grid_levels", "4..10");
            report("square_grid_slope", sq.slope);
        }
    }

    template <typename T>
    void arclength_impl(const Parameter<T>& p) {
        if (cfg_.metric != "euclidean" && cfg_.metric != "manhattan")
            throw domain_error("metric must be euclidean or manhattan");
        const auto prof = arc_length_profile(p, cfg_.level, cfg_.level_cap);
        if (cfg_.format == "csv" || !cfg_.output.empty()) {
            with_output([&](std::ostream& os) { write_arclength_csv(os, cfg_.header(), prof); });
            return;
        }
        text_header();
        report("metric", cfg_.metric);
        out_ << "level," << cfg_.metric << "_length\n";
        for (unsigned i = 0; i <= prof.max_level(); ++i) {
            out_ << i << ',';
            if (cfg_.metric == "euclidean")
                out_ << format_number(prof.euclidean[i]);
            else
                out_ << format_number(prof.manhattan[i]);
            out_ << '\n';
        }
        if (p.as_double() <= 0.5)
            report("bounds", "sqrt(2) <= L_i <= 2 (nondecreasing f_i)");
        else
            report("bounds", "L_i >= (4a-1)^i, unbounded");
    }

    template <typename T>
    void derivative_impl(const Parameter<T>& p) {
        TernaryExpansion x;
        if (!cfg_.pattern.empty()) {
            std::vector<std::uint8_t> digits;
            for (std::size_t j = 0; j < cfg_.n; ++j) {
                const char c = cfg_.pattern[j % cfg_.pattern.size()];
                if (c < '0' || c > '2') throw domain_error("pattern digits must be 0, 1 or 2");
                digits.push_back(static_cast<std::uint8_t>(c - '0'));
            }
            x = TernaryExpansion(std::move(digits));
        } else {
            if (cfg_.x.empty()) throw domain_error("derivative needs --x or --pattern");
            x = to_ternary(parse_rational(cfg_.x), std::max(cfg_.n, cfg_.digits));
        }
        const auto tr = derivative_trace(p, x, cfg_.n);
        if (cfg_.format == "csv") {
            with_output([&](std::ostream& os) {
                write_header(os, cfg_.header());
                os << "m,digit,ones,derivative\n";
                for (std::size_t m = 1; m <= tr.size(); ++m)
                    os << m << ',' << int(tr.digits[m - 1]) << ',' << tr.ones_prefix[m - 1] << ','
                       << format_number(tr.at(m)) << '\n';
            });
            return;
        }
        const auto stats = tr.stats(tr.size());
        text_header();
        report("n", tr.size());
        report("derivative_n", tr.values.back());
        report("max_abs_derivative", tr.max_abs);
        report("ones", stats.ones_count);
        report("ratio", stats.ratio);
        report("gamma_estimate", stats.gamma_estimate);
        report("saturated", tr.saturated ? "true" : "false");
        report("limit_class", to_string(classify_limit(p, stats.gamma_estimate)));
    }

    template <typename T>
    void classify_impl(const Parameter<T>& p) {
        const auto rc = region_classify(p);
        const double a = p.as_double();
        text_header();
        report("region", to_string(rc.region));
        report("description", rc.description());
        report("first_derivative", to_string(rc.first));
        report("second_derivative", to_string(rc.second));
        report("cubic_27a2_minus_54a3", 27 * a * a - 54 * a * a * a);
        report("a0", critical_a0());
        report("gamma", cfg_.gamma);
        report("limit_class", to_string(classify_limit(p, cfg_.gamma)));
        const auto lc = classify_limit(p, cfg_.gamma);
        if (lc == LimitClass::oscillates_on_unit_magnitude && std::abs(cfg_.gamma - 1.0 / 3.0) > 1e-15)
            report("note", "unit growth rate; magnitude does not settle under the generic-digit model");
    }
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Okamoto's function family F_a: evaluation, differentiability and fractal dimension", "okamoto"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    auto common = [&](CLI::App* sub, bool needs_a) {
        auto* opt = sub->add_option("--a", cfg.a, "parameter a in (0,1): decimal, p/q, or a0");
        if (needs_a) opt->required();
        sub->add_flag("--exact", cfg.exact, "exact rational arithmetic");
        sub->add_option("--seed", cfg.seed, "RNG seed (recorded in every output)");
        sub->add_option("-o,--output", cfg.output, "output file");
        sub->add_option("--threads", cfg.threads, "worker threads; output does not depend on it")
            ->check(CLI::PositiveNumber);
        sub->add_option("--level-cap", cfg.level_cap, "maximum construction level");
    };

    std::vector<std::pair<CLI::App*, std::function<void(Runner&)>>> commands;
    auto add = [&](const char* name, const char* help, bool needs_a, std::function<void(Runner&)> fn) {
        auto* sub = app.add_subcommand(name, help);
        common(sub, needs_a);
        commands.emplace_back(sub, std::move(fn));
        return sub;
    };

    auto* eval = add("eval", "evaluate F_a(x) with a certified error bound", true, &Runner::eval);
    eval->add_option("--x", cfg.x, "x in [0,1]: decimal, p/q or k/3^i")->required();
    eval->add_option("--tol", cfg.tol, "error tolerance");
    eval->add_option("--digits", cfg.digits, "ternary digits of x to use");

    auto* iterate = add("iterate", "vertices of the level-i iteration f_i", true, &Runner::iterate);
    iterate->add_option("--level", cfg.level, "construction level");
    iterate->add_option("--format", cfg.format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));

    auto* dim = add("dim", "box-counting dimension from column-area covers", true, &Runner::dim);
    dim->add_option("--levels", cfg.levels, "fit levels lo..hi");
    dim->add_flag("--square-grid", cfg.square_grid, "also report the square-grid cross-check slope");
    dim->add_option("--format", cfg.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

    auto* arc = add("arclength", "polyline lengths of f_0 .. f_i", true, &Runner::arclength);
    arc->add_option("--level", cfg.level, "maximum level");
    arc->add_option("--metric", cfg.metric, "euclidean | manhattan");
    arc->add_option("--format", cfg.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

    auto* der = add("derivative", "slope sequence D_1 .. D_n at x", true, &Runner::derivative);
    der->add_option("--x", cfg.x, "x in [0,1]");
    der->add_option("--pattern", cfg.pattern, "repeat this digit block instead of --x, e.g. 012");
    der->add_option("--n", cfg.n, "trace length");
    der->add_option("--digits", cfg.digits, "ternary digits of x");
    der->add_option("--format", cfg.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

    auto* cls = add("classify", "differentiability region of a", true, &Runner::classify);
    cls->add_option("--gamma", cfg.gamma, "fraction of ones used for the limit class");

    auto* a0 = add("a0", "critical value a0 by bisection", false, &Runner::a0);
    a0->add_option("--tol", cfg.tol, "bracket width");

    auto* chaos = add("chaos", "chaos-game sample of the natural measure", true, &Runner::chaos);
    chaos->add_option("--n", cfg.points, "points to record");
    chaos->add_option("--burn-in", cfg.burn_in, "steps discarded first");
    chaos->add_option("--chains", cfg.chains, "independent chains");
    chaos->add_option("--mass-level", cfg.mass_level, "run the mass-bound check on this grid level");
    chaos->add_option("--slack", cfg.slack, "mass-bound slack");
    chaos->add_option("--format", cfg.format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));

    auto* exp = add("experiment", "seeded statistical experiments", false, &Runner::experiment);
    exp->add_option("--kind", cfg.kind, "digits | derivative");
    exp->add_option("--samples", cfg.samples, "samples or streams");
    exp->add_option("--digits", cfg.digits, "digits per sample");

    cfg.tol = 1e-12;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    // a0 defaults to a tighter bracket than the evaluation tolerance
    if (a0->parsed() && a0->count("--tol") == 0) cfg.tol = 1e-14;
    if (exp->parsed() && exp->count("--digits") == 0) cfg.digits = 3000;

    try {
        Runner runner(cfg, out);
        for (auto& [sub, fn] : commands)
            if (sub->parsed()) fn(runner);
        return ok;
    } catch (const precision_error& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace okamoto::cli
