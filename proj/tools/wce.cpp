// Command-line front end: builds W-algebra generators and constraint
// operators for ADE singularities, solves the constraints for the total
// descendant potential, and runs the structural verification suites.

#include "wce/selfcheck.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace wce;

namespace {

struct CommonOpts {
    std::string type;
    std::string strategy = "kernel_solve";
    unsigned conductor = 0;
    std::string cache_dir;
    std::string format = "table";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--type", o.type, "root system, e.g. A1, A2, D4")->required();
    cmd->add_option("--strategy", o.strategy, "builtin | kernel_solve | mode_construction");
    cmd->add_option("--conductor", o.conductor, "cyclotomic conductor override");
    cmd->add_option("--cache-dir", o.cache_dir, "cache directory (default $WCE_CACHE_DIR)");
    cmd->add_option("--format", o.format, "json | table");
}

std::filesystem::path cache_root(const CommonOpts& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* env = std::getenv("WCE_CACHE_DIR")) return env;
    return ".wce-cache";
}

GenStrategy parse_strategy(const std::string& s) {
    auto st = strategy_from_name(s);
    if (!st) throw CLI::ValidationError("--strategy", "unknown strategy " + s);
    return *st;
}

std::string cache_tag(const RootDatum& d, GenStrategy st) {
    std::ostringstream os;
    os << d.family << d.rank << "-c" << d.conductor << "-" << strategy_name(st);
    return os.str();
}

/// Builds or loads the normalized generators; returns them with a flag saying
/// whether they came from the cache.
std::vector<Poly> load_generators(const RootDatum& d, GenStrategy st,
                                  const std::filesystem::path& root, bool* from_cache = nullptr) {
    auto path = root / ("gens-" + cache_tag(d, st) + ".txt");
    if (auto body = cache_read(path)) {
        if (auto gens = generators_from_text(d, st, *body)) {
            if (from_cache) *from_cache = true;
            return *gens;
        }
    }
    auto gens = w_generators(d, st);
    cache_write(path, generators_to_text(d, st, gens));
    if (from_cache) *from_cache = false;
    return gens;
}

std::string cyc_table_cell(const Cyc& c) {
    auto f = c.to_float();
    std::ostringstream os;
    os << c.pretty() << "  (~" << f.real();
    if (std::abs(f.imag()) > 1e-12) os << (f.imag() > 0 ? "+" : "") << f.imag() << "i";
    os << ")";
    return os.str();
}

const char* kVNames[] = {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"};
const char* kFjrwNames[] = {"t_1", "t_X", "t_Y", "t_X2"};

int cmd_generators(const CommonOpts& o, bool verify_flag) {
    auto d = build_root_datum(o.type, o.conductor);
    auto st = parse_strategy(o.strategy);
    bool from_cache = false;
    auto gens = load_generators(d, st, cache_root(o), &from_cache);

    bool all_ok = true;
    json jout = generators_to_json(d, st, gens);
    json verdicts = json::array();
    for (unsigned i = 1; i <= d.rank; ++i) {
        auto rep = verify_in_w(d, gens[i - 1]);
        std::size_t res_terms = 0;
        for (const auto& r : rep.residuals) res_terms += r.size();
        verdicts.push_back({{"generator", i},
                            {"degree", d.exponents[i - 1] + 1},
                            {"terms", gens[i - 1].size()},
                            {"screening_residuals_zero", rep.in_w},
                            {"residual_terms", res_terms}});
        if (!rep.in_w) all_ok = false;
    }
    jout["verification"] = verdicts;
    jout["cache_hit"] = from_cache;

    if (o.format == "json") {
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << "generators " << o.type << " strategy " << strategy_name(st)
                  << (from_cache ? " (cached)" : "") << "\n";
        for (const auto& v : verdicts)
            std::cout << "  w_" << v["generator"] << ": degree " << v["degree"] << ", "
                      << v["terms"] << " terms, screenings "
                      << (v["screening_residuals_zero"].get<bool>() ? "all zero"
                                                                    : "NONZERO (fails)")
                      << "\n";
    }
    (void)verify_flag;  // verification always runs; the flag is accepted for scripts
    return all_ok ? 0 : 1;
}

int cmd_tau(const CommonOpts& o, long long max_degree_num, const std::string& goal,
            const std::string& mode, bool with_log) {
    auto d = build_root_datum(o.type, o.conductor);
    auto st = parse_strategy(o.strategy);
    auto root = cache_root(o);
    auto gens = load_generators(d, st, root);

    if (mode != "frontier" && mode != "goal_directed")
        throw CLI::ValidationError("--mode", "expected frontier or goal_directed");
    Monomial goal_mono;
    if (!goal.empty()) goal_mono = goal_from_text(goal);
    long long trunc = max_degree_num;
    if (trunc == 0 && !goal.empty()) trunc = tvar::mono_deg_num(d, goal_mono);
    if (trunc <= 0) throw CLI::ValidationError("--max-degree-num", "a positive bound is required");

    TauSolver solver(d, gens, trunc);
    solver.set_operator_cache(
        [&](unsigned i, unsigned p) -> std::optional<TwistedOperator> {
            auto path = root / ("op-" + cache_tag(d, st) + "-i" + std::to_string(i) + "-m" +
                                std::to_string(p) + "-w" + std::to_string(trunc) + ".txt");
            if (auto body = cache_read(path)) return operator_from_text(d, st, i, p, *body);
            return std::nullopt;
        },
        [&](const TwistedOperator& W) {
            auto path = root / ("op-" + cache_tag(d, st) + "-i" + std::to_string(W.gen_index) +
                                "-m" + std::to_string(W.mode) + "-w" + std::to_string(trunc) +
                                ".txt");
            cache_write(path, operator_to_text(d, st, W));
        });

    if (!goal.empty() && mode == "goal_directed") {
        solver.coeff(goal_mono);
    } else {
        solver.solve_frontier();
        if (!goal.empty()) solver.coeff(goal_mono);
    }

    auto series = solver.snapshot();
    {
        auto path = root / ("tau-" + cache_tag(d, st) + "-w" + std::to_string(trunc) + ".json");
        cache_write(path, series_to_json(d, series).dump(2));
    }

    if (!goal.empty()) {
        const Cyc val = solver.stored(goal_mono);
        if (o.format == "json") {
            json j{{"goal", goal}, {"value", val.to_string()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "tau[" << goal << "] = " << cyc_table_cell(val) << "\n";
        }
        return 0;
    }

    if (with_log) {
        auto logs = log_series(d, series);
        json j = series_to_json(d, logs.base, &logs.genus);
        if (o.format == "json") {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "log tau coefficients (degree <= " << trunc << "/" << d.h << "):\n";
            for (const auto& e : j["entries"]) {
                std::cout << "  ";
                std::string sep;
                for (const auto& f : e["monomial"]) {
                    std::cout << sep << "t[" << f[0] << "," << f[1] << "]";
                    if (f[2].get<unsigned>() > 1) std::cout << "^" << f[2];
                    sep = " ";
                }
                if (e["monomial"].empty()) std::cout << "1";
                std::cout << " = " << cyc_table_cell(Cyc::from_string(e["value"]))
                          << "  [genus " << e["genus"] << "]\n";
            }
        }
        return 0;
    }

    json j = series_to_json(d, series);
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "tau coefficients (" << series.coeffs.size() << " monomials, degree <= "
                  << trunc << "/" << d.h << ")\n";
        for (const auto& e : j["entries"]) {
            std::cout << "  ";
            std::string sep;
            for (const auto& f : e["monomial"]) {
                std::cout << sep << "t[" << f[0] << "," << f[1] << "]";
                if (f[2].get<unsigned>() > 1) std::cout << "^" << f[2];
                sep = " ";
            }
            if (e["monomial"].empty()) std::cout << "1";
            std::cout << " = " << cyc_table_cell(Cyc::from_string(e["value"])) << "\n";
        }
    }
    return 0;
}

int cmd_potential(const CommonOpts& o, const std::string& form_name, bool no_reference) {
    auto d = build_root_datum(o.type, o.conductor);
    auto st = parse_strategy(o.strategy);
    auto form = potential_form_from_name(form_name);
    if (!form) throw CLI::ValidationError("--form", "expected paper, dubrovin or fjrw");
    if (*form != PotentialForm::Paper && !(d.family == 'D' && d.rank == 4))
        throw CLI::ValidationError("--form", "coordinate forms are defined for D4");

    auto gens = load_generators(d, st, cache_root(o));
    long long trunc = static_cast<long long>(d.h) * d.h - 1;  // deepest quasi-homogeneous v-monomial
    TauSolver solver(d, gens, trunc);
    // all small-phase-space monomials within the truncation
    {
        std::function<void(unsigned, long long, Monomial&)> rec = [&](unsigned i, long long left,
                                                                      Monomial& cur) {
            if (i > d.rank) {
                if (!cur.empty()) solver.coeff(cur);
                return;
            }
            long long dn = d.exponents[i - 1];
            rec(i + 1, left, cur);
            Monomial next = cur;
            for (long long e = 1; e * dn <= left; ++e) {
                next.bump(tvar::var(i, 0));
                rec(i + 1, left - e * dn, next);
            }
        };
        Monomial cur;
        rec(1, trunc, cur);
    }
    auto logs = log_series(d, solver.snapshot());
    Poly pot = frobenius_potential(logs);

    const char* const* names = kVNames;
    Poly shown = pot;
    std::optional<Poly> reference;
    if (d.family == 'D' && d.rank == 4) {
        switch (*form) {
            case PotentialForm::Paper:
                reference = reference_potential_d4(d);
                break;
            case PotentialForm::Dubrovin:
                shown = dubrovin_form_d4(d, pot);
                reference = reference_potential_d4_dubrovin(d);
                break;
            case PotentialForm::Fjrw:
                shown = fjrw_form_d4(d, pot);
                reference = reference_potential_d4_fjrw(d);
                names = kFjrwNames;
                break;
        }
    }
    if (no_reference) reference.reset();

    std::string why;
    bool wdvv = wdvv_check(d, pot, &why);
    bool qh = quasi_homogeneous(d, pot);
    PotentialComparison cmp;
    if (reference) cmp = compare_potentials(shown, *reference, names);

    if (o.format == "json") {
        json terms = json::array();
        for (const auto& [m, c] : shown)
            terms.push_back({potential_monomial_name(m, names), c.to_string()});
        json j{{"type", o.type},
               {"form", form_name},
               {"potential", terms},
               {"wdvv", wdvv},
               {"quasi_homogeneous", qh}};
        if (reference) {
            j["reference_match"] = cmp.match;
            j["differences"] = cmp.differences;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "F(" << o.type << ", " << form_name << " form):\n";
        for (const auto& [m, c] : shown)
            std::cout << "  " << potential_monomial_name(m, names) << " : " << cyc_table_cell(c)
                      << "\n";
        std::cout << "WDVV associativity: " << (wdvv ? "true" : ("FALSE (" + why + ")")) << "\n";
        std::cout << "quasi-homogeneous: " << (qh ? "true" : "FALSE") << "\n";
        if (reference) {
            std::cout << "reference comparison: " << (cmp.match ? "exact match" : "MISMATCH")
                      << "\n";
            for (const auto& diff : cmp.differences) std::cout << "  " << diff << "\n";
        }
    }
    bool ok = wdvv && qh && (!reference || cmp.match);
    return ok ? 0 : 1;
}

int cmd_operators(const CommonOpts& o, const std::string& which, long long window_num) {
    auto d = build_root_datum(o.type, o.conductor);
    auto st = parse_strategy(o.strategy);
    auto gens = load_generators(d, st, cache_root(o));
    Monomial wm = goal_from_text(which);
    if (wm.f.size() != 1 || wm.f[0].second != 1)
        throw CLI::ValidationError("--goal", "expected a single (i,m) pair");
    unsigned i = tvar::idx(wm.f[0].first), m = tvar::lvl(wm.f[0].first);
    if (window_num <= 0) window_num = 2 * static_cast<long long>(d.h);
    auto W = w_operator(d, gens, i, m, window_num, window_num);
    if (o.format == "json") {
        std::cout << operator_to_json(d, st, W).dump(2) << "\n";
    } else {
        std::cout << operator_to_text(d, st, W);
    }
    return 0;
}

int cmd_selfcheck(const CommonOpts& o, bool quick) {
    auto d = build_root_datum(o.type, o.conductor);
    auto st = parse_strategy(o.strategy);
    auto results = run_selfcheck(d, st, quick);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " - " << r.detail;
        std::cout << "\n";
        ok = ok && r.pass;
    }
    std::cout << (ok ? "selfcheck passed" : "selfcheck FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"W-constraint engine for ADE singularities"};
    app.require_subcommand(1);

    CommonOpts og, ot, op, oo, os;
    bool verify_flag = false, with_log = false, no_reference = false, quick = false;
    long long max_deg = 0, window = 0;
    std::string goal, mode = "goal_directed", form = "paper", opgoal;

    auto* g = app.add_subcommand("generators", "build and verify W-algebra generators");
    add_common(g, og);
    g->add_flag("--verify", verify_flag, "verify screening residuals (always on)");

    auto* t = app.add_subcommand("tau", "solve the W-constraints for tau");
    add_common(t, ot);
    t->add_option("--max-degree-num", max_deg, "degree bound, numerator over h");
    t->add_option("--goal", goal, "target monomial, e.g. \"(1,0)^2 (4,0)\"");
    t->add_option("--mode", mode, "frontier | goal_directed");
    t->add_flag("--log", with_log, "emit log tau with genus tags");

    auto* p = app.add_subcommand("potential", "genus-0 small-phase-space potential");
    add_common(p, op);
    p->add_option("--form", form, "paper | dubrovin | fjrw");
    p->add_flag("--no-reference", no_reference, "skip the stored reference comparison");

    auto* ops = app.add_subcommand("operators", "dump W_{i,m} terms in a window");
    add_common(ops, oo);
    ops->add_option("--goal", opgoal, "operator index pair \"(i,m)\"")->required();
    ops->add_option("--max-degree-num", window, "window bound, numerator over h");

    auto* s = app.add_subcommand("selfcheck", "run the structural invariant suites");
    add_common(s, os);
    s->add_flag("--quick", quick, "reduced truncation degrees");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) return cmd_generators(og, verify_flag);
        if (t->parsed()) return cmd_tau(ot, max_deg, goal, mode, with_log);
        if (p->parsed()) return cmd_potential(op, form, no_reference);
        if (ops->parsed()) return cmd_operators(oo, opgoal, window);
        if (s->parsed()) return cmd_selfcheck(os, quick);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
