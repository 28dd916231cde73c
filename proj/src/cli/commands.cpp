#include "cellcast/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>

#include "cellcast/analytic.hpp"
#include "cellcast/economics.hpp"
#include "cellcast/error.hpp"
#include "cellcast/geometry.hpp"
#include "cellcast/log.hpp"
#include "cellcast/montecarlo.hpp"
#include "cellcast/scheduler.hpp"
#include "cellcast/table.hpp"

namespace cellcast::cli {

std::vector<double> alpha_grid(const RunConfig& cfg)
{
    if (cfg.alphas)
        return *cfg.alphas;
    std::vector<double> grid;
    const double inv = 1.0 / cfg.alpha_step;
    const auto n = std::llround(inv);
    if (std::abs(static_cast<double>(n) * cfg.alpha_step - 1.0) < 1e-9) {
        for (long long i = 0; i <= n; ++i)
            grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    } else {
        for (long long i = 0; static_cast<double>(i) * cfg.alpha_step <= 1.0; ++i)
            grid.push_back(static_cast<double>(i) * cfg.alpha_step);
    }
    return grid;
}

namespace {

std::optional<EconParams> econ_of(const RunConfig& cfg)
{
    if (!cfg.vr || !cfg.cb)
        return std::nullopt;
    return EconParams(*cfg.vr, *cfg.cb, cfg.beta);
}

SimPlan plan_of(const RunConfig& cfg, double alpha)
{
    return SimPlan{ModelParams(cfg.lambda_b, cfg.lambda_u, alpha), Window(cfg.window), cfg.reps,
                   cfg.seed, cfg.override_window, cfg.threads};
}

} // namespace

void cmd_analytic(const RunConfig& cfg, std::ostream& out)
{
    const auto econ = econ_of(cfg);
    out << "alpha,analytic_saved,analytic_wasted,cr,decision\n";
    for (double a : alpha_grid(cfg)) {
        const ModelParams m(cfg.lambda_b, cfg.lambda_u, a);
        std::string cr, decision;
        if (econ) {
            const auto d = decide(m, *econ);
            cr = format_real(d.cost_reduction);
            decision = to_string(d.delivery);
        }
        write_row(out, {format_real(a), format_real(avg_saved(m)), format_real(avg_wasted(m)), cr,
                        decision});
    }
}

bool cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& summary)
{
    const std::vector<double> alphas =
        cfg.alphas ? *cfg.alphas : std::vector<double>{0.0, 0.1, 1.0 / 3.0, 0.5, 1.0};
    const SimPlan base = plan_of(cfg, 0.0);
    const auto rows = sweep_alpha(base, alphas);
    write_sweep_csv(out, rows);

    bool all_pass = true;
    for (const auto& r : rows) {
        const double dw = std::abs(r.report.wasted_mean - r.analytic_wasted);
        const double ds = std::abs(r.report.saved_mean - r.analytic_saved);
        const double tv = empirical_pmf_distance(r.report, r.report.params);
        const bool pass = dw <= kWastedTolerance && ds <= kSavedTolerance && tv <= kPmfDistanceTolerance;
        all_pass = all_pass && pass;
        summary << (pass ? "PASS" : "FAIL") << " alpha=" << format_real(r.alpha)
                << " wasted_err=" << format_real(dw) << " (tol " << format_real(kWastedTolerance)
                << ") saved_err=" << format_real(ds) << " (tol " << format_real(kSavedTolerance)
                << ") pmf_tv=" << format_real(tv) << " (tol " << format_real(kPmfDistanceTolerance)
                << ") cells=" << r.report.cells_observed << '\n';
    }
    return all_pass;
}

void cmd_snapshot(const RunConfig& cfg, std::ostream& out)
{
    const Window window(cfg.window);
    if (cfg.lambda_b * window.area() < kMinExpectedCells)
        log::warn("snapshot window holds about " + format_real(cfg.lambda_b * window.area()) +
                  " cells, below the recommended " + format_real(kMinExpectedCells));
    const RandomStream root(cfg.seed, 0);
    RandomStream bs_rng = root.substream(0);
    RandomStream mu_rng = root.substream(1);
    const auto bss = sample_bs_nonempty(cfg.lambda_b, window, bs_rng);
    const PointPattern users = cfg.lambda_u > 0.0 ? sample_ppp(cfg.lambda_u, window, Role::MU, mu_rng)
                                                  : PointPattern(Role::MU, window);
    const auto census = assign_nearest(users, bss);
    const auto rows = snapshot_export(bss, users, census);
    write_snapshot_csv(out, rows);
}

namespace {

std::ofstream open_output(const std::filesystem::path& p)
{
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    return f;
}

} // namespace

void cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream& summary)
{
    std::vector<ContentId> slots;
    switch (cfg.scheme) {
    case Scheme::Equal:
        slots = schedule_equal(cfg.catalog, cfg.top_n, cfg.period).slots;
        break;
    case Scheme::Weighted:
        slots = schedule_weighted(cfg.catalog, cfg.top_n, cfg.period).slots;
        break;
    case Scheme::Vote: {
        RandomStream rng(cfg.seed, 0);
        const VotingConfig vc{cfg.voters, cfg.rounds, cfg.zipf, cfg.exclude_previous};
        const auto rounds = run_voting(cfg.catalog, vc, rng);
        slots = voting_playlist(rounds);
        if (cfg.transcript) {
            auto f = open_output(*cfg.transcript);
            write_transcript_csv(f, rounds);
        }
        break;
    }
    }
    write_schedule_csv(out, slots);

    const auto econ = econ_of(cfg);
    if (!econ)
        return;
    // Demand model: the most popular content draws the configured rating
    // (first --alpha value, default 1) and others scale with popularity.
    const double top_alpha = cfg.alphas ? cfg.alphas->front() : 1.0;
    double max_pop = 0.0;
    for (const auto& c : cfg.catalog)
        max_pop = std::max(max_pop, c.popularity);
    std::map<ContentId, double> demand;
    for (const auto& c : cfg.catalog)
        demand[c.id] = max_pop > 0.0 ? top_alpha * c.popularity / max_pop : 0.0;
    const ModelParams model(cfg.lambda_b, cfg.lambda_u, 0.0);
    const auto eff = schedule_efficiency(slots, demand, model, *econ);
    summary << "total_cr=" << format_real(eff.total) << " slots=" << slots.size() << '\n';
    if (cfg.efficiency) {
        auto f = open_output(*cfg.efficiency);
        f << "slot,content_id,alpha_c,cr\n";
        for (std::size_t i = 0; i < slots.size(); ++i)
            write_row(f, {std::to_string(i), std::to_string(slots[i]),
                          format_real(demand.at(slots[i])), format_real(eff.per_slot[i])});
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Broadcast vs. unicast cost model for cellular networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> flag_values;
    std::map<std::string, bool> switch_values;
    app.add_option("--config", config_path, "key = value configuration file");

    static const std::vector<std::string> switches = {"override-window", "exclude-previous"};
    static const std::map<std::string, std::string> help = {
        {"seed", "master seed (default 1)"},
        {"alpha", "comma list of ratings in [0,1]; fractions like 1/3 accepted"},
        {"alpha-step", "grid step for analytic when --alpha is absent (default 0.05)"},
        {"lambda-b", "BS density (default 1)"},
        {"lambda-u", "MU density (default 3)"},
        {"vr", "value of one radio resource"},
        {"cb", "broadcast implementation cost per cell"},
        {"beta", "fraction of subscribers that switch to broadcast (default 1)"},
        {"window", "torus side length (default 40)"},
        {"reps", "Monte Carlo replications (default 100)"},
        {"out", "output file instead of stdout"},
        {"override-window", "allow windows holding fewer than 100 expected cells"},
        {"threads", "worker threads, 0 = all cores"},
        {"scheme", "equal | weighted | vote"},
        {"top-n", "contents broadcast per period (default 5)"},
        {"period", "slots per period (default 5)"},
        {"popularity", "comma list of popularity weights, ids 0..n-1"},
        {"voters", "ballots per voting round (default 10000)"},
        {"rounds", "voting rounds (default 100)"},
        {"zipf", "Zipf exponent of voter preference (default 1)"},
        {"exclude-previous", "last winner cannot win the next round"},
        {"transcript", "voting transcript CSV path"},
        {"efficiency", "per-slot cost reduction CSV path"},
    };
    for (const auto& key : known_keys()) {
        const std::string& text = help.at(key);
        if (std::find(switches.begin(), switches.end(), key) != switches.end())
            app.add_flag("--" + key, switch_values[key], text);
        else
            app.add_option("--" + key, flag_values[key], text);
    }

    auto* analytic = app.add_subcommand("analytic", "closed-form saved/wasted table");
    auto* validate = app.add_subcommand("validate", "Monte Carlo cross-validation");
    auto* snapshot = app.add_subcommand("snapshot", "one network realization as points");
    auto* schedule = app.add_subcommand("schedule", "periodic broadcasting schedule");
    for (auto* sub : {analytic, validate, snapshot, schedule})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunConfig cfg;
    try {
        KeyValueConfig kv;
        if (!config_path.empty())
            kv = KeyValueConfig::load(config_path);
        for (const auto& key : known_keys()) {
            auto* opt = app.get_option("--" + key);
            if (opt->count() == 0)
                continue;
            if (auto it = switch_values.find(key); it != switch_values.end())
                kv.set(key, it->second ? "true" : "false", "--" + key);
            else
                kv.set(key, flag_values[key], "--" + key);
        }
        cfg = resolve(kv);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        std::unique_ptr<std::ofstream> file;
        std::ostream* sink = &out;
        if (cfg.out) {
            file = std::make_unique<std::ofstream>(open_output(*cfg.out));
            sink = file.get();
        }
        if (analytic->parsed()) {
            cmd_analytic(cfg, *sink);
        } else if (validate->parsed()) {
            try {
                plan_of(cfg, 0.0).validate();
            } catch (const ParameterError& e) {
                err << "config error: " << e.what() << " (--override-window)\n";
                return kExitConfig;
            }
            if (!cmd_validate(cfg, *sink, err))
                return kExitValidation;
        } else if (snapshot->parsed()) {
            cmd_snapshot(cfg, *sink);
        } else if (schedule->parsed()) {
            cmd_schedule(cfg, *sink, err);
        }
        sink->flush();
        if (!*sink) {
            err << "error: failed writing output\n";
            return kExitFailure;
        }
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace cellcast::cli
