#include "irrsim/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "irrsim/draw.hpp"
#include "irrsim/errors.hpp"
#include "irrsim/fitting.hpp"
#include "irrsim/io.hpp"
#include "irrsim/montecarlo.hpp"

namespace irrsim {
namespace {

namespace fs = std::filesystem;

struct ParamsArgs {
    std::string file;
    std::optional<double> beta0, beta1, beta2, rho, elo_mean, elo_sd;
};

void add_params_options(CLI::App& cmd, ParamsArgs& a) {
    auto* file = cmd.add_option("--params", a.file, "Fitted parameter file written by `fit`");
    auto* b0 = cmd.add_option("--beta0", a.beta0, "Intercept");
    cmd.add_option("--beta1", a.beta1, "Standardised Elo-difference coefficient");
    cmd.add_option("--beta2", a.beta2, "Home effect");
    cmd.add_option("--rho", a.rho, "Dixon-Coles dependence (default 0)");
    cmd.add_option("--elo-mean", a.elo_mean, "Standardisation mean (default: teams file, 8 appearances each)");
    cmd.add_option("--elo-sd", a.elo_sd, "Standardisation SD (default: teams file, 8 appearances each)");
    file->excludes(b0);
}

struct ResolvedParams {
    ModelParams params;
    ModelKind kind;
    std::string source;
};

ResolvedParams resolve_params(const ParamsArgs& a, const std::vector<TeamRecord>& teams) {
    if (!a.file.empty()) {
        if (a.beta1 || a.beta2 || a.elo_mean || a.elo_sd)
            throw CLI::ValidationError("--params cannot be combined with literal coefficients");
        auto f = io::read_params(fs::path(a.file));
        if (a.rho) f.params.rho = *a.rho;
        return {f.params, f.kind, "file:" + a.file};
    }
    if (!a.beta0 || !a.beta1 || !a.beta2)
        throw CLI::ValidationError("give --params or all of --beta0 --beta1 --beta2");
    if (a.elo_mean.has_value() != a.elo_sd.has_value())
        throw CLI::ValidationError("--elo-mean and --elo-sd go together");
    EloScale scale;
    std::string source = "literals";
    if (a.elo_mean) {
        scale = {*a.elo_mean, *a.elo_sd};
    } else {
        scale = league_phase_elo_scale(teams);
        source += "+league-phase-scale";
    }
    const double rho = a.rho.value_or(0.0);
    return {{*a.beta0, *a.beta1, *a.beta2, rho, scale.mean, scale.sd},
            rho == 0.0 ? ModelKind::Independent : ModelKind::DixonColes,
            source};
}

struct SimArgs {
    std::string teams;
    std::string schedule;
    bool random_draws = false;
    std::int64_t runs = 10000;
    std::uint64_t seed = 1;
    int max_goals = kDefaultMaxGoals;
    unsigned threads = 0;
    std::string out_dir;
    std::string conditioning = "per-run";
};

void add_sim_options(CLI::App& cmd, SimArgs& s) {
    cmd.add_option("--teams", s.teams, "Teams CSV")->required()->check(CLI::ExistingFile);
    cmd.add_option("--runs", s.runs, "Simulated league phases")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--seed", s.seed, "Master seed (64-bit unsigned)")->capture_default_str();
    cmd.add_option("--max-goals", s.max_goals, "Scoreline grid truncation")->capture_default_str()->check(
        CLI::Range(kMinMaxGoals, 50));
    cmd.add_option("--threads", s.threads, "Worker threads (0 = all cores); does not change results")
        ->capture_default_str();
    cmd.add_option("--conditioning", s.conditioning, "per-run | pooled estimate of P(qualify | points)")
        ->capture_default_str()
        ->check(CLI::IsMember({"per-run", "pooled"}));
    cmd.add_option("--out", s.out_dir, "Output directory")->required();
}

SimConfig to_config(const SimArgs& s) {
    SimConfig c;
    c.n_runs = s.runs;
    c.master_seed = s.seed;
    c.max_goals = s.max_goals;
    c.threads = s.threads;
    c.conditioning = *conditioning_from_string(s.conditioning);
    return c;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--rho-grid", "expected start:stop:step, got '" + spec + "'");
        }
    }
    if (parts.size() != 3) throw CLI::ValidationError("--rho-grid", "expected start:stop:step, got '" + spec + "'");
    return make_rho_grid(parts[0], parts[1], parts[2]);
}

int cmd_fit(const std::string& matches_path, const std::string& model, const std::string& out_path,
            int max_iter, std::ostream& out, std::ostream& err) {
    const auto matches = io::parse_matches_csv(fs::path(matches_path));
    const auto kind = *model_kind_from_string(model);
    FitOptions opts;
    opts.max_iterations = max_iter;
    const FitResult res = fit(matches, kind, opts);
    std::ostringstream text;
    io::write_params(io::params_file_from(res), text);
    if (out_path.empty() || out_path == "-")
        out << text.str();
    else
        write_text(out_path, text.str());
    if (!res.converged) err << "warning: optimiser hit the iteration limit before converging\n";
    return kExitOk;
}

io::RunManifest base_manifest(const std::string& command, const SimArgs& s, const ResolvedParams& rp) {
    io::RunManifest m;
    m.command = command;
    m.inputs.emplace_back("teams", s.teams);
    m.params_source = rp.source;
    m.kind = rp.kind;
    m.params = rp.params;
    m.config = to_config(s);
    m.output = s.out_dir;
    return m;
}

int cmd_simulate(const SimArgs& s, const ParamsArgs& pa, std::ostream& out) {
    const auto teams = io::parse_teams_csv(fs::path(s.teams));
    const auto rp = resolve_params(pa, teams);
    ScheduleSource source;
    if (s.random_draws)
        source = RandomSchedules{PotAssignment::from_teams(teams)};
    else
        source = FixedSchedule{io::parse_schedule_csv(fs::path(s.schedule))};
    const SimConfig config = to_config(s);
    const CurveSet curves = threshold_curve(teams, source, rp.params, config);

    fs::create_directories(s.out_dir);
    const ThresholdCurve both[] = {curves.direct, curves.playoff};
    std::ostringstream csv;
    io::emit_curve_csv(both, csv);
    write_text(fs::path(s.out_dir) / "curves.csv", csv.str());

    auto m = base_manifest("simulate", s, rp);
    if (!s.random_draws) m.inputs.emplace_back("schedule", s.schedule);
    m.schedule_mode = s.random_draws ? "random-draws" : "fixed";
    if (!pa.file.empty()) m.inputs.emplace_back("params", pa.file);
    std::ostringstream man;
    io::write_manifest(m, man);
    man << "avg_draws=" << io::format_double(curves.avg_draws) << '\n';
    write_text(fs::path(s.out_dir) / "manifest.txt", man.str());

    char line[96];
    std::snprintf(line, sizeof line, "average draws per league phase: %.2f\n", curves.avg_draws);
    out << line << "wrote " << (fs::path(s.out_dir) / "curves.csv").string() << '\n';
    return kExitOk;
}

int cmd_sweep(const SimArgs& s, const ParamsArgs& pa, const std::string& grid_spec, std::ostream& out) {
    const auto teams = io::parse_teams_csv(fs::path(s.teams));
    const auto rp = resolve_params(pa, teams);
    const auto grid = parse_grid(grid_spec);
    const SweepResult sweep =
        rho_sweep(teams, PotAssignment::from_teams(teams), rp.params, grid, to_config(s));

    fs::create_directories(s.out_dir);
    std::ostringstream draws, curves;
    io::emit_sweep_draws_csv(sweep, draws);
    io::emit_sweep_curves_csv(sweep, curves);
    write_text(fs::path(s.out_dir) / "sweep_draws.csv", draws.str());
    write_text(fs::path(s.out_dir) / "sweep_curves.csv", curves.str());

    auto m = base_manifest("sweep", s, rp);
    m.schedule_mode = "random-draws";
    if (!pa.file.empty()) m.inputs.emplace_back("params", pa.file);
    m.extra = "rho_grid=" + grid_spec + "\n";
    std::ostringstream man;
    io::write_manifest(m, man);
    write_text(fs::path(s.out_dir) / "manifest.txt", man.str());

    out << draws.str();
    return kExitOk;
}

int cmd_draw(const std::string& teams_path, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const auto teams = io::parse_teams_csv(fs::path(teams_path));
    Rng rng(seed);
    const Schedule s = generate_schedule(PotAssignment::from_teams(teams), rng);
    std::ostringstream csv;
    io::write_schedule_csv(s, csv);
    if (out_path.empty() || out_path == "-")
        out << csv.str();
    else
        write_text(out_path, csv.str());
    return kExitOk;
}

int cmd_stats(const std::string& matches_path, std::string label, std::ostream& out) {
    const auto matches = io::parse_matches_csv(fs::path(matches_path));
    if (label.empty()) label = fs::path(matches_path).stem().string();
    io::write_summary_table(summarize_matches(matches), label, out);
    return kExitOk;
}

int cmd_validate(const std::string& teams_path, const std::string& schedule_path, std::ostream& out) {
    const auto teams = io::parse_teams_csv(fs::path(teams_path));
    const auto schedule = io::parse_schedule_csv(fs::path(schedule_path));
    const auto violations = validate_schedule(schedule, PotAssignment::from_teams(teams));
    for (const auto& v : violations)
        out << "violation," << to_string(v.kind) << ',' << v.team_id << ',' << v.other_id << ',' << v.detail << '\n';
    for (const auto& n : association_notes(schedule, teams))
        out << "note," << to_string(n.kind) << ',' << n.team_id << ',' << n.other_id << ',' << n.detail << '\n';
    out << (violations.empty() ? "valid" : "invalid") << ": " << schedule.fixtures.size() << " fixtures, "
        << violations.size() << " violations\n";
    return violations.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qualification-threshold simulator for 36-team league phases", "irrsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::artifact_version());

    std::string matches_path, model = "independent", fit_out;
    int max_iter = 10000;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a scoreline model to a matches CSV");
    fit_cmd->add_option("--matches", matches_path, "Matches CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--model", model, "independent | dixon-coles")
        ->capture_default_str()
        ->check(CLI::IsMember({"independent", "dixon-coles"}));
    fit_cmd->add_option("--out", fit_out, "Parameter file (default: stdout)");
    fit_cmd->add_option("--max-iter", max_iter, "Optimiser iteration cap")->capture_default_str()->check(
        CLI::PositiveNumber);

    SimArgs sim;
    ParamsArgs sim_params;
    auto* sim_cmd = app.add_subcommand("simulate", "Estimate qualification-threshold curves");
    add_sim_options(*sim_cmd, sim);
    add_params_options(*sim_cmd, sim_params);
    auto* sched_opt = sim_cmd->add_option("--schedule", sim.schedule, "Fixed schedule CSV")->check(CLI::ExistingFile);
    auto* rand_opt = sim_cmd->add_flag("--random-draws", sim.random_draws, "Draw a new schedule every run");
    sched_opt->excludes(rand_opt);
    rand_opt->excludes(sched_opt);

    SimArgs sweep;
    ParamsArgs sweep_params;
    std::string grid = "0:0.2:0.02";
    auto* sweep_cmd = app.add_subcommand("sweep", "Vary rho over a grid with random schedules");
    add_sim_options(*sweep_cmd, sweep);
    add_params_options(*sweep_cmd, sweep_params);
    sweep_cmd->add_option("--rho-grid", grid, "start:stop:step")->capture_default_str();

    std::string draw_teams, draw_out;
    std::uint64_t draw_seed = 1;
    auto* draw_cmd = app.add_subcommand("draw", "Generate a random valid schedule");
    draw_cmd->add_option("--teams", draw_teams, "Teams CSV with pots")->required()->check(CLI::ExistingFile);
    draw_cmd->add_option("--seed", draw_seed, "Seed")->capture_default_str();
    draw_cmd->add_option("--out", draw_out, "Schedule CSV (default: stdout)");

    std::string stats_matches, stats_label;
    auto* stats_cmd = app.add_subcommand("stats", "Outcome shares, goals and lopsided matches");
    stats_cmd->add_option("--matches", stats_matches, "Matches CSV")->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--label", stats_label, "Row label (default: file name)");

    std::string val_teams, val_schedule;
    auto* val_cmd = app.add_subcommand("validate", "Check a schedule against the league-phase format");
    val_cmd->add_option("--teams", val_teams, "Teams CSV with pots")->required()->check(CLI::ExistingFile);
    val_cmd->add_option("--schedule", val_schedule, "Schedule CSV")->required()->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (*sim_cmd && !sim.random_draws && sim.schedule.empty())
            throw CLI::ValidationError("simulate needs --schedule <csv> or --random-draws");

        if (*fit_cmd) return cmd_fit(matches_path, model, fit_out, max_iter, out, err);
        if (*sim_cmd) return cmd_simulate(sim, sim_params, out);
        if (*sweep_cmd) return cmd_sweep(sweep, sweep_params, grid, out);
        if (*draw_cmd) return cmd_draw(draw_teams, draw_seed, draw_out, out);
        if (*stats_cmd) return cmd_stats(stats_matches, stats_label, out);
        if (*val_cmd) return cmd_validate(val_teams, val_schedule, out);
        return kExitUsage;
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "irrsim: error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace irrsim
