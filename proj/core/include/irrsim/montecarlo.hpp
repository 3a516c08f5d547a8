#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "irrsim/domain.hpp"
#include "irrsim/draw.hpp"
#include "irrsim/rng.hpp"
#include "irrsim/scoreline_model.hpp"

namespace irrsim {

struct Cutoffs {
    int direct = 8;    // ranks 1..8 reach the round of 16
    int playoff = 24;  // ranks 1..24 reach at least the play-offs
};

// How P(make cutoff | points) is estimated from the runs.
//   PerRun: every run scores each points total p by the credit a team on p
//     would get against that run's boundary (1 above it, s/n on it, 0 below),
//     and the scores are averaged over all runs.
//   PooledTeamRuns: the credits of all teams that actually finished on p are
//     averaged over every (team, run) observation.
enum class Conditioning { PerRun, PooledTeamRuns };

std::string_view to_string(Conditioning c);
std::optional<Conditioning> conditioning_from_string(std::string_view s);

struct SimConfig {
    std::int64_t n_runs = 10000;
    std::uint64_t master_seed = 0;
    int max_goals = kDefaultMaxGoals;
    Cutoffs cutoffs;
    Conditioning conditioning = Conditioning::PerRun;
    unsigned threads = 0;  // 0 = hardware concurrency; never affects results

    void validate(std::size_t team_count) const;
};

inline constexpr std::int64_t kLowSampleThreshold = 50;

// Share of `slots` qualification places split evenly over `tied` teams.
// Kept as a fraction so per-run totals are exact.
struct Credit {
    int slots = 0;
    int tied = 1;

    double value() const { return static_cast<double>(slots) / static_cast<double>(tied); }
    friend bool operator==(const Credit&, const Credit&) = default;
};

struct TeamCredits {
    Credit direct;
    Credit playoff;
};

struct RunOutcome {
    std::vector<StandingsRow> standings;  // points descending
    std::vector<TeamCredits> credits;     // aligned with standings
    int draws = 0;
};

// Teams above the points value at rank k get 1, teams below get 0, and the
// tied group straddling rank k shares the remaining slots equally.
std::vector<Credit> qualification_credit(std::span<const StandingsRow> sorted_standings, int k);

// Credit a team on `points` would receive against a run's standings.
Credit boundary_credit(std::span<const StandingsRow> sorted_standings, int k, int points);

// Tabulated scoreline samplers for the ordered team pairs a simulation needs.
class LeagueModel {
public:
    // Every ordered pair of distinct teams.
    LeagueModel(std::vector<TeamRecord> teams, const ModelParams& params, int max_goals);
    // Only the pairs that appear in `fixtures` (given as indices into teams).
    LeagueModel(std::vector<TeamRecord> teams, const ModelParams& params, int max_goals,
                std::span<const IndexFixture> fixtures);

    std::size_t team_count() const { return teams_.size(); }
    const std::vector<TeamRecord>& teams() const { return teams_; }
    int index_of(const std::string& team_id) const;
    const ScorelineSampler& sampler(int home, int away) const;
    const ModelParams& params() const { return params_; }

private:
    void index_teams();
    void add_pair(int home, int away);

    std::vector<TeamRecord> teams_;
    ModelParams params_;
    int max_goals_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> slot_;  // n*n -> sampler index or -1
    std::vector<ScorelineSampler> samplers_;
};

std::vector<IndexFixture> to_index_fixtures(const LeagueModel& model, const Schedule& schedule);

RunOutcome simulate_run(const LeagueModel& model, std::span<const IndexFixture> fixtures, Rng& rng,
                        const Cutoffs& cutoffs);

RunOutcome simulate_run(std::span<const TeamRecord> teams, const Schedule& schedule,
                        const ModelParams& params, Rng& rng, const Cutoffs& cutoffs = {},
                        int max_goals = kDefaultMaxGoals);

struct FixedSchedule {
    Schedule schedule;
};
struct RandomSchedules {
    PotAssignment pots;
};
using ScheduleSource = std::variant<FixedSchedule, RandomSchedules>;

struct CurveSet {
    ThresholdCurve direct{Cutoff::RoundOf16, {}};
    ThresholdCurve playoff{Cutoff::Playoff, {}};
    double avg_draws = 0.0;
    std::int64_t runs = 0;
};

// P(make cutoff | points) for every points total some team reached. Run i draws
// from child_seed(master_seed, i), and results are reduced in run order, so
// the output is independent of the thread count.
CurveSet threshold_curve(std::span<const TeamRecord> teams, const ScheduleSource& source,
                         const ModelParams& params, const SimConfig& config);

struct SweepResult {
    std::vector<double> rho_grid;
    std::vector<double> avg_draws;
    std::vector<CurveSet> curves;
};

// rho_grid must be strictly increasing; other parameters stay fixed. Each
// grid point reuses the master seed.
SweepResult rho_sweep(std::span<const TeamRecord> teams, const PotAssignment& pots,
                      const ModelParams& base_params, std::span<const double> rho_grid,
                      const SimConfig& config);

// start:stop:step with stop included when it lies on the grid.
std::vector<double> make_rho_grid(double start, double stop, double step);

struct MatchSummary {
    std::size_t matches = 0;
    std::size_t home_wins = 0;
    std::size_t draws = 0;
    std::size_t away_wins = 0;
    std::size_t lopsided = 0;  // winning margin of at least four goals
    long home_goals = 0;
    long away_goals = 0;

    double home_win_share() const;
    double draw_share() const;
    double away_win_share() const;
    double avg_points_per_match() const;
    double avg_home_goals() const;
    double avg_away_goals() const;
    double avg_total_goals() const;
    double lopsided_share() const;
};

MatchSummary summarize_matches(std::span<const MatchObservation> matches);

}  // namespace irrsim
