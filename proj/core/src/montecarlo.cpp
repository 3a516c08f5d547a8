#include "irrsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "irrsim/errors.hpp"

namespace irrsim {

void SimConfig::validate(std::size_t team_count) const {
    if (n_runs < 1) throw InvalidArgument("n_runs must be at least 1");
    if (max_goals < kMinMaxGoals) throw InvalidArgument("max_goals must be at least 5");
    const auto n = static_cast<int>(team_count);
    if (!(0 < cutoffs.direct && cutoffs.direct < cutoffs.playoff && cutoffs.playoff < n))
        throw InvalidArgument("cutoffs must satisfy 0 < direct < playoff < team count");
}

std::vector<Credit> qualification_credit(std::span<const StandingsRow> sorted, int k) {
    const auto n = static_cast<int>(sorted.size());
    std::vector<Credit> out(sorted.size(), Credit{0, 1});
    if (k <= 0) return out;
    if (k >= n) {
        std::fill(out.begin(), out.end(), Credit{1, 1});
        return out;
    }
    const int boundary = sorted[static_cast<std::size_t>(k - 1)].points;
    int above = 0, tied = 0;
    for (const auto& row : sorted) {
        if (row.points > boundary)
            ++above;
        else if (row.points == boundary)
            ++tied;
    }
    const Credit shared{k - above, tied};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].points > boundary)
            out[i] = {1, 1};
        else if (sorted[i].points == boundary)
            out[i] = shared;
    }
    return out;
}

Credit boundary_credit(std::span<const StandingsRow> sorted, int k, int points) {
    const auto n = static_cast<int>(sorted.size());
    if (k <= 0) return {0, 1};
    if (k >= n) return {1, 1};
    const int boundary = sorted[static_cast<std::size_t>(k - 1)].points;
    if (points > boundary) return {1, 1};
    if (points < boundary) return {0, 1};
    int above = 0, tied = 0;
    for (const auto& row : sorted) {
        if (row.points > boundary)
            ++above;
        else if (row.points == boundary)
            ++tied;
    }
    return {k - above, tied};
}

std::string_view to_string(Conditioning c) {
    return c == Conditioning::PerRun ? "per-run" : "pooled";
}

std::optional<Conditioning> conditioning_from_string(std::string_view s) {
    if (s == "per-run") return Conditioning::PerRun;
    if (s == "pooled") return Conditioning::PooledTeamRuns;
    return std::nullopt;
}

LeagueModel::LeagueModel(std::vector<TeamRecord> teams, const ModelParams& params, int max_goals)
    : teams_(std::move(teams)), params_(params), max_goals_(max_goals) {
    index_teams();
    const auto n = static_cast<int>(teams_.size());
    for (int h = 0; h < n; ++h)
        for (int a = 0; a < n; ++a)
            if (h != a) add_pair(h, a);
}

LeagueModel::LeagueModel(std::vector<TeamRecord> teams, const ModelParams& params, int max_goals,
                         std::span<const IndexFixture> fixtures)
    : teams_(std::move(teams)), params_(params), max_goals_(max_goals) {
    index_teams();
    const auto n = static_cast<int>(teams_.size());
    for (const auto& [h, a] : fixtures) {
        if (h < 0 || a < 0 || h >= n || a >= n || h == a) throw InvalidArgument("bad fixture index");
        if (slot_[static_cast<std::size_t>(h * n + a)] < 0) add_pair(h, a);
    }
}

void LeagueModel::index_teams() {
    params_.validate();
    if (teams_.size() < 2) throw InvalidArgument("need at least two teams");
    for (std::size_t i = 0; i < teams_.size(); ++i) {
        teams_[i].validate();
        if (!index_.emplace(teams_[i].team_id, static_cast<int>(i)).second)
            throw InvalidArgument("duplicate team '" + teams_[i].team_id + "'");
    }
    slot_.assign(teams_.size() * teams_.size(), -1);
}

void LeagueModel::add_pair(int home, int away) {
    const auto& th = teams_[static_cast<std::size_t>(home)];
    const auto& ta = teams_[static_cast<std::size_t>(away)];
    const GoalRates rates = expected_goals(params_, th.elo, ta.elo);
    if (!rho_bounds(rates).contains(params_.rho))
        throw InvalidRhoError("rho=" + std::to_string(params_.rho) + " outside valid range for " +
                              th.team_id + " v " + ta.team_id);
    slot_[static_cast<std::size_t>(home) * teams_.size() + static_cast<std::size_t>(away)] =
        static_cast<int>(samplers_.size());
    samplers_.emplace_back(scoreline_matrix(rates, params_.rho, max_goals_));
}

int LeagueModel::index_of(const std::string& team_id) const {
    const auto it = index_.find(team_id);
    if (it == index_.end()) throw InvalidArgument("unknown team '" + team_id + "'");
    return it->second;
}

const ScorelineSampler& LeagueModel::sampler(int home, int away) const {
    const int s = slot_[static_cast<std::size_t>(home) * teams_.size() + static_cast<std::size_t>(away)];
    if (s < 0) throw InvalidArgument("no scoreline table for requested pairing");
    return samplers_[static_cast<std::size_t>(s)];
}

std::vector<IndexFixture> to_index_fixtures(const LeagueModel& model, const Schedule& schedule) {
    std::vector<IndexFixture> out;
    out.reserve(schedule.fixtures.size());
    for (const auto& f : schedule.fixtures) {
        f.validate();
        out.emplace_back(model.index_of(f.home_id), model.index_of(f.away_id));
    }
    return out;
}

namespace {

struct Tally {
    std::vector<StandingsRow> rows;  // team order
    int draws = 0;
};

void play(const LeagueModel& model, std::span<const IndexFixture> fixtures, Rng& rng, Tally& t) {
    for (auto& r : t.rows) r = StandingsRow{r.team_id};
    t.draws = 0;
    for (const auto& [h, a] : fixtures) {
        const Scoreline s = model.sampler(h, a)(rng);
        auto& rh = t.rows[static_cast<std::size_t>(h)];
        auto& ra = t.rows[static_cast<std::size_t>(a)];
        rh.goals_for += s.home_goals;
        rh.goals_against += s.away_goals;
        ra.goals_for += s.away_goals;
        ra.goals_against += s.home_goals;
        if (s.home_goals > s.away_goals) {
            ++rh.wins;
            ++ra.losses;
            rh.points += 3;
        } else if (s.home_goals < s.away_goals) {
            ++ra.wins;
            ++rh.losses;
            ra.points += 3;
        } else {
            ++rh.draws;
            ++ra.draws;
            ++rh.points;
            ++ra.points;
            ++t.draws;
        }
    }
}

// Team indices ordered by points descending; ties keep team order.
std::vector<int> rank_order(const std::vector<StandingsRow>& rows) {
    std::vector<int> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return rows[static_cast<std::size_t>(a)].points > rows[static_cast<std::size_t>(b)].points;
    });
    return order;
}

Tally make_tally(const LeagueModel& model) {
    Tally t;
    t.rows.reserve(model.team_count());
    for (const auto& team : model.teams()) t.rows.push_back(StandingsRow{team.team_id});
    return t;
}

}  // namespace

RunOutcome simulate_run(const LeagueModel& model, std::span<const IndexFixture> fixtures, Rng& rng,
                        const Cutoffs& cutoffs) {
    Tally t = make_tally(model);
    play(model, fixtures, rng, t);
    RunOutcome out;
    out.draws = t.draws;
    for (int i : rank_order(t.rows)) out.standings.push_back(t.rows[static_cast<std::size_t>(i)]);
    const auto direct = qualification_credit(out.standings, cutoffs.direct);
    const auto playoff = qualification_credit(out.standings, cutoffs.playoff);
    for (std::size_t i = 0; i < out.standings.size(); ++i) out.credits.push_back({direct[i], playoff[i]});
    return out;
}

RunOutcome simulate_run(std::span<const TeamRecord> teams, const Schedule& schedule,
                        const ModelParams& params, Rng& rng, const Cutoffs& cutoffs, int max_goals) {
    std::vector<TeamRecord> team_list(teams.begin(), teams.end());
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < team_list.size(); ++i) idx.emplace(team_list[i].team_id, static_cast<int>(i));
    std::vector<IndexFixture> fixtures;
    for (const auto& f : schedule.fixtures) {
        f.validate();
        const auto h = idx.find(f.home_id), a = idx.find(f.away_id);
        if (h == idx.end() || a == idx.end()) throw InvalidArgument("fixture references an unknown team");
        fixtures.emplace_back(h->second, a->second);
    }
    const LeagueModel model(std::move(team_list), params, max_goals, fixtures);
    return simulate_run(model, fixtures, rng, cutoffs);
}

namespace {

// Where a run's cutoff fell: points at rank k, and the credit shared by the
// tied group there.
struct Boundary {
    int points = 0;
    Credit shared;

    double credit_for(int p) const { return p > points ? 1.0 : p < points ? 0.0 : shared.value(); }
};

struct RunRecord {
    std::vector<int> points;          // team order
    std::vector<TeamCredits> credits; // team order
    Boundary direct, playoff;
    int draws = 0;
};

struct Accumulator {
    double direct = 0.0;  // pooled: sum of team credits; per-run: sum of boundary credits
    double playoff = 0.0;
    std::int64_t count = 0;  // team-run observations on this points total
};

Boundary boundary_of(std::span<const StandingsRow> sorted, int k) {
    const int v = k >= 1 && k <= static_cast<int>(sorted.size()) ? sorted[static_cast<std::size_t>(k - 1)].points : 0;
    return {v, boundary_credit(sorted, k, v)};
}

unsigned worker_count(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Maps PotAssignment slot index (9*(pot-1)+slot) to the team's index in the model.
std::vector<int> pot_slot_map(const LeagueModel& model, const PotAssignment& pots) {
    pots.validate();
    if (model.team_count() != static_cast<std::size_t>(kLeagueTeams))
        throw InvalidArgument("random schedules need exactly 36 teams");
    std::vector<int> map;
    for (const auto& pot : pots.pots)
        for (const auto& id : pot) map.push_back(model.index_of(id));
    return map;
}

void run_one(const LeagueModel& model, const ScheduleSource& source, const std::vector<IndexFixture>& fixed,
             const std::vector<int>& slot_map, const SimConfig& config, std::int64_t run, Tally& tally,
             RunRecord& rec) {
    Rng rng(child_seed(config.master_seed, static_cast<std::uint64_t>(run)));
    std::vector<IndexFixture> drawn;
    std::span<const IndexFixture> fixtures = fixed;
    if (std::holds_alternative<RandomSchedules>(source)) {
        drawn = generate_index_fixtures(rng);
        for (auto& [h, a] : drawn) {
            h = slot_map[static_cast<std::size_t>(h)];
            a = slot_map[static_cast<std::size_t>(a)];
        }
        fixtures = drawn;
    }
    play(model, fixtures, rng, tally);

    const auto order = rank_order(tally.rows);
    std::vector<StandingsRow> sorted;
    sorted.reserve(order.size());
    for (int i : order) sorted.push_back(tally.rows[static_cast<std::size_t>(i)]);
    const auto direct = qualification_credit(sorted, config.cutoffs.direct);
    const auto playoff = qualification_credit(sorted, config.cutoffs.playoff);

    rec.points.resize(tally.rows.size());
    rec.credits.resize(tally.rows.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto team = static_cast<std::size_t>(order[r]);
        rec.points[team] = sorted[r].points;
        rec.credits[team] = {direct[r], playoff[r]};
    }
    rec.direct = boundary_of(sorted, config.cutoffs.direct);
    rec.playoff = boundary_of(sorted, config.cutoffs.playoff);
    rec.draws = tally.draws;
}

CurveSet run_curves(const LeagueModel& model, const ScheduleSource& source, const SimConfig& config) {
    std::vector<IndexFixture> fixed;
    std::vector<int> slot_map;
    if (const auto* f = std::get_if<FixedSchedule>(&source))
        fixed = to_index_fixtures(model, f->schedule);
    else
        slot_map = pot_slot_map(model, std::get<RandomSchedules>(source).pots);

    // Highest reachable points total: 3 per match of the busiest team.
    int max_points = 3 * kMatchesPerTeam;
    if (!fixed.empty()) {
        std::vector<int> games(model.team_count(), 0);
        for (const auto& [h, a] : fixed) {
            ++games[static_cast<std::size_t>(h)];
            ++games[static_cast<std::size_t>(a)];
        }
        max_points = 3 * *std::max_element(games.begin(), games.end());
    }
    const bool per_run = config.conditioning == Conditioning::PerRun;

    constexpr std::int64_t kChunk = 2048;
    const unsigned workers = worker_count(config.threads);
    std::vector<RunRecord> records(static_cast<std::size_t>(std::min(kChunk, config.n_runs)));
    std::vector<Accumulator> acc(static_cast<std::size_t>(max_points) + 1);
    long draw_total = 0;

    for (std::int64_t begin = 0; begin < config.n_runs; begin += kChunk) {
        const std::int64_t end = std::min(config.n_runs, begin + kChunk);
        std::atomic<std::int64_t> next{begin};
        auto work = [&] {
            Tally tally = make_tally(model);
            for (std::int64_t r = next++; r < end; r = next++)
                run_one(model, source, fixed, slot_map, config, r, tally,
                        records[static_cast<std::size_t>(r - begin)]);
        };
        const auto n_threads = std::min<std::int64_t>(workers, end - begin);
        if (n_threads <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (std::int64_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
        }
        // Sequential reduction in run order.
        for (std::int64_t r = begin; r < end; ++r) {
            const auto& rec = records[static_cast<std::size_t>(r - begin)];
            draw_total += rec.draws;
            for (std::size_t team = 0; team < rec.points.size(); ++team) {
                auto& a = acc[static_cast<std::size_t>(rec.points[team])];
                ++a.count;
                if (!per_run) {
                    a.direct += rec.credits[team].direct.value();
                    a.playoff += rec.credits[team].playoff.value();
                }
            }
            if (per_run) {
                for (std::size_t p = 0; p < acc.size(); ++p) {
                    acc[p].direct += rec.direct.credit_for(static_cast<int>(p));
                    acc[p].playoff += rec.playoff.credit_for(static_cast<int>(p));
                }
            }
        }
    }

    CurveSet out;
    out.runs = config.n_runs;
    out.avg_draws = static_cast<double>(draw_total) / static_cast<double>(config.n_runs);
    for (std::size_t p = 0; p < acc.size(); ++p) {
        if (acc[p].count == 0) continue;
        const auto n = per_run ? static_cast<double>(config.n_runs) : static_cast<double>(acc[p].count);
        out.direct.entries[static_cast<int>(p)] = {acc[p].direct / n, acc[p].count};
        out.playoff.entries[static_cast<int>(p)] = {acc[p].playoff / n, acc[p].count};
    }
    return out;
}

}  // namespace

CurveSet threshold_curve(std::span<const TeamRecord> teams, const ScheduleSource& source,
                         const ModelParams& params, const SimConfig& config) {
    config.validate(teams.size());
    std::vector<TeamRecord> team_list(teams.begin(), teams.end());
    if (const auto* f = std::get_if<FixedSchedule>(&source)) {
        // Only the scheduled pairings need tables (and a valid rho).
        std::unordered_map<std::string, int> idx;
        for (std::size_t i = 0; i < team_list.size(); ++i) idx.emplace(team_list[i].team_id, static_cast<int>(i));
        std::vector<IndexFixture> fixtures;
        for (const auto& fx : f->schedule.fixtures) {
            const auto h = idx.find(fx.home_id), a = idx.find(fx.away_id);
            if (h == idx.end() || a == idx.end())
                throw InvalidArgument("schedule references unknown team '" +
                                      (h == idx.end() ? fx.home_id : fx.away_id) + "'");
            fixtures.emplace_back(h->second, a->second);
        }
        const LeagueModel model(std::move(team_list), params, config.max_goals, fixtures);
        return run_curves(model, source, config);
    }
    const LeagueModel model(std::move(team_list), params, config.max_goals);
    return run_curves(model, source, config);
}

SweepResult rho_sweep(std::span<const TeamRecord> teams, const PotAssignment& pots,
                      const ModelParams& base_params, std::span<const double> rho_grid,
                      const SimConfig& config) {
    if (rho_grid.empty()) throw InvalidArgument("rho grid is empty");
    for (std::size_t i = 1; i < rho_grid.size(); ++i)
        if (!(rho_grid[i] > rho_grid[i - 1])) throw InvalidArgument("rho grid must be strictly increasing");
    config.validate(teams.size());

    SweepResult out;
    for (double rho : rho_grid) {
        ModelParams p = base_params;
        p.rho = rho;
        std::vector<TeamRecord> team_list(teams.begin(), teams.end());
        std::optional<LeagueModel> model;
        try {
            model.emplace(std::move(team_list), p, config.max_goals);
        } catch (const InvalidRhoError& e) {
            throw InvalidRhoError("rho grid point " + std::to_string(rho) + ": " + e.what());
        }
        CurveSet curves = run_curves(*model, RandomSchedules{pots}, config);
        out.rho_grid.push_back(rho);
        out.avg_draws.push_back(curves.avg_draws);
        out.curves.push_back(std::move(curves));
    }
    return out;
}

std::vector<double> make_rho_grid(double start, double stop, double step) {
    if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step)) || step <= 0.0 || stop < start)
        throw InvalidArgument("rho grid needs finite start <= stop and step > 0");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> grid;
    for (long i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

namespace {
double share(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}
}  // namespace

double MatchSummary::home_win_share() const { return share(home_wins, matches); }
double MatchSummary::draw_share() const { return share(draws, matches); }
double MatchSummary::away_win_share() const { return share(away_wins, matches); }
double MatchSummary::avg_points_per_match() const {
    return 3.0 * (1.0 - draw_share()) + 2.0 * draw_share();
}
double MatchSummary::avg_home_goals() const {
    return matches == 0 ? 0.0 : static_cast<double>(home_goals) / static_cast<double>(matches);
}
double MatchSummary::avg_away_goals() const {
    return matches == 0 ? 0.0 : static_cast<double>(away_goals) / static_cast<double>(matches);
}
double MatchSummary::avg_total_goals() const {
    return matches == 0 ? 0.0 : static_cast<double>(home_goals + away_goals) / static_cast<double>(matches);
}
double MatchSummary::lopsided_share() const { return share(lopsided, matches); }

MatchSummary summarize_matches(std::span<const MatchObservation> matches) {
    if (matches.empty()) throw InvalidArgument("summarize_matches: no matches");
    MatchSummary s;
    for (const auto& m : matches) {
        m.validate();
        ++s.matches;
        s.home_goals += m.home_goals;
        s.away_goals += m.away_goals;
        if (m.home_goals > m.away_goals)
            ++s.home_wins;
        else if (m.home_goals < m.away_goals)
            ++s.away_wins;
        else
            ++s.draws;
        if (std::abs(m.home_goals - m.away_goals) >= 4) ++s.lopsided;
    }
    return s;
}

}  // namespace irrsim
