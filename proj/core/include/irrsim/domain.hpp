#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irrsim {

inline constexpr int kPotCount = 4;

struct TeamRecord {
    std::string team_id;
    std::string name;
    double elo = 0.0;
    std::optional<int> pot;   // 1..4; absent for training-only teams
    std::string association;  // informational, may be empty

    void validate() const;
};

// One played match with the Elo ratings both sides carried into it.
struct MatchObservation {
    std::string home_id;
    std::string away_id;
    int home_goals = 0;
    int away_goals = 0;
    double home_elo = 0.0;
    double away_elo = 0.0;

    void validate() const;
};

struct Fixture {
    std::string home_id;
    std::string away_id;

    void validate() const;

    friend bool operator==(const Fixture&, const Fixture&) = default;
    friend auto operator<=>(const Fixture&, const Fixture&) = default;
};

// Oriented fixture list. Team attributes (Elo, pot) travel separately as
// TeamRecords; format constraints are checked by validate_schedule().
struct Schedule {
    std::vector<Fixture> fixtures;
};

struct ModelParams {
    double beta0 = 0.0;  // intercept
    double beta1 = 0.0;  // standardised Elo-difference effect
    double beta2 = 0.0;  // home effect
    double rho = 0.0;    // Dixon-Coles dependence; 0 gives independent Poisson
    double elo_mean = 0.0;
    double elo_sd = 1.0;

    void validate() const;
};

struct Scoreline {
    int home_goals = 0;
    int away_goals = 0;

    friend bool operator==(const Scoreline&, const Scoreline&) = default;
};

struct StandingsRow {
    std::string team_id;
    int points = 0;
    int wins = 0;
    int draws = 0;
    int losses = 0;
    int goals_for = 0;
    int goals_against = 0;

    int played() const { return wins + draws + losses; }
};

enum class Cutoff { RoundOf16, Playoff };

std::string_view to_string(Cutoff c);
std::optional<Cutoff> cutoff_from_string(std::string_view s);

struct CurvePoint {
    double probability = 0.0;
    std::int64_t sample_count = 0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Points total -> estimated probability of making the cutoff.
struct ThresholdCurve {
    Cutoff cutoff = Cutoff::RoundOf16;
    std::map<int, CurvePoint> entries;

    friend bool operator==(const ThresholdCurve&, const ThresholdCurve&) = default;
};

}  // namespace irrsim
