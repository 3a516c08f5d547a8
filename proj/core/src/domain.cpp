#include "irrsim/domain.hpp"

#include <cmath>

#include "irrsim/errors.hpp"

namespace irrsim {

void TeamRecord::validate() const {
    if (team_id.empty()) throw InvalidArgument("team_id must not be empty");
    if (!std::isfinite(elo) || elo <= 0.0)
        throw InvalidArgument("team '" + team_id + "': elo must be finite and positive");
    if (pot && (*pot < 1 || *pot > kPotCount))
        throw InvalidArgument("team '" + team_id + "': pot must be in 1..4");
}

void MatchObservation::validate() const {
    if (home_id.empty() || away_id.empty()) throw InvalidArgument("match team ids must not be empty");
    if (home_id == away_id) throw InvalidArgument("match '" + home_id + "' plays itself");
    if (home_goals < 0 || away_goals < 0) throw InvalidArgument("goals must be non-negative");
    if (!std::isfinite(home_elo) || !std::isfinite(away_elo))
        throw InvalidArgument("match Elo ratings must be finite");
}

void Fixture::validate() const {
    if (home_id.empty() || away_id.empty()) throw InvalidArgument("fixture team ids must not be empty");
    if (home_id == away_id) throw InvalidArgument("fixture '" + home_id + "' plays itself");
}

void ModelParams::validate() const {
    for (double v : {beta0, beta1, beta2, rho, elo_mean, elo_sd})
        if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
    if (elo_sd <= 0.0) throw InvalidArgument("elo_sd must be positive");
}

std::string_view to_string(Cutoff c) {
    return c == Cutoff::RoundOf16 ? "ROUND_OF_16" : "PLAYOFF";
}

std::optional<Cutoff> cutoff_from_string(std::string_view s) {
    if (s == "ROUND_OF_16") return Cutoff::RoundOf16;
    if (s == "PLAYOFF") return Cutoff::Playoff;
    return std::nullopt;
}

}  // namespace irrsim
