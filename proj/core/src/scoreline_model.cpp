#include "irrsim/scoreline_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irrsim/errors.hpp"

namespace irrsim {

void GoalRates::validate() const {
    if (!(std::isfinite(lambda) && std::isfinite(mu) && lambda > 0.0 && mu > 0.0))
        throw InvalidArgument("goal rates must be finite and positive");
}

double standardize_elo(double raw_elo, double elo_mean, double elo_sd) {
    if (!std::isfinite(raw_elo) || !std::isfinite(elo_mean) || !std::isfinite(elo_sd))
        throw InvalidArgument("standardize_elo: non-finite input");
    if (elo_sd <= 0.0) throw InvalidArgument("standardize_elo: elo_sd must be positive");
    return (raw_elo - elo_mean) / elo_sd;
}

GoalRates expected_goals(const ModelParams& params, double elo_home, double elo_away) {
    params.validate();
    const double d = standardize_elo(elo_home, params.elo_mean, params.elo_sd) -
                     standardize_elo(elo_away, params.elo_mean, params.elo_sd);
    GoalRates rates{std::exp(params.beta0 + params.beta1 * d + params.beta2),
                    std::exp(params.beta0 - params.beta1 * d)};
    if (!(std::isfinite(rates.lambda) && std::isfinite(rates.mu) && rates.lambda > 0.0 &&
          rates.mu > 0.0))
        throw NumericRangeError("expected_goals: rate overflow or underflow");
    return rates;
}

namespace {

constexpr double kTauRoundoff = 1e-12;

double tau_unchecked(int x, int y, const GoalRates& r, double rho) {
    if (x == 0 && y == 0) return 1.0 - r.lambda * r.mu * rho;
    if (x == 0 && y == 1) return 1.0 + r.lambda * rho;
    if (x == 1 && y == 0) return 1.0 + r.mu * rho;
    if (x == 1 && y == 1) return 1.0 - rho;
    return 1.0;
}

}  // namespace

double tau(int home_goals, int away_goals, const GoalRates& rates, double rho) {
    if (home_goals < 0 || away_goals < 0) throw InvalidArgument("tau: negative goals");
    double t = tau_unchecked(home_goals, away_goals, rates, rho);
    // rho exactly on a bound can land a rounding error below zero.
    if (t < 0.0 && t > -kTauRoundoff) t = 0.0;
    if (t < 0.0)
        throw InvalidRhoError("rho=" + std::to_string(rho) + " makes tau(" +
                              std::to_string(home_goals) + "," + std::to_string(away_goals) +
                              ") negative");
    return t;
}

RhoBounds rho_bounds(const GoalRates& rates) {
    return {std::max(-1.0 / rates.lambda, -1.0 / rates.mu),
            std::min(1.0 / (rates.lambda * rates.mu), 1.0)};
}

double poisson_pmf(int k, double rate) {
    if (k < 0) return 0.0;
    return std::exp(k * std::log(rate) - rate - std::lgamma(k + 1.0));
}

double scoreline_prob(int home_goals, int away_goals, const GoalRates& rates, double rho) {
    return tau(home_goals, away_goals, rates, rho) * poisson_pmf(home_goals, rates.lambda) *
           poisson_pmf(away_goals, rates.mu);
}

ScorelineMatrix::ScorelineMatrix(int max_goals, std::vector<double> probs)
    : max_goals_(max_goals), probs_(std::move(probs)) {
    if (max_goals_ < 0) throw InvalidArgument("ScorelineMatrix: negative max_goals");
    const auto n = static_cast<std::size_t>(side()) * static_cast<std::size_t>(side());
    if (probs_.size() != n) throw InvalidArgument("ScorelineMatrix: grid size mismatch");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidArgument("ScorelineMatrix: entries must be finite and non-negative");
        total += p;
    }
    if (total <= 0.0) throw InvalidArgument("ScorelineMatrix: zero total mass");
    for (double& p : probs_) p /= total;
}

ScorelineMatrix scoreline_matrix(const GoalRates& rates, double rho, int max_goals) {
    rates.validate();
    if (max_goals < kMinMaxGoals)
        throw InvalidArgument("scoreline_matrix: max_goals must be at least 5");
    const int side = max_goals + 1;
    std::vector<double> home(static_cast<std::size_t>(side)), away(static_cast<std::size_t>(side));
    for (int k = 0; k < side; ++k) {
        home[static_cast<std::size_t>(k)] = poisson_pmf(k, rates.lambda);
        away[static_cast<std::size_t>(k)] = poisson_pmf(k, rates.mu);
    }
    std::vector<double> grid(static_cast<std::size_t>(side * side));
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y)
            grid[static_cast<std::size_t>(x * side + y)] =
                tau(x, y, rates, rho) * home[static_cast<std::size_t>(x)] *
                away[static_cast<std::size_t>(y)];
    return ScorelineMatrix(max_goals, std::move(grid));
}

OutcomeProbs outcome_probs(const ScorelineMatrix& matrix) {
    OutcomeProbs out;
    const int side = matrix.side();
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) {
            const double p = matrix.at(x, y);
            if (x > y)
                out.home += p;
            else if (x == y)
                out.draw += p;
            else
                out.away += p;
        }
    return out;
}

ScorelineSampler::ScorelineSampler(const ScorelineMatrix& matrix) : side_(matrix.side()) {
    const auto probs = matrix.probs();
    cdf_.resize(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf_[i] = acc;
    }
    // Guard the top end against rounding so every u in [0,1) lands in range.
    for (std::size_t i = cdf_.size(); i-- > 0;) {
        if (probs[i] > 0.0) {
            std::fill(cdf_.begin() + static_cast<std::ptrdiff_t>(i), cdf_.end(), 1.0);
            break;
        }
    }
}

Scoreline ScorelineSampler::operator()(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<int>(it - cdf_.begin());
    return {idx / side_, idx % side_};
}

Scoreline sample_scoreline(const ScorelineMatrix& matrix, Rng& rng) {
    return ScorelineSampler(matrix)(rng);
}

}  // namespace irrsim
