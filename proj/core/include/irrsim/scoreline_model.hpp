#pragma once

#include <span>
#include <vector>

#include "irrsim/domain.hpp"
#include "irrsim/rng.hpp"

namespace irrsim {

// Expected home (lambda) and away (mu) goals for one fixture.
struct GoalRates {
    double lambda = 1.0;
    double mu = 1.0;

    void validate() const;
};

struct RhoBounds {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double rho) const { return rho >= lo && rho <= hi; }
};

inline constexpr int kDefaultMaxGoals = 10;
inline constexpr int kMinMaxGoals = 5;

double standardize_elo(double raw_elo, double elo_mean, double elo_sd);

// lambda = exp(b0 + b1*d + b2), mu = exp(b0 - b1*d) with d the difference of
// the standardised ratings.
GoalRates expected_goals(const ModelParams& params, double elo_home, double elo_away);

// Dixon-Coles correction factor for the low-score cells. Throws
// InvalidRhoError if the factor is negative.
double tau(int home_goals, int away_goals, const GoalRates& rates, double rho);

// Range of rho keeping all four corrected cells non-negative.
RhoBounds rho_bounds(const GoalRates& rates);

double poisson_pmf(int k, double rate);

// Exact (untruncated) probability of one scoreline.
double scoreline_prob(int home_goals, int away_goals, const GoalRates& rates, double rho);

// Scoreline probabilities on the grid 0..max_goals in both directions,
// renormalised to sum to one.
class ScorelineMatrix {
public:
    // Takes ownership of a row-major (max_goals+1)^2 grid indexed [home][away].
    // Entries must be non-negative with a positive total; they are rescaled to
    // sum to one.
    ScorelineMatrix(int max_goals, std::vector<double> probs);

    int max_goals() const { return max_goals_; }
    int side() const { return max_goals_ + 1; }
    double at(int home_goals, int away_goals) const {
        return probs_[static_cast<std::size_t>(home_goals * side() + away_goals)];
    }
    std::span<const double> probs() const { return probs_; }

private:
    int max_goals_;
    std::vector<double> probs_;
};

ScorelineMatrix scoreline_matrix(const GoalRates& rates, double rho, int max_goals = kDefaultMaxGoals);

struct OutcomeProbs {
    double home = 0.0;
    double draw = 0.0;
    double away = 0.0;
};

OutcomeProbs outcome_probs(const ScorelineMatrix& matrix);

// Inverse-CDF sampler over a flattened matrix; O(log n) per draw.
class ScorelineSampler {
public:
    explicit ScorelineSampler(const ScorelineMatrix& matrix);

    Scoreline operator()(Rng& rng) const;

private:
    int side_;
    std::vector<double> cdf_;
};

Scoreline sample_scoreline(const ScorelineMatrix& matrix, Rng& rng);

}  // namespace irrsim
