#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "irrsim/domain.hpp"
#include "irrsim/scoreline_model.hpp"

namespace irrsim {

enum class ModelKind { Independent, DixonColes };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(std::string_view s);

struct FitOptions {
    int max_iterations = 10000;
    double tolerance = 1e-9;  // log-likelihood spread over the simplex
    int max_restarts = 5;
    bool compute_std_errors = true;
};

struct FitResult {
    ModelParams params;
    ModelKind kind = ModelKind::Independent;
    double log_likelihood = 0.0;
    // Order: beta0, beta1, beta2 and, for Dixon-Coles, rho.
    std::optional<std::vector<double>> std_errors;
    bool converged = false;
    std::size_t n_obs = 0;
    int iterations = 0;
};

struct EloScale {
    double mean = 0.0;
    double sd = 1.0;
};

// Mean and sample standard deviation over all team-match Elo appearances
// (two per match).
EloScale pooled_elo_scale(std::span<const MatchObservation> matches);

// Sample mean and standard deviation of the ratings of a team list.
EloScale team_elo_scale(std::span<const TeamRecord> teams);

// The scale pooled_elo_scale() would produce on a complete league phase of
// these teams, i.e. each rating counted `appearances` times.
EloScale league_phase_elo_scale(std::span<const TeamRecord> teams, int appearances = 8);

// Sum of log scoreline probabilities with exact Poisson masses. Throws
// InvalidRhoError carrying the match index when a correction factor is not
// strictly positive.
double log_likelihood(const ModelParams& params, std::span<const MatchObservation> matches);

// Tightest rho interval valid for every match under params' betas.
RhoBounds rho_bounds_for(const ModelParams& params, std::span<const MatchObservation> matches);

FitResult fit(std::span<const MatchObservation> matches, ModelKind kind, const FitOptions& options = {});

// Square roots of the diagonal of the inverse observed information, with the
// Hessian taken by central finite differences. rho is held fixed for the
// independent model.
std::vector<double> standard_errors(const ModelParams& params,
                                    std::span<const MatchObservation> matches, ModelKind kind);

inline constexpr std::size_t kMinFitMatches = 20;

}  // namespace irrsim
