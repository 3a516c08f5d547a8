#include "irrsim/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "irrsim/errors.hpp"
#include "irrsim/optimize.hpp"
#include "irrsim/scoreline_model.hpp"

namespace irrsim {

std::string_view to_string(ModelKind kind) {
    return kind == ModelKind::Independent ? "independent" : "dixon-coles";
}

std::optional<ModelKind> model_kind_from_string(std::string_view s) {
    if (s == "independent") return ModelKind::Independent;
    if (s == "dixon-coles") return ModelKind::DixonColes;
    return std::nullopt;
}

namespace {

// Neumaier summation; the result does not depend on how the terms were
// produced, only on their order.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

EloScale mean_sd(std::span<const double> xs) {
    if (xs.size() < 2) throw InvalidArgument("need at least two Elo values to standardise");
    CompensatedSum s;
    for (double x : xs) s.add(x);
    const double mean = s.value() / static_cast<double>(xs.size());
    CompensatedSum ss;
    for (double x : xs) ss.add((x - mean) * (x - mean));
    const double sd = std::sqrt(ss.value() / static_cast<double>(xs.size() - 1));
    if (!(sd > 0.0)) throw FitDegenerateError("Elo ratings have zero spread");
    return {mean, sd};
}

double log_poisson(int k, double log_rate, double rate) {
    return k * log_rate - rate - std::lgamma(k + 1.0);
}

// Log-likelihood that reports infeasibility through `bad_index` instead of
// throwing; used inside the optimiser.
double log_likelihood_impl(const ModelParams& p, std::span<const MatchObservation> matches,
                           std::size_t& bad_index) {
    CompensatedSum total;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        const auto& m = matches[i];
        const double d = (m.home_elo - m.away_elo) / p.elo_sd;
        const double log_lambda = p.beta0 + p.beta1 * d + p.beta2;
        const double log_mu = p.beta0 - p.beta1 * d;
        const GoalRates rates{std::exp(log_lambda), std::exp(log_mu)};
        double t = 1.0;
        if (m.home_goals <= 1 && m.away_goals <= 1 && p.rho != 0.0) {
            if (m.home_goals == 0 && m.away_goals == 0)
                t = 1.0 - rates.lambda * rates.mu * p.rho;
            else if (m.home_goals == 0)
                t = 1.0 + rates.lambda * p.rho;
            else if (m.away_goals == 0)
                t = 1.0 + rates.mu * p.rho;
            else
                t = 1.0 - p.rho;
            if (!(t > 0.0)) {
                bad_index = i;
                return -std::numeric_limits<double>::infinity();
            }
        }
        total.add(std::log(t) + log_poisson(m.home_goals, log_lambda, rates.lambda) +
                  log_poisson(m.away_goals, log_mu, rates.mu));
    }
    return total.value();
}

void check_matches(std::span<const MatchObservation> matches) {
    if (matches.empty()) throw InvalidArgument("no matches supplied");
    for (const auto& m : matches) m.validate();
}

}  // namespace

EloScale pooled_elo_scale(std::span<const MatchObservation> matches) {
    std::vector<double> elos;
    elos.reserve(matches.size() * 2);
    for (const auto& m : matches) {
        elos.push_back(m.home_elo);
        elos.push_back(m.away_elo);
    }
    return mean_sd(elos);
}

EloScale team_elo_scale(std::span<const TeamRecord> teams) {
    std::vector<double> elos;
    elos.reserve(teams.size());
    for (const auto& t : teams) elos.push_back(t.elo);
    return mean_sd(elos);
}

EloScale league_phase_elo_scale(std::span<const TeamRecord> teams, int appearances) {
    if (appearances < 1) throw InvalidArgument("appearances must be positive");
    std::vector<double> elos;
    elos.reserve(teams.size() * static_cast<std::size_t>(appearances));
    for (const auto& t : teams)
        for (int i = 0; i < appearances; ++i) elos.push_back(t.elo);
    return mean_sd(elos);
}

double log_likelihood(const ModelParams& params, std::span<const MatchObservation> matches) {
    params.validate();
    check_matches(matches);
    std::size_t bad = InvalidRhoError::npos;
    const double ll = log_likelihood_impl(params, matches, bad);
    if (bad != InvalidRhoError::npos)
        throw InvalidRhoError("rho=" + std::to_string(params.rho) +
                                  " gives a non-positive correction factor for match " +
                                  std::to_string(bad),
                              bad);
    return ll;
}

RhoBounds rho_bounds_for(const ModelParams& params, std::span<const MatchObservation> matches) {
    RhoBounds b{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (const auto& m : matches) {
        const RhoBounds r = rho_bounds(expected_goals(params, m.home_elo, m.away_elo));
        b.lo = std::max(b.lo, r.lo);
        b.hi = std::min(b.hi, r.hi);
    }
    return b;
}

namespace {

constexpr double kRhoMargin = 1e-6;

ModelParams unpack(const std::vector<double>& x, ModelKind kind, const EloScale& scale) {
    return {x[0], x[1], x[2], kind == ModelKind::DixonColes ? x[3] : 0.0, scale.mean, scale.sd};
}

// Negative log-likelihood with the rho box applied; +inf outside it.
double objective(const std::vector<double>& x, ModelKind kind, const EloScale& scale,
                 std::span<const MatchObservation> matches) {
    for (double v : x)
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    const ModelParams p = unpack(x, kind, scale);
    if (kind == ModelKind::DixonColes) {
        // Every rate must stay finite for the box to be meaningful.
        if (std::abs(p.beta0) > 50 || std::abs(p.beta1) > 50 || std::abs(p.beta2) > 50)
            return std::numeric_limits<double>::infinity();
        const RhoBounds b = rho_bounds_for(p, matches);
        if (p.rho < b.lo + kRhoMargin || p.rho > b.hi - kRhoMargin)
            return std::numeric_limits<double>::infinity();
    }
    std::size_t bad = InvalidRhoError::npos;
    const double ll = log_likelihood_impl(p, matches, bad);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
}

}  // namespace

FitResult fit(std::span<const MatchObservation> matches, ModelKind kind, const FitOptions& options) {
    check_matches(matches);
    if (matches.size() < kMinFitMatches)
        throw InvalidArgument("fit needs at least " + std::to_string(kMinFitMatches) + " matches");
    const bool all_same = std::all_of(matches.begin(), matches.end(), [&](const MatchObservation& m) {
        return m.home_goals == matches.front().home_goals && m.away_goals == matches.front().away_goals;
    });
    if (all_same) throw FitDegenerateError("all observed scorelines are identical");

    const EloScale scale = pooled_elo_scale(matches);

    double goals = 0.0;
    for (const auto& m : matches) goals += m.home_goals + m.away_goals;
    const double mean_goals = goals / (2.0 * static_cast<double>(matches.size()));
    if (!(mean_goals > 0.0)) throw FitDegenerateError("no goals observed");

    std::vector<double> start{std::log(mean_goals), 0.1, 0.2};
    if (kind == ModelKind::DixonColes) start.push_back(0.0);

    SimplexOptions so;
    so.max_iterations = options.max_iterations;
    so.f_tolerance = options.tolerance;
    so.max_restarts = options.max_restarts;
    const auto res = minimize_simplex(
        [&](const std::vector<double>& x) { return objective(x, kind, scale, matches); }, start, so);

    FitResult out;
    out.params = unpack(res.x, kind, scale);
    out.kind = kind;
    out.log_likelihood = -res.value;
    out.converged = res.converged && std::isfinite(res.value);
    out.n_obs = matches.size();
    out.iterations = res.iterations;
    if (options.compute_std_errors && out.converged) {
        try {
            out.std_errors = standard_errors(out.params, matches, kind);
        } catch (const SingularInformationError&) {
            out.std_errors.reset();
        }
    }
    return out;
}

std::vector<double> standard_errors(const ModelParams& params,
                                    std::span<const MatchObservation> matches, ModelKind kind) {
    params.validate();
    check_matches(matches);
    const int k = kind == ModelKind::DixonColes ? 4 : 3;
    std::vector<double> x0{params.beta0, params.beta1, params.beta2, params.rho};

    auto ll = [&](const std::vector<double>& x) {
        const ModelParams p{x[0], x[1], x[2], x[3], params.elo_mean, params.elo_sd};
        std::size_t bad = InvalidRhoError::npos;
        const double v = log_likelihood_impl(p, matches, bad);
        if (bad != InvalidRhoError::npos)
            throw SingularInformationError("finite-difference step leaves the rho domain");
        return v;
    };

    std::vector<double> h(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) h[static_cast<std::size_t>(i)] = 1e-4 * std::max(1.0, std::abs(x0[static_cast<std::size_t>(i)]));

    Eigen::MatrixXd hess(k, k);
    const double f0 = ll(x0);
    for (int i = 0; i < k; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        auto xp = x0, xm = x0;
        xp[ui] += h[ui];
        xm[ui] -= h[ui];
        hess(i, i) = (ll(xp) - 2.0 * f0 + ll(xm)) / (h[ui] * h[ui]);
        for (int j = i + 1; j < k; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            auto pp = x0, pm = x0, mp = x0, mm = x0;
            pp[ui] += h[ui]; pp[uj] += h[uj];
            pm[ui] += h[ui]; pm[uj] -= h[uj];
            mp[ui] -= h[ui]; mp[uj] += h[uj];
            mm[ui] -= h[ui]; mm[uj] -= h[uj];
            hess(i, j) = hess(j, i) = (ll(pp) - ll(pm) - ll(mp) + ll(mm)) / (4.0 * h[ui] * h[uj]);
        }
    }

    const Eigen::MatrixXd info = -hess;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-12 * ldlt.vectorD().maxCoeff())
        throw SingularInformationError("observed information is not positive definite");
    const Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    std::vector<double> se(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (!(cov(i, i) > 0.0)) throw SingularInformationError("non-positive variance");
        se[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
    }
    return se;
}

}  // namespace irrsim
