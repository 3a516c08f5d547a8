#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "irrsim/errors.hpp"
#include "irrsim/scoreline_model.hpp"
#include "oracles.hpp"

using namespace irrsim;

namespace {
const ModelParams kTable5{0.225, 0.207, 0.220, 0.0, 1778.0, 143.0};
const ModelParams kTable6{0.242, 0.286, 0.301, 0.105, 1778.0, 143.0};
}  // namespace

TEST_CASE("standardize_elo examples") {
    CHECK(standardize_elo(1778, 1778, 143) == 0.0);
    CHECK(standardize_elo(1921, 1778, 143) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(standardize_elo(1404.05, 1778, 143) == doctest::Approx(-2.6150349650349654).epsilon(1e-14));
}

TEST_CASE("standardize_elo errors") {
    CHECK_THROWS_AS(standardize_elo(1500, 1500, 0.0), InvalidArgument);
    CHECK_THROWS_AS(standardize_elo(1500, 1500, -1.0), InvalidArgument);
    CHECK_THROWS_AS(standardize_elo(std::nan(""), 1500, 100), InvalidArgument);
    CHECK_THROWS_AS(standardize_elo(std::numeric_limits<double>::infinity(), 1500, 100), InvalidArgument);
}

TEST_CASE("expected_goals examples") {
    const auto t5 = expected_goals(kTable5, 1800, 1800);
    CHECK(t5.lambda == doctest::Approx(1.56).epsilon(0.005 / 1.56));
    CHECK(t5.mu == doctest::Approx(1.25).epsilon(0.005 / 1.25));
    CHECK(t5.lambda == doctest::Approx(1.5604901958326667).epsilon(1e-14));
    CHECK(t5.mu == doctest::Approx(1.2523227161918644).epsilon(1e-14));

    const auto t6 = expected_goals(kTable6, 1650, 1650);
    CHECK(t6.lambda == doctest::Approx(1.7211626125301187).epsilon(1e-14));
    CHECK(t6.mu == doctest::Approx(1.2737941928161949).epsilon(1e-14));

    ModelParams flat = kTable6;
    flat.beta1 = 0.0;
    for (auto [h, a] : {std::pair{1400.0, 2000.0}, {2000.0, 1400.0}, {1700.0, 1700.0}}) {
        const auto r = expected_goals(flat, h, a);
        CHECK(r.lambda == doctest::Approx(std::exp(flat.beta0 + flat.beta2)));
        CHECK(r.mu == doctest::Approx(std::exp(flat.beta0)));
    }
}

TEST_CASE("expected_goals depends only on the Elo difference") {
    const auto a = expected_goals(kTable6, 1900, 1700);
    ModelParams shifted = kTable6;
    shifted.elo_mean = 0.0;
    const auto b = expected_goals(shifted, 1900, 1700);
    CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-13));
    CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-13));
}

TEST_CASE("expected_goals overflow is a numeric-range error") {
    ModelParams p{700.0, 0.0, 100.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(expected_goals(p, 0, 0), NumericRangeError);
}

TEST_CASE("expected_goals monotone in home Elo") {
    double prev_lambda = 0.0, prev_mu = 1e9;
    for (double h = 1300; h <= 2100; h += 25) {
        const auto r = expected_goals(kTable6, h, 1778);
        CHECK(r.lambda > prev_lambda);
        CHECK(r.mu < prev_mu);
        prev_lambda = r.lambda;
        prev_mu = r.mu;
    }
}

TEST_CASE("tau examples") {
    const GoalRates r{1.721, 1.274};
    CHECK(tau(1, 1, r, 0.105) == doctest::Approx(0.895).epsilon(1e-15));
    CHECK(tau(0, 0, r, 0.105) == doctest::Approx(1.0 - 1.721 * 1.274 * 0.105).epsilon(1e-15));
    CHECK(tau(0, 0, r, 0.105) == doctest::Approx(0.770).epsilon(0.001 / 0.77));
    CHECK(tau(0, 1, r, 0.105) == doctest::Approx(1.0 + 1.721 * 0.105));
    CHECK(tau(1, 0, r, 0.105) == doctest::Approx(1.0 + 1.274 * 0.105));
    CHECK(tau(3, 2, r, 0.105) == 1.0);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(tau(x, y, r, 0.0) == 1.0);
}

TEST_CASE("tau negativity is an invalid-rho error") {
    const GoalRates r{2.0, 2.0};
    CHECK_THROWS_AS(tau(0, 0, r, 0.5), InvalidRhoError);
    CHECK_THROWS_AS(tau(0, 1, r, -0.6), InvalidRhoError);
    CHECK_THROWS_AS(tau(1, 1, r, 1.5), InvalidRhoError);
    // Exactly at the bound the factor is zero, not a rounding-level negative.
    const GoalRates odd{1.6, 1.2};
    CHECK(tau(0, 0, odd, rho_bounds(odd).hi) == 0.0);
    CHECK_THROWS_AS(tau(-1, 0, r, 0.0), InvalidArgument);
}

TEST_CASE("rho_bounds examples") {
    auto b = rho_bounds({1.0, 1.0});
    CHECK(b.lo == -1.0);
    CHECK(b.hi == 1.0);

    b = rho_bounds({1.7211626125301187, 1.2737941928161949});
    CHECK(b.lo == doctest::Approx(-0.5810026273636019).epsilon(1e-14));
    CHECK(b.hi == doctest::Approx(0.4561197017856392).epsilon(1e-14));
    CHECK(b.lo == doctest::Approx(-0.581).epsilon(0.0005 / 0.581));
    CHECK(b.hi == doctest::Approx(0.456).epsilon(0.0005 / 0.456));

    b = rho_bounds({0.5, 0.5});
    CHECK(b.lo == -2.0);
    CHECK(b.hi == 1.0);
}

TEST_CASE("tau is non-negative throughout rho_bounds") {
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const GoalRates r{0.2 + 3.0 * rng.uniform(), 0.2 + 3.0 * rng.uniform()};
        const auto b = rho_bounds(r);
        CHECK(b.lo < b.hi);
        for (double rho : {b.lo, b.hi, b.lo + (b.hi - b.lo) * rng.uniform()})
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) CHECK(tau(x, y, r, rho) >= -1e-15);
    }
}

TEST_CASE("scoreline_prob examples") {
    const GoalRates unit{1.0, 1.0};
    CHECK(scoreline_prob(0, 0, unit, 0.0) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
    CHECK(scoreline_prob(1, 1, unit, 0.1) == doctest::Approx(0.12180175491295143).epsilon(1e-14));

    double total = 0.0;
    for (int x = 0; x <= 40; ++x)
        for (int y = 0; y <= 40; ++y) total += scoreline_prob(x, y, unit, 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("scoreline_prob equals the Poisson product when rho is zero") {
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const GoalRates r{0.1 + 3.5 * rng.uniform(), 0.1 + 3.5 * rng.uniform()};
        const int x = static_cast<int>(rng.below(9)), y = static_cast<int>(rng.below(9));
        const double expected = oracle::poisson_pmf(x, r.lambda) * oracle::poisson_pmf(y, r.mu);
        CHECK(scoreline_prob(x, y, r, 0.0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(scoreline_prob(x, y, r, 0.0) == poisson_pmf(x, r.lambda) * poisson_pmf(y, r.mu));
    }
}

TEST_CASE("poisson_pmf matches repeated multiplication") {
    for (double rate : {0.3, 1.0, 1.7, 4.2})
        for (int k = 0; k <= 15; ++k)
            CHECK(poisson_pmf(k, rate) == doctest::Approx(oracle::poisson_pmf(k, rate)).epsilon(1e-12));
    CHECK(poisson_pmf(-1, 1.0) == 0.0);
}

TEST_CASE("scoreline_matrix examples") {
    const auto m = scoreline_matrix({1.0, 1.0}, 0.0, 10);
    const auto probs = m.probs();
    CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.at(0, 0) == doctest::Approx(0.1353352832366127).epsilon(1e-7));

    const auto sym = scoreline_matrix({1.4, 1.4}, 0.0, 10);
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) CHECK(sym.at(x, y) == doctest::Approx(sym.at(y, x)).epsilon(1e-15));

    CHECK_THROWS_AS(scoreline_matrix({1.0, 1.0}, 0.0, 4), InvalidArgument);
    CHECK_THROWS_AS(scoreline_matrix({2.0, 2.0}, 0.5, 10), InvalidRhoError);
}

TEST_CASE("outcome_probs examples") {
    const auto t5 = expected_goals(kTable5, 1800, 1800);
    const auto o = outcome_probs(scoreline_matrix(t5, 0.0, 10));
    // Exact enumeration of the published coefficients, cross-checked by the
    // independent oracle.
    const auto ref = oracle::outcome_probs({t5.lambda, t5.mu}, 0.0, 10);
    CHECK(o.home == doctest::Approx(ref[0]).epsilon(1e-12));
    CHECK(o.draw == doctest::Approx(ref[1]).epsilon(1e-12));
    CHECK(o.away == doctest::Approx(ref[2]).epsilon(1e-12));
    CHECK(o.draw == doctest::Approx(0.249).epsilon(0.002 / 0.249));
    CHECK(o.away == doctest::Approx(0.308).epsilon(0.002 / 0.308));
    CHECK(o.home + o.draw + o.away == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> point(121, 0.0);
    point[0] = 1.0;
    const auto d = outcome_probs(ScorelineMatrix(10, point));
    CHECK(d.home == 0.0);
    CHECK(d.draw == 1.0);
    CHECK(d.away == 0.0);

    const auto s = outcome_probs(scoreline_matrix({1.3, 1.3}, 0.0));
    CHECK(s.home == doctest::Approx(s.away).epsilon(1e-14));
}

TEST_CASE("matrix normalisation holds for random rates and rho") {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const GoalRates r{0.2 + 3.0 * rng.uniform(), 0.2 + 3.0 * rng.uniform()};
        const auto b = rho_bounds(r);
        const double rho = b.lo + (b.hi - b.lo) * rng.uniform();
        const auto m = scoreline_matrix(r, rho, 5 + static_cast<int>(rng.below(10)));
        double total = 0.0;
        for (double p : m.probs()) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("raising rho moves mass between the four corrected cells only") {
    const GoalRates r{1.6, 1.2};
    const auto b = rho_bounds(r);
    double prev00 = 2, prev11 = 2, prev01 = -1, prev10 = -1;
    for (int i = 0; i <= 20; ++i) {
        const double rho = b.lo + (b.hi - b.lo) * i / 20.0;
        const double p00 = scoreline_prob(0, 0, r, rho), p11 = scoreline_prob(1, 1, r, rho);
        const double p01 = scoreline_prob(0, 1, r, rho), p10 = scoreline_prob(1, 0, r, rho);
        CHECK(p00 <= prev00);
        CHECK(p11 <= prev11);
        CHECK(p01 >= prev01);
        CHECK(p10 >= prev10);
        prev00 = p00, prev11 = p11, prev01 = p01, prev10 = p10;
        CHECK(scoreline_prob(2, 1, r, rho) == scoreline_prob(2, 1, r, 0.0));
        CHECK(scoreline_prob(0, 2, r, rho) == scoreline_prob(0, 2, r, 0.0));
    }
}

TEST_CASE("truncation at the default limit barely moves outcome probabilities") {
    // Most lopsided pairing the bundled league can produce under the fitted
    // coefficients: about 6.4 expected home goals. The tail beyond ten goals
    // is several percent there, but renormalising leaves the outcome split
    // almost unchanged.
    const GoalRates extreme{6.42, 0.36};
    const auto coarse = outcome_probs(scoreline_matrix(extreme, 0.1, kDefaultMaxGoals));
    const auto fine = outcome_probs(scoreline_matrix(extreme, 0.1, 40));
    CHECK(std::abs(coarse.draw - fine.draw) < 2e-3);
    CHECK(std::abs(coarse.home - fine.home) < 5e-3);

    double unit = 0.0;
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) unit += scoreline_prob(x, y, {1.0, 1.0}, 0.0);
    CHECK(1.0 - unit < 1e-7);
}

TEST_CASE("sample_scoreline examples") {
    std::vector<double> point(121, 0.0);
    point[2 * 11 + 1] = 1.0;
    const ScorelineMatrix m(10, point);
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) CHECK(sample_scoreline(m, rng) == Scoreline{2, 1});

    const auto mat = scoreline_matrix({1.7, 1.3}, 0.1);
    const ScorelineSampler sampler(mat);
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) CHECK(sampler(a) == sampler(b));
}

TEST_CASE("sampler frequencies match the matrix within 4 sigma") {
    const auto mat = scoreline_matrix({1.7, 1.3}, 0.1, 10);
    const ScorelineSampler sampler(mat);
    Rng rng(2024);
    const int n = 1'000'000;
    std::vector<int> counts(121, 0);
    for (int i = 0; i < n; ++i) {
        const auto s = sampler(rng);
        ++counts[static_cast<std::size_t>(s.home_goals * 11 + s.away_goals)];
    }
    int failures = 0;
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) {
            const double p = mat.at(x, y);
            const double sigma = std::sqrt(n * p * (1 - p));
            if (std::abs(counts[static_cast<std::size_t>(x * 11 + y)] - n * p) > 4 * sigma + 1e-9) ++failures;
        }
    CHECK(failures == 0);
}

TEST_CASE("matrix constructor rejects bad input") {
    CHECK_THROWS_AS(ScorelineMatrix(10, std::vector<double>(120, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(ScorelineMatrix(10, std::vector<double>(121, 0.0)), InvalidArgument);
    std::vector<double> neg(121, 1.0);
    neg[3] = -0.5;
    CHECK_THROWS_AS(ScorelineMatrix(10, neg), InvalidArgument);
}
