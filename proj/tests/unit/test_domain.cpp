#include <doctest.h>

#include <cmath>
#include <limits>

#include "irrsim/domain.hpp"
#include "irrsim/errors.hpp"
#include "irrsim/rng.hpp"

using namespace irrsim;

TEST_CASE("team record validation") {
    TeamRecord t{"mc", "Manchester City", 2050.57, 1, "ENG"};
    CHECK_NOTHROW(t.validate());

    t.pot = 5;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
    t.pot = std::nullopt;
    CHECK_NOTHROW(t.validate());

    t.elo = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(t.validate(), InvalidArgument);

    TeamRecord unnamed{"", "x", 1500.0, {}, ""};
    CHECK_THROWS_AS(unnamed.validate(), InvalidArgument);
}

TEST_CASE("match observation validation") {
    MatchObservation m{"a", "b", 2, 1, 1800.0, 1700.0};
    CHECK_NOTHROW(m.validate());

    auto same = m;
    same.away_id = "a";
    CHECK_THROWS_AS(same.validate(), InvalidArgument);

    auto negative = m;
    negative.home_goals = -1;
    CHECK_THROWS_AS(negative.validate(), InvalidArgument);
}

TEST_CASE("fixture validation and ordering") {
    const Fixture ok{"a", "b"};
    CHECK_NOTHROW(ok.validate());
    const Fixture self{"a", "a"};
    CHECK_THROWS_AS(self.validate(), InvalidArgument);
    CHECK(Fixture{"a", "b"} < Fixture{"a", "c"});
    CHECK(Fixture{"a", "z"} < Fixture{"b", "a"});
}

TEST_CASE("model params validation") {
    ModelParams p{0.242, 0.286, 0.301, 0.105, 1778.0, 143.0};
    CHECK_NOTHROW(p.validate());
    p.elo_sd = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.elo_sd = 143.0;
    p.rho = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("cutoff names round-trip") {
    for (Cutoff c : {Cutoff::RoundOf16, Cutoff::Playoff}) CHECK(cutoff_from_string(to_string(c)) == c);
    CHECK(to_string(Cutoff::RoundOf16) == "ROUND_OF_16");
    CHECK(to_string(Cutoff::Playoff) == "PLAYOFF");
    CHECK_FALSE(cutoff_from_string("TOP_8").has_value());
}

TEST_CASE("standings row played count") {
    StandingsRow r{"a", 13, 4, 1, 3, 10, 8};
    CHECK(r.played() == 8);
}

TEST_CASE("rng determinism and seed derivation") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
    }
    CHECK(Rng(42)() != Rng(43)());

    CHECK(child_seed(1, 0) == child_seed(1, 0));
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK(child_seed(1, 0) != child_seed(2, 0));

    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(r.below(9) < 9u);
    }
}

TEST_CASE("rng below is roughly uniform") {
    Rng r(11);
    std::array<int, 6> counts{};
    const int n = 60000;
    for (int i = 0; i < n; ++i) ++counts[r.below(6)];
    for (int c : counts) CHECK(std::abs(c - n / 6) < 5 * std::sqrt(n / 6.0));
}
