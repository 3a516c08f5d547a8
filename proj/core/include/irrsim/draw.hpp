#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irrsim/domain.hpp"
#include "irrsim/rng.hpp"

namespace irrsim {

inline constexpr int kPotSize = 9;
inline constexpr int kLeagueTeams = kPotCount * kPotSize;
inline constexpr int kMatchesPerTeam = 2 * kPotCount;
inline constexpr int kLeagueFixtures = kLeagueTeams * kMatchesPerTeam / 2;

// Four seeding pots of nine team keys each.
struct PotAssignment {
    std::array<std::vector<std::string>, kPotCount> pots;

    void validate() const;

    // Builds pots from the `pot` field of each team; every team must have one.
    static PotAssignment from_teams(std::span<const TeamRecord> teams);

    // 1-based pot of a team key, or 0 if the key is not assigned.
    int pot_of(std::string_view team_id) const;
};

// Oriented pairings over team indices 0..35 where index = 9*(pot-1) + slot.
// This is the allocation-free core used by the Monte Carlo engine.
using IndexFixture = std::pair<int, int>;  // (home, away)
std::vector<IndexFixture> generate_index_fixtures(Rng& rng);

// Random schedule in which every team meets two opponents from each pot, one
// at home and one away, and no pair meets twice. Fixtures come out sorted.
Schedule generate_schedule(const PotAssignment& pots, Rng& rng);

enum class ViolationKind {
    UnknownTeam,
    SelfMatch,
    DuplicatePairing,
    MatchCount,
    HomeAwaySplit,
    PotQuota,
    PotOrientation,
    SameAssociation,  // informational only
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string team_id;
    std::string other_id;  // second team, or the pot number for pot checks
    std::string detail;
};

std::vector<Violation> validate_schedule(const Schedule& schedule, const PotAssignment& pots);

// Same-association pairings. These never invalidate a schedule.
std::vector<Violation> association_notes(const Schedule& schedule, std::span<const TeamRecord> teams);

}  // namespace irrsim
