#include "irrsim/draw.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "irrsim/errors.hpp"

namespace irrsim {

void PotAssignment::validate() const {
    std::unordered_set<std::string> seen;
    for (int p = 0; p < kPotCount; ++p) {
        const auto& pot = pots[static_cast<std::size_t>(p)];
        if (pot.size() != kPotSize)
            throw InvalidArgument("pot " + std::to_string(p + 1) + " has " +
                                  std::to_string(pot.size()) + " teams, expected 9");
        for (const auto& id : pot) {
            if (id.empty()) throw InvalidArgument("empty team key in pot " + std::to_string(p + 1));
            if (!seen.insert(id).second) throw InvalidArgument("team '" + id + "' appears in two pot slots");
        }
    }
}

PotAssignment PotAssignment::from_teams(std::span<const TeamRecord> teams) {
    PotAssignment out;
    for (const auto& t : teams) {
        if (!t.pot) throw InvalidArgument("team '" + t.team_id + "' has no pot");
        if (*t.pot < 1 || *t.pot > kPotCount) throw InvalidArgument("team '" + t.team_id + "': bad pot");
        out.pots[static_cast<std::size_t>(*t.pot - 1)].push_back(t.team_id);
    }
    out.validate();
    return out;
}

int PotAssignment::pot_of(std::string_view team_id) const {
    for (int p = 0; p < kPotCount; ++p)
        for (const auto& id : pots[static_cast<std::size_t>(p)])
            if (id == team_id) return p + 1;
    return 0;
}

namespace {

constexpr int kMaxAttempts = 10000;

// Two perfect matchings between pots p and q with no common edge.
void pot_pair_fixtures(int p, int q, Rng& rng, std::vector<IndexFixture>& out) {
    std::array<int, kPotSize> first{}, second{};
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::iota(first.begin(), first.end(), 0);
        std::iota(second.begin(), second.end(), 0);
        rng.shuffle(std::span<int>(first));
        rng.shuffle(std::span<int>(second));
        bool clash = false;
        for (int i = 0; i < kPotSize && !clash; ++i) clash = first[i] == second[i];
        if (clash) continue;
        for (int i = 0; i < kPotSize; ++i) {
            out.emplace_back(p * kPotSize + i, q * kPotSize + first[static_cast<std::size_t>(i)]);
            out.emplace_back(q * kPotSize + second[static_cast<std::size_t>(i)], p * kPotSize + i);
        }
        return;
    }
    throw GenerationFailure("could not draw disjoint matchings between pots " + std::to_string(p + 1) +
                            " and " + std::to_string(q + 1));
}

// Random 2-regular simple graph on the pot via the configuration model, each
// cycle oriented in one direction so every team has one home and one away.
void within_pot_fixtures(int p, Rng& rng, std::vector<IndexFixture>& out) {
    std::array<int, 2 * kPotSize> stubs{};
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        for (int i = 0; i < 2 * kPotSize; ++i) stubs[static_cast<std::size_t>(i)] = i / 2;
        rng.shuffle(std::span<int>(stubs));

        std::array<std::array<int, 2>, kPotSize> adj{};
        std::array<int, kPotSize> deg{};
        bool ok = true;
        for (int e = 0; e < kPotSize && ok; ++e) {
            const int a = stubs[static_cast<std::size_t>(2 * e)];
            const int b = stubs[static_cast<std::size_t>(2 * e + 1)];
            if (a == b) {
                ok = false;
                break;
            }
            auto& da = deg[static_cast<std::size_t>(a)];
            if (da == 1 && adj[static_cast<std::size_t>(a)][0] == b) {
                ok = false;
                break;
            }
            adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(da++)] = b;
            adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(deg[static_cast<std::size_t>(b)]++)] = a;
        }
        if (!ok) continue;

        std::array<bool, kPotSize> visited{};
        for (int s = 0; s < kPotSize; ++s) {
            if (visited[static_cast<std::size_t>(s)]) continue;
            const bool forward = rng.below(2) == 0;
            int prev = s, cur = adj[static_cast<std::size_t>(s)][0];
            visited[static_cast<std::size_t>(s)] = true;
            auto emit = [&](int from, int to) {
                if (forward)
                    out.emplace_back(p * kPotSize + from, p * kPotSize + to);
                else
                    out.emplace_back(p * kPotSize + to, p * kPotSize + from);
            };
            emit(prev, cur);
            while (cur != s) {
                visited[static_cast<std::size_t>(cur)] = true;
                const auto& nb = adj[static_cast<std::size_t>(cur)];
                const int next = nb[0] == prev ? nb[1] : nb[0];
                emit(cur, next);
                prev = cur;
                cur = next;
            }
        }
        return;
    }
    throw GenerationFailure("could not draw within-pot cycles for pot " + std::to_string(p + 1));
}

}  // namespace

std::vector<IndexFixture> generate_index_fixtures(Rng& rng) {
    std::vector<IndexFixture> out;
    out.reserve(kLeagueFixtures);
    for (int p = 0; p < kPotCount; ++p) {
        within_pot_fixtures(p, rng, out);
        for (int q = p + 1; q < kPotCount; ++q) pot_pair_fixtures(p, q, rng, out);
    }
    return out;
}

Schedule generate_schedule(const PotAssignment& pots, Rng& rng) {
    pots.validate();
    Schedule s;
    s.fixtures.reserve(kLeagueFixtures);
    auto key = [&](int idx) -> const std::string& {
        return pots.pots[static_cast<std::size_t>(idx / kPotSize)][static_cast<std::size_t>(idx % kPotSize)];
    };
    for (const auto& [h, a] : generate_index_fixtures(rng)) s.fixtures.push_back({key(h), key(a)});
    std::sort(s.fixtures.begin(), s.fixtures.end());
    return s;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::UnknownTeam: return "unknown-team";
        case ViolationKind::SelfMatch: return "self-match";
        case ViolationKind::DuplicatePairing: return "duplicate-pairing";
        case ViolationKind::MatchCount: return "match-count";
        case ViolationKind::HomeAwaySplit: return "home-away-split";
        case ViolationKind::PotQuota: return "pot-quota";
        case ViolationKind::PotOrientation: return "pot-orientation";
        case ViolationKind::SameAssociation: return "same-association";
    }
    return "unknown";
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const PotAssignment& pots) {
    std::vector<Violation> out;
    std::unordered_map<std::string, int> pot_of;
    for (int p = 0; p < kPotCount; ++p)
        for (const auto& id : pots.pots[static_cast<std::size_t>(p)]) pot_of[id] = p + 1;

    struct Tally {
        int home = 0;
        int away = 0;
        std::array<int, kPotCount> home_vs{};
        std::array<int, kPotCount> away_vs{};
    };
    std::map<std::string, Tally> tally;
    for (const auto& [id, p] : pot_of) tally[id];

    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& f : schedule.fixtures) {
        if (f.home_id == f.away_id) {
            out.push_back({ViolationKind::SelfMatch, f.home_id, f.away_id, "team plays itself"});
            continue;
        }
        bool known = true;
        for (const auto* id : {&f.home_id, &f.away_id})
            if (!pot_of.contains(*id)) {
                out.push_back({ViolationKind::UnknownTeam, *id, "", "team is in no pot"});
                known = false;
            }
        if (!known) continue;
        const auto key = std::minmax(f.home_id, f.away_id);
        if (!pairs.emplace(key.first, key.second).second)
            out.push_back({ViolationKind::DuplicatePairing, key.first, key.second, "pair meets more than once"});
        auto& th = tally[f.home_id];
        auto& ta = tally[f.away_id];
        ++th.home;
        ++ta.away;
        ++th.home_vs[static_cast<std::size_t>(pot_of[f.away_id] - 1)];
        ++ta.away_vs[static_cast<std::size_t>(pot_of[f.home_id] - 1)];
    }

    for (const auto& [id, t] : tally) {
        if (t.home + t.away != kMatchesPerTeam)
            out.push_back({ViolationKind::MatchCount, id, "",
                           std::to_string(t.home + t.away) + " matches, expected 8"});
        if (t.home != kPotCount || t.away != kPotCount)
            out.push_back({ViolationKind::HomeAwaySplit, id, "",
                           std::to_string(t.home) + " home / " + std::to_string(t.away) + " away, expected 4/4"});
        for (int p = 0; p < kPotCount; ++p) {
            const int h = t.home_vs[static_cast<std::size_t>(p)];
            const int a = t.away_vs[static_cast<std::size_t>(p)];
            if (h + a != 2)
                out.push_back({ViolationKind::PotQuota, id, std::to_string(p + 1),
                               std::to_string(h + a) + " opponents from pot " + std::to_string(p + 1) + ", expected 2"});
            else if (h != 1)
                out.push_back({ViolationKind::PotOrientation, id, std::to_string(p + 1),
                               std::to_string(h) + " home / " + std::to_string(a) + " away against pot " +
                                   std::to_string(p + 1) + ", expected 1/1"});
        }
    }
    return out;
}

std::vector<Violation> association_notes(const Schedule& schedule, std::span<const TeamRecord> teams) {
    std::unordered_map<std::string, std::string> assoc;
    for (const auto& t : teams)
        if (!t.association.empty()) assoc[t.team_id] = t.association;
    std::vector<Violation> out;
    for (const auto& f : schedule.fixtures) {
        const auto h = assoc.find(f.home_id);
        const auto a = assoc.find(f.away_id);
        if (h != assoc.end() && a != assoc.end() && h->second == a->second)
            out.push_back({ViolationKind::SameAssociation, f.home_id, f.away_id,
                           "both teams from association " + h->second});
    }
    return out;
}

}  // namespace irrsim
