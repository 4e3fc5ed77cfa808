#pragma once

// Randomised property checks shared by the property suite and the
// acceptance gate. Each returns an empty string on success, otherwise a
// description of the first counterexample.

#include <innocent/semantics.hpp>

#include "oracles/generators.hpp"

#include <random>
#include <sstream>

namespace props {

using namespace innocent;
using arena::ExtendedMove;
using arena::Play;
using arena::Position;

inline Position random_position(std::mt19937& rng)
{
    std::vector<std::string> chans{"a", "b"};
    std::vector<std::pair<std::string, std::vector<std::string>>> players;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) {
        // ports of a player are distinct
        std::vector<std::string> ports{chans[rng() % 2]};
        if (rng() % 2)
            ports.push_back(ports[0] == "a" ? "b" : "a");
        players.push_back({"p" + std::to_string(j), ports});
    }
    return Position::build(chans, players);
}

inline std::vector<ExtendedMove> any_moves(const Position& x)
{
    auto ms = arena::applicable_moves(x, arena::MoveClass::Full);
    for (auto& m : arena::applicable_moves(x, arena::MoveClass::ClosedWorld))
        if (m.kind.type == arena::MoveType::Synch)
            ms.push_back(m);
    return ms;
}

inline Play random_play(std::mt19937& rng, int len)
{
    Play u(random_position(rng));
    for (int k = 0; k < len; ++k) {
        auto ms = any_moves(u.final());
        if (ms.empty())
            break;
        u = arena::apply_move(u, ms[rng() % ms.size()]);
    }
    return u;
}

inline std::string steps(const Play& u)
{
    return u.length() ? u.key() : "(empty)";
}

inline std::string functoriality(std::uint32_t seed, int cases)
{
    std::mt19937 rng(seed);
    for (int k = 0; k < cases; ++k) {
        auto u = random_play(rng, 1 + static_cast<int>(rng() % 4));
        auto e = u.embedding();
        bool ok = presheaf::check_functorial(*u.glued()).empty() &&
                  presheaf::check_functorial(*u.final().presheaf()).empty() && e.is_natural() && e.is_mono();
        if (ok && u.length() > 0) {
            auto cs = arena::move_cospan(u.steps().back().kind);
            ok = presheaf::check_functorial(*cs.move).empty() && cs.initial_leg.is_natural() &&
                 cs.final_leg.is_natural();
        }
        if (!ok)
            return "not functorial: " + steps(u);
    }
    return {};
}

inline bool disjoint(const ExtendedMove& a, const ExtendedMove& b)
{
    for (const auto& p : a.players)
        for (const auto& q : b.players)
            if (p == q)
                return false;
    return true;
}

inline std::string confluence(std::uint32_t seed, int cases)
{
    std::mt19937 rng(seed);
    int checked = 0;
    for (int k = 0; k < cases; ++k) {
        auto u = random_play(rng, static_cast<int>(rng() % 3));
        auto ms = any_moves(u.final());
        auto a = ms[rng() % ms.size()];
        std::vector<ExtendedMove> others;
        for (const auto& m : ms)
            if (disjoint(a, m))
                others.push_back(m);
        if (others.empty())
            continue;
        auto b = others[rng() % others.size()];
        auto ab = arena::apply_move(arena::apply_move(u, a), b);
        auto ba = arena::apply_move(arena::apply_move(u, b), a);
        if (ab.key() != ba.key() || !arena::play_iso(ab, ba))
            return "order matters after " + steps(u) + ": " + arena::describe(a) + " / " + arena::describe(b);
        ++checked;
    }
    if (checked < cases / 2)
        return "too few independent pairs";
    return {};
}

// Also counts views where the literal (k+1)i bound is not yet stable.
inline std::string stabilisation(std::uint32_t seed, int cases, int* literal_misses = nullptr)
{
    std::mt19937 rng(seed);
    int misses = 0;
    for (int k = 0; k < cases; ++k) {
        auto src = gen::random_recursive_source(rng);
        auto p = ccs::parse_program(src);
        auto f = strategy::translate(p);
        auto v = gen::random_view(rng, 2, static_cast<int>(rng() % 5));
        auto defs = p.defs->size();
        int fuel = strategy::default_fuel(defs, v.size());
        auto stable = strategy::eval(f, v, fuel);
        if (!(stable == strategy::eval(f, v, fuel + 3)))
            return "not stable: " + src;
        int literal = static_cast<int>((defs + 1) * v.size());
        if (!(strategy::eval(f, v, literal) == stable))
            ++misses;
    }
    if (literal_misses)
        *literal_misses = misses;
    return {};
}

inline std::string monotone(std::uint32_t seed, int cases)
{
    std::mt19937 rng(seed);
    for (int k = 0; k < cases; ++k) {
        strategy::StrategyPtr f;
        std::string src;
        if (k % 2) {
            src = gen::random_recursive_source(rng);
            f = strategy::translate(ccs::parse_program(src));
        } else {
            auto t = gen::random_term(rng, 2, 8);
            src = ccs::print(t, {"a", "b"});
            f = strategy::translate(gen::program(t, {"a", "b"}, false));
        }
        auto v = gen::random_view(rng, 2, static_cast<int>(rng() % 5));
        if (!strategy::eval(f, v).monotone())
            return "restriction not monotone: " + src;
    }
    // behaviours: every restriction lands in the parent's states
    for (int k = 0; k < cases / 10; ++k) {
        auto t = gen::random_term(rng, 1, 6);
        auto p = gen::program(t, {"a"}, false);
        auto x = semantics::process_position(p.channels);
        auto b = semantics::gl(strategy::amalgamate(x, {{"p", strategy::translate(p)}}), x, 4);
        for (const auto& e : b.entries)
            for (const auto& [parent, map] : e.restrictions) {
                bool ok = map.size() == e.states.size();
                for (auto s : map)
                    ok = ok && s < b.entries[parent].states.size();
                if (!ok)
                    return "bad restriction in the behaviour of " + ccs::print(t, {"a"});
            }
    }
    return {};
}

inline semantics::Outcome verdict(const ccs::Program& p, const std::string& pl, const ccs::Program& t,
                                  const std::string& tl, semantics::Criterion c)
{
    return semantics::orthogonal(strategy::translate(p), semantics::process_position(p.channels, pl),
                                 strategy::translate(t), semantics::process_position(t.channels, tl),
                                 *t.interface, c)
        .outcome;
}

inline std::string iso_invariance(std::uint32_t seed, int cases)
{
    std::mt19937 rng(seed);
    for (int k = 0; k < cases; ++k) {
        auto pt = gen::random_term(rng, 2, 6);
        auto tt = gen::random_term(rng, 2, 4);
        auto p = gen::program(pt, {"a", "b"}, false);
        auto t = gen::program(tt, {"a", "b"}, true);
        // the same processes with channels listed the other way round and renamed
        auto p2 = ccs::parse_program("channels v u\n" + ccs::print(pt, {"u", "v"}));
        auto t2 = ccs::parse_program("channels v u\ninterface u v\n" + ccs::print(tt, {"u", "v"}));
        for (auto c : {semantics::Criterion::Fair, semantics::Criterion::Must})
            if (verdict(p, "p", t, "q", c) != verdict(p2, "r", t2, "s", c))
                return "verdict changes under renaming: " + ccs::print(pt, {"a", "b"}) + " against " +
                       ccs::print(tt, {"a", "b"});
    }
    return {};
}

}  // namespace props
