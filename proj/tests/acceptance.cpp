// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <innocent/semantics.hpp>

#include "oracles/ccs_oracle.hpp"
#include "oracles/generators.hpp"
#include "oracles/hom_oracle.hpp"
#include "oracles/properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace innocent;
using arena::Play;
using arena::Position;
using semantics::Criterion;
using semantics::Outcome;

namespace {

struct Result {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<Result()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool timely = limit_s <= 0 || s < limit_s;
    bool ok = r.ok && timely;
    if (!ok)
        ++failures;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", s);
    std::cout << "[" << (ok ? "PASS" : "FAIL") << "] " << id << ". " << title << ": " << r.detail << " (" << secs;
    if (!timely)
        std::cout << ", over the " << limit_s << "s limit";
    std::cout << ")" << std::endl;
}

Result hom_sets()
{
    using namespace cat;
    auto objs = oracle::small_objects(3);
    std::size_t pairs = 0;
    for (const auto& a : objs)
        for (const auto& b : objs) {
            auto h = hom(a, b);
            auto bf = oracle::brute_hom(a, b);
            if (static_cast<int>(h.size()) != bf.count)
                return {false, "count differs on " + to_string(a) + " -> " + to_string(b)};
            std::map<int, Morphism> rep;
            for (std::size_t k = 0; k < bf.paths.size(); ++k) {
                auto nf = normalize(Morphism{a, b, bf.paths[k]});
                auto [it, fresh] = rep.emplace(bf.cls[k], nf);
                if (!fresh && !(it->second == nf))
                    return {false, "normal form splits a class on " + to_string(a) + " -> " + to_string(b)};
            }
            ++pairs;
        }
    for (int n = 0; n <= 3; ++n) {
        if (hom(star(), player(n)).size() != static_cast<std::size_t>(n))
            return {false, "|hom(*, [n])| wrong"};
        if (hom(player(n), fork(n)).size() != 3)
            return {false, "|hom([n], Fork(n))| wrong"};
    }
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < n; ++i)
            for (int m = 1; m <= 3; ++m)
                for (int j = 0; j < m; ++j)
                    if (hom(star(), sync(n, i, m, j)).size() != static_cast<std::size_t>(n + m - 1))
                        return {false, "|hom(*, Sync)| wrong"};
    return {true, std::to_string(pairs) + " object pairs agree with path enumeration"};
}

Result views_of_forking()
{
    using namespace arena;
    Play f(Position::build({"a", "b"}, {{"p", {"a", "b"}}}));
    f = apply_move(f, {fork_move(2), {"p"}});
    std::size_t nontrivial = 0;
    for (const auto& v : views_into(f))
        if (v.play.length() > 0)
            ++nontrivial;

    Play u(Position::build({"a1", "a", "a2"}, {{"p1", {"a1", "a"}}, {"p2", {"a", "a2"}}}));
    u = apply_move(u, {fork_move(2), {"p1"}});
    u = apply_move(u, {fork_move(2), {"p2"}});
    u = apply_move(u, {half_fork_l(2), {"p1.L"}});
    u = apply_move(u, {synch_move(2, 1, 2, 0), {"p1.L.L", "p2.L"}});
    Play h(Position::build({"b", "c"}, {{"r", {"b", "c"}}}));
    h = apply_move(h, {half_fork_l(2), {"r"}});
    auto ways = base_preserving_embeddings(h, u).size();

    std::ostringstream s;
    s << "Fork(2) play has " << nontrivial << " non-trivial views, half-fork embeds in " << ways << " ways";
    return {nontrivial == 2 && ways == 2, s.str()};
}

Result example_ran()
{
    using namespace arena;
    auto x = Position::build({"a"}, {{"x", {"a"}}, {"y", {"a"}}, {"z", {"a"}}});
    auto in = strategy::translate(ccs::parse_term("in a. end", {"a"}), 1, nullptr);
    auto out = strategy::translate(ccs::parse_term("out a. end", {"a"}), 1, nullptr);
    auto f = strategy::amalgamate(x, {{"x", in}, {"y", out}, {"z", out}});
    auto sxy = apply_move(Play(x), {synch_move(1, 0, 1, 0), {"y", "x"}});
    auto sxz = apply_move(Play(x), {synch_move(1, 0, 1, 0), {"z", "x"}});
    auto nxy = semantics::ran_eval(f, sxy).size();
    auto nxz = semantics::ran_eval(f, sxz).size();
    std::size_t plays = 0, positive = 0, wrong = 0;
    for (const auto& u : enumerate_closed_world(x, 3)) {
        auto forest = view_forest(u);
        bool below = true;
        for (int k = 0; k < static_cast<int>(forest.size()); ++k) {
            auto mv = view_moves(forest, k);
            if (mv.empty())
                continue;
            auto want = forest[k].base_player == "x" ? input_move(1, 0) : output_move(1, 0);
            if (mv.size() > 1 || mv[0] != want)
                below = false;
        }
        auto n = semantics::ran_eval(f, u).size();
        positive += n > 0;
        wrong += n != (below ? 1u : 0u);
        ++plays;
    }
    std::ostringstream s;
    s << "|F(S_xy)| = " << nxy << ", |F(S_xz)| = " << nxz << "; " << plays << " closed-world plays, " << positive
      << " with a state, " << wrong << " mismatches";
    return {nxy == 1 && nxz == 1 && wrong == 0, s.str()};
}

Result branching()
{
    auto bad = strategy::translate(ccs::parse_program("channels a b c\nin a. in b. end + in a. in c. end"));
    auto good = strategy::translate(ccs::parse_program("channels a b c\nin a. (in b. end + in c. end)"));
    std::vector<arena::MoveKind> v{arena::input_move(3, 0)};
    auto nb = strategy::eval(bad, v).size();
    auto ng = strategy::eval(good, v).size();
    std::ostringstream s;
    s << "a.b + a.c has " << nb << " states after a, a.(b + c) has " << ng;
    return {nb == 2 && ng == 1, s.str()};
}

Result fair_separation()
{
    auto good = ccs::parse_program("channels a b c\nin a. (in b. end + in c. end)");
    auto bad = ccs::parse_program("channels a b c\nin a. in b. end + in a. in c. end");
    auto t = ccs::parse_program("interface a b c\nout a. out b. tick. end");
    auto x = semantics::process_position(good.channels);
    semantics::Test test{"pay_then_b", strategy::translate(t), semantics::process_position(t.channels, "q"),
                         *t.interface};
    auto cmp = semantics::compare(strategy::translate(good), strategy::translate(bad), x, {test}, Criterion::Fair);
    auto rg = oracle::test(good, t);
    auto rb = oracle::test(bad, t);
    bool oracle_agrees = rg.complete && rb.complete && rg.fair && !rb.fair &&
                         cmp.reports[0].left.outcome == Outcome::Pass &&
                         cmp.reports[0].right.outcome == Outcome::Fail;
    std::ostringstream s;
    s << "relation " << semantics::to_string(cmp.relation) << ", trace oracle "
      << (oracle_agrees ? "agrees" : "disagrees");
    return {cmp.relation == semantics::Relation::Distinguished && oracle_agrees, s.str()};
}

Result fair_is_must()
{
    auto procs = gen::terms_up_to(4, 1);
    auto tests = gen::terms_up_to(3, 1);
    std::size_t pairs = 0, decided = 0, disagree = 0, oracle_fair_mismatch = 0;
    for (const auto& pt : procs) {
        auto p = gen::program(pt, {"a"}, false);
        auto f = strategy::translate(p);
        auto x = semantics::process_position(p.channels);
        for (const auto& tt : tests) {
            auto t = gen::program(tt, {"a"}, true);
            auto g = strategy::translate(t);
            auto y = semantics::process_position(t.channels, "q");
            auto vf = semantics::orthogonal(f, x, g, y, *t.interface, Criterion::Fair).outcome;
            auto vm = semantics::orthogonal(f, x, g, y, *t.interface, Criterion::Must).outcome;
            ++pairs;
            if (vf != Outcome::Unknown && vm != Outcome::Unknown) {
                ++decided;
                disagree += vf != vm;
            }
            auto ref = oracle::test(p, t);
            if (ref.complete && vf != Outcome::Unknown)
                oracle_fair_mismatch += (vf == Outcome::Pass) != ref.fair;
        }
    }
    const std::string head = "channels a\nrec w(b) := out b. w(b), v(b) := in b. v(b) in new b. (w(b) | v(b))";
    auto omega = ccs::parse_program(head);
    auto omega_out = ccs::parse_program(head + " | out a. end");
    auto t = ccs::parse_program("interface a\nin a. tick. end");
    auto x = semantics::process_position(omega.channels);
    semantics::Test test{"listen", strategy::translate(t), semantics::process_position(t.channels, "q"),
                         *t.interface};
    bool omega_ok = true;
    for (auto c : {Criterion::Fair, Criterion::Must}) {
        auto cmp = semantics::compare(strategy::translate(omega), strategy::translate(omega_out), x, {test}, c);
        omega_ok = omega_ok && cmp.relation == semantics::Relation::Distinguished &&
                   cmp.reports[0].left.outcome == Outcome::Fail && cmp.reports[0].right.outcome == Outcome::Pass;
    }
    std::ostringstream s;
    s << pairs << " pairs, " << decided << " decided, " << disagree << " fair/must disagreements, "
      << oracle_fair_mismatch << " fair mismatches against the reduction oracle; Omega pair "
      << (omega_ok ? "distinguished under both" : "NOT distinguished under both");
    return {decided == pairs && disagree == 0 && oracle_fair_mismatch == 0 && omega_ok, s.str()};
}

Result property_suites()
{
    constexpr int cases = 1000;
    auto seed = gen::seed();
    int misses = 0;
    std::vector<std::pair<std::string, std::string>> runs{
        {"functoriality", props::functoriality(seed, cases)},
        {"confluence", props::confluence(seed + 1, cases)},
        {"stabilisation", props::stabilisation(seed + 2, cases, &misses)},
        {"monotone restriction", props::monotone(seed + 3, cases)},
        {"iso-invariance", props::iso_invariance(seed + 4, cases)},
    };
    std::string bad;
    for (const auto& [name, err] : runs)
        if (!err.empty())
            bad += (bad.empty() ? "" : "; ") + name + ": " + err;
    std::ostringstream s;
    if (bad.empty())
        s << "5 suites x " << cases << " cases pass, seed " << seed << "; literal (k+1)i bound unstable on "
          << misses << " views (library uses max((k+1)i, k(i+1)))";
    else
        s << bad;
    return {bad.empty(), s.str()};
}

}  // namespace

int main()
{
    run(1, "base category hom-sets", 10, hom_sets);
    run(2, "views of forking", 0, views_of_forking);
    run(3, "Kan extension example", 30, example_ran);
    run(4, "branching sensitivity", 0, branching);
    run(5, "fair-testing separation", 60, fair_separation);
    run(6, "fair = must at desk scale", 300, fair_is_must);
    run(7, "property suites", 0, property_suites);
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria pass") << std::endl;
    return failures ? 1 : 0;
}
