#include <catch_amalgamated.hpp>

#include <innocent/arena.hpp>

#include <algorithm>
#include <set>

using namespace innocent;
using namespace innocent::arena;

namespace {

Position two_players()
{
    return Position::build({"a1", "a", "a2"}, {{"p1", {"a1", "a"}}, {"p2", {"a", "a2"}}});
}

Play figure_one()
{
    Play u(two_players());
    u = apply_move(u, {fork_move(2), {"p1"}});
    u = apply_move(u, {fork_move(2), {"p2"}});
    u = apply_move(u, {half_fork_l(2), {"p1.L"}});
    u = apply_move(u, {synch_move(2, 1, 2, 0), {"p1.L.L", "p2.L"}});
    return u;
}

// Symbolic reference: players are names with port lists, steps are strings.
// Plays up to iso are sequences up to swapping adjacent steps that touch
// disjoint players.
struct SymStep {
    std::string text;
    std::vector<std::string> used;
    std::vector<std::string> made;
};

using SymState = std::vector<std::pair<std::string, std::vector<std::string>>>;

std::vector<std::pair<SymStep, SymState>> sym_moves(const SymState& s)
{
    std::vector<std::pair<SymStep, SymState>> res;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& [p, ports] = s[k];
        SymState rest = s;
        rest.erase(rest.begin() + static_cast<long>(k));
        auto with = [&](std::vector<std::pair<std::string, std::vector<std::string>>> add) {
            auto t = rest;
            t.insert(t.end(), add.begin(), add.end());
            return t;
        };
        res.push_back({{"fork " + p, {p}, {p + ".L", p + ".R"}},
                       with({{p + ".L", ports}, {p + ".R", ports}})});
        res.push_back({{"tick " + p, {p}, {p + ".T"}}, with({{p + ".T", ports}})});
        auto np = ports;
        np.push_back(p + "^");
        res.push_back({{"nu " + p, {p}, {p + ".N"}}, with({{p + ".N", np}})});
    }
    for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y) {
            if (x == y)
                continue;
            for (std::size_t i = 0; i < s[x].second.size(); ++i)
                for (std::size_t j = 0; j < s[y].second.size(); ++j) {
                    if (s[x].second[i] != s[y].second[j])
                        continue;
                    const auto& p = s[x].first;
                    const auto& q = s[y].first;
                    SymState t;
                    for (std::size_t k = 0; k < s.size(); ++k)
                        if (k != x && k != y)
                            t.push_back(s[k]);
                    t.push_back({p + ".O", s[x].second});
                    t.push_back({q + ".I", s[y].second});
                    res.push_back({{"sync " + p + " " + std::to_string(i) + " " + q + " " +
                                        std::to_string(j),
                                    {p, q},
                                    {p + ".O", q + ".I"}},
                                   t});
                }
        }
    return res;
}

bool independent(const SymStep& a, const SymStep& b)
{
    for (const auto& u : b.used) {
        if (std::find(a.used.begin(), a.used.end(), u) != a.used.end())
            return false;
        if (std::find(a.made.begin(), a.made.end(), u) != a.made.end())
            return false;
    }
    return true;
}

std::vector<std::string> trace_normal(std::vector<SymStep> seq)
{
    // bubble sort restricted to independent neighbours yields the least
    // representative of the trace
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k)
            if (seq[k + 1].text < seq[k].text && independent(seq[k], seq[k + 1])) {
                std::swap(seq[k], seq[k + 1]);
                changed = true;
            }
    }
    std::vector<std::string> res;
    for (const auto& s : seq)
        res.push_back(s.text);
    return res;
}

std::size_t sym_count(const SymState& s0, int depth)
{
    std::set<std::vector<std::string>> traces;
    std::vector<std::pair<std::vector<SymStep>, SymState>> frontier{{{}, s0}};
    traces.insert(std::vector<std::string>{});
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<std::vector<SymStep>, SymState>> next;
        for (const auto& [seq, st] : frontier)
            for (auto& [step, t] : sym_moves(st)) {
                auto s2 = seq;
                s2.push_back(step);
                traces.insert(trace_normal(s2));
                next.push_back({s2, t});
            }
        frontier = std::move(next);
    }
    return traces.size();
}

}  // namespace

TEST_CASE("positions validate their shape")
{
    auto p = two_players();
    CHECK(p.players().size() == 2);
    CHECK(p.port(*p.find_player("p2"), 0) == "a");
    CHECK_THROWS_AS(Position::build({"a"}, {{"p", {"a", "a"}}}), position_error);
    CHECK_THROWS_AS(Position::build({"a"}, {{"p", {"b"}}}), position_error);
    auto bad = std::make_shared<presheaf::FinPresheaf>(presheaf::representable(cat::tick(1)));
    CHECK_THROWS_AS(Position(bad), position_error);
    CHECK(valid_base_label("a_1~"));
    CHECK_FALSE(valid_base_label("p.L"));
    CHECK_THROWS_AS(Play(Position::build({"a!"}, {})), position_error);
}

TEST_CASE("move classes")
{
    CHECK(is_basic(half_fork_l(1)));
    CHECK_FALSE(is_basic(fork_move(1)));
    CHECK(is_full(fork_move(1)));
    CHECK_FALSE(is_full(half_fork_r(1)));
    CHECK(is_closed_world(synch_move(1, 0, 1, 0)));
    CHECK_FALSE(is_closed_world(input_move(1, 0)));
    CHECK_FALSE(valid(input_move(1, 1)));
    CHECK(move_object(nu_move(2)) == cat::nu(2));
}

TEST_CASE("move cospans have the expected interfaces")
{
    auto c = move_cospan(fork_move(2));
    CHECK(c.initial->size(cat::player(2)) == 1);
    CHECK(c.final->size(cat::player(2)) == 2);
    CHECK(c.initial->size(cat::star()) == 2);
    CHECK(c.initial_leg.is_natural());
    CHECK(c.final_leg.is_natural());
    CHECK(c.initial_leg.is_mono());

    auto n = move_cospan(nu_move(1));
    CHECK(n.final->size(cat::player(2)) == 1);
    CHECK(n.final->size(cat::star()) == 2);
    CHECK(n.initial->size(cat::star()) == 1);

    auto s = move_cospan(synch_move(2, 1, 1, 0));
    CHECK(s.initial->size(cat::player(2)) == 1);
    CHECK(s.initial->size(cat::player(1)) == 1);
    CHECK(s.initial->size(cat::star()) == 2);  // the shared channel is glued
    CHECK(s.final->size(cat::player(2)) == 1);
    CHECK(s.final->size(cat::player(1)) == 1);
}

TEST_CASE("the running example play")
{
    auto u = figure_one();
    const auto& g = *u.glued();
    CHECK(presheaf::check_functorial(g).empty());
    CHECK(g.size(cat::star()) == 3);
    CHECK(g.size(cat::player(2)) == 9);
    CHECK(g.size(cat::fork(2)) == 2);
    CHECK(g.size(cat::fork_l(2)) == 3);
    CHECK(g.size(cat::fork_r(2)) == 2);
    CHECK(g.size(cat::sync(2, 1, 2, 0)) == 1);
    CHECK(u.embedding().is_mono());
    CHECK(u.embedding().is_natural());
    CHECK_FALSE(is_closed_world(u));  // the lone half-fork
    CHECK(u.final().players().size() == 4);
    // the synchronised channel is a, shared by the two avatars
    const auto* o = u.final().find_player("p1.L.L.O");
    const auto* i = u.final().find_player("p2.L.I");
    REQUIRE(o);
    REQUIRE(i);
    CHECK(u.final().port(*o, 1) == "a");
    CHECK(u.final().port(*i, 0) == "a");
    CHECK(u.maximal_steps() == std::vector<std::size_t>{3});
}

TEST_CASE("elements over a move correspond to maps from its representable")
{
    auto u = figure_one();
    for (auto m : {cat::fork_l(2), cat::fork(2), cat::sync(2, 1, 2, 0), cat::player(2)}) {
        auto y = std::make_shared<presheaf::FinPresheaf>(presheaf::representable(m));
        CHECK(presheaf::enumerate_maps(y, u.glued()).size() == u.glued()->size(m));
    }
}

TEST_CASE("invalid moves are rejected")
{
    Play u(two_players());
    CHECK_THROWS_AS(apply_move(u, {fork_move(1), {"p1"}}), move_error);
    CHECK_THROWS_AS(apply_move(u, {tick_move(2), {"nobody"}}), move_error);
    CHECK_THROWS_AS(apply_move(u, {synch_move(2, 0, 2, 0), {"p1", "p2"}}), move_error);
    CHECK_THROWS_AS(apply_move(u, {synch_move(2, 1, 2, 0), {"p1", "p1"}}), move_error);
    auto v = apply_move(u, {tick_move(2), {"p1"}});
    CHECK_THROWS_AS(apply_move(v, {tick_move(2), {"p1"}}), move_error);
}

TEST_CASE("views of a fork")
{
    Play u(Position::build({"a", "b"}, {{"p", {"a", "b"}}}));
    u = apply_move(u, {fork_move(2), {"p"}});
    auto forest = view_forest(u);
    REQUIRE(forest.size() == 3);
    CHECK(forest[1].move == half_fork_l(2));
    CHECK(forest[2].move == half_fork_r(2));
    auto views = views_into(u);
    REQUIRE(views.size() == 3);
    for (const auto& v : views) {
        CHECK(v.embedding.is_natural());
        CHECK(v.embedding.is_mono());
    }
    CHECK(views[1].play.length() == 1);
    CHECK(views[1].play.glued()->size(cat::fork_l(2)) == 1);
    CHECK(views[1].play.glued()->size(cat::fork(2)) == 0);
}

TEST_CASE("views of the running example")
{
    auto u = figure_one();
    auto forest = view_forest(u);
    auto find = [&](const std::string& a) {
        for (std::size_t k = 0; k < forest.size(); ++k)
            if (forest[k].avatar == a)
                return static_cast<int>(k);
        return -1;
    };
    int snd = find("p1.L.L.O");
    int rcv = find("p2.L.I");
    REQUIRE(snd >= 0);
    REQUIRE(rcv >= 0);
    CHECK(view_moves(forest, snd) ==
          std::vector<MoveKind>{half_fork_l(2), half_fork_l(2), output_move(2, 1)});
    CHECK(view_moves(forest, rcv) == std::vector<MoveKind>{half_fork_l(2), input_move(2, 0)});
    for (const auto& v : views_into(u)) {
        CHECK(v.embedding.is_natural());
        CHECK(v.embedding.is_mono());
        CHECK(v.play.base().players().size() == 1);
    }
}

TEST_CASE("independent moves commute up to iso")
{
    auto base = two_players();
    auto u = replay(base, {{tick_move(2), {"p1"}}, {fork_move(2), {"p2"}}});
    auto v = replay(base, {{fork_move(2), {"p2"}}, {tick_move(2), {"p1"}}});
    CHECK(u.key() == v.key());
    CHECK(play_iso(u, v));
    auto w = replay(base, {{tick_move(2), {"p2"}}, {fork_move(2), {"p1"}}});
    CHECK(u.key() != w.key());
    CHECK_FALSE(play_iso(u, w));
}

TEST_CASE("closed-world play counts match the trace reference")
{
    auto one = Position::build({"a"}, {{"p", {"a"}}});
    CHECK(enumerate_closed_world(one, 1).size() == 4);
    CHECK(enumerate_closed_world(one, 2).size() == 18);
    CHECK(enumerate_closed_world(one, 2).size() == sym_count({{"p", {"a"}}}, 2));
    auto two = Position::build({"a"}, {{"p", {"a"}}, {"q", {"a"}}});
    CHECK(enumerate_closed_world(two, 1).size() == 9);
    CHECK(enumerate_closed_world(two, 2).size() == sym_count({{"p", {"a"}}, {"q", {"a"}}}, 2));
    CHECK(enumerate_closed_world(one, 3).size() == sym_count({{"p", {"a"}}}, 3));
}

TEST_CASE("keys agree with presheaf isomorphism")
{
    auto two = Position::build({"a", "b"}, {{"p", {"a"}}, {"q", {"a", "b"}}});
    auto plays = enumerate_closed_world(two, 2);
    for (std::size_t x = 0; x < plays.size(); ++x)
        for (std::size_t y = x + 1; y < plays.size(); ++y)
            if (plays[x].length() == plays[y].length())
                REQUIRE_FALSE(play_iso(plays[x], plays[y]));
    for (const auto& u : plays) {
        REQUIRE(play_iso(u, u));
        REQUIRE(play_iso(u, replay(two, u.canonical_steps())));
    }
}

TEST_CASE("generated plays are functorial, closed-world and well embedded")
{
    auto two = Position::build({"a"}, {{"p", {"a"}}, {"q", {"a"}}});
    for (const auto& u : enumerate_closed_world(two, 3)) {
        REQUIRE(presheaf::check_functorial(*u.glued()).empty());
        REQUIRE(is_closed_world(u));
        REQUIRE(u.embedding().is_mono());
        auto fin = presheaf::map_by_labels(u.final().presheaf(), u.glued());
        REQUIRE(fin.is_natural());
        REQUIRE(fin.is_mono());
    }
}

TEST_CASE("success and dot output")
{
    Play u(Position::build({"a"}, {{"p", {"a"}}}));
    CHECK_FALSE(is_successful(u));
    u = apply_move(u, {tick_move(1), {"p"}});
    CHECK(is_successful(u));
    CHECK(to_dot(u).find("tick(p)") != std::string::npos);
    CHECK(to_dot(u.final()).find("p.T") != std::string::npos);
}

TEST_CASE("a half-fork embeds in the running example along its base")
{
    auto u = figure_one();
    Play v(Position::build({"b", "c"}, {{"r", {"b", "c"}}}));
    v = apply_move(v, {half_fork_l(2), {"r"}});
    CHECK(base_preserving_embeddings(v, u).size() == 2);
    // without the base constraint the half-fork on p1.L is a third image
    auto y = std::make_shared<presheaf::FinPresheaf>(presheaf::representable(cat::fork_l(2)));
    CHECK(presheaf::enumerate_maps(y, u.glued()).size() == 3);
    Play f(two_players());
    f = apply_move(f, {fork_move(2), {"p1"}});
    CHECK(base_preserving_embeddings(f, u).size() == 1);
}
