#include "innocent/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace innocent::semantics {

using arena::ExtendedMove;
using strategy::MoveKey;
using strategy::Slot;
using strategy::StrategyPtr;

namespace {

std::size_t max_definitions(const Amalgam& f)
{
    std::size_t k = 0;
    for (const auto& [label, s] : f.parts)
        k = std::max(k, strategy::definition_count(s));
    return k;
}

}  // namespace

PlayStates ran_eval(const Amalgam& f, const Play& u)
{
    PlayStates r;
    r.forest = arena::view_forest(u);
    std::size_t n = r.forest.size();
    std::vector<bool> has_child(n, false);
    std::size_t longest = 0;
    for (const auto& v : r.forest) {
        if (v.parent >= 0)
            has_child[static_cast<std::size_t>(v.parent)] = true;
        longest = std::max(longest, static_cast<std::size_t>(v.depth));
    }
    // one fuel for every chain keeps shared prefixes consistent
    int fuel = strategy::default_fuel(max_definitions(f), longest);
    presheaf::SetDiagram d;
    d.sizes.assign(n, 0);
    std::vector<bool> done(n, false);
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        if (has_child[leaf])
            continue;
        std::vector<int> chain;
        for (int x = static_cast<int>(leaf); x >= 0; x = r.forest[x].parent)
            chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        const auto& base = r.forest[chain[0]].base_player;
        auto it = f.parts.find(base);
        if (it == f.parts.end())
            throw strategy::amalgamation_error("no strategy for player " + base);
        auto ss = strategy::eval(it->second, arena::view_moves(r.forest, static_cast<int>(leaf)), fuel);
        for (std::size_t k = 0; k < chain.size(); ++k) {
            auto node = static_cast<std::size_t>(chain[k]);
            if (done[node])
                continue;
            done[node] = true;
            d.sizes[node] = ss.counts[k];
            if (k > 0)
                d.arrows.push_back({node, static_cast<std::size_t>(chain[k - 1]), ss.restrict[k - 1]});
        }
    }
    r.node_sizes = d.sizes;
    r.families = presheaf::limit(d);
    return r;
}

const BehaviourEntry* Behaviour::find(const std::string& key) const
{
    auto it = index.find(key);
    return it == index.end() ? nullptr : &entries[it->second];
}

namespace {

std::vector<std::uint32_t> restriction(const PlayStates& child, const PlayStates& parent)
{
    std::map<std::string, std::size_t> at;
    for (std::size_t k = 0; k < child.forest.size(); ++k)
        at[child.forest[k].avatar] = k;
    std::vector<std::size_t> pick;
    for (const auto& v : parent.forest)
        pick.push_back(at.at(v.avatar));
    std::vector<std::uint32_t> map;
    for (const auto& fam : child.families) {
        std::vector<std::uint32_t> proj;
        for (auto k : pick)
            proj.push_back(fam[k]);
        auto it = std::lower_bound(parent.families.begin(), parent.families.end(), proj);
        if (it == parent.families.end() || *it != proj)
            throw std::logic_error("state does not restrict to its prefix");
        map.push_back(static_cast<std::uint32_t>(it - parent.families.begin()));
    }
    return map;
}

}  // namespace

Behaviour gl(const Amalgam& f, const Position& x, int depth)
{
    Behaviour b{x, depth, {}, {}};
    Play empty(x);
    b.entries.push_back({empty, empty.key(), ran_eval(f, empty), {}});
    b.index[b.entries[0].key] = 0;
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
        if (b.entries[i].states.size() == 0 ||
            static_cast<int>(b.entries[i].play.length()) >= depth)
            continue;
        auto play = b.entries[i].play;
        for (const auto& m : arena::applicable_moves(play.final(), arena::MoveClass::ClosedWorld)) {
            auto v = arena::apply_move(play, m);
            auto key = v.key();
            if (b.index.count(key))
                continue;
            auto st = ran_eval(f, v);
            b.index[key] = b.entries.size();
            b.entries.push_back({std::move(v), key, std::move(st), {}});
        }
    }
    for (auto& e : b.entries) {
        for (auto k : e.play.maximal_steps()) {
            auto steps = e.play.steps();
            steps.erase(steps.begin() + static_cast<long>(k));
            auto parent = arena::replay(x, steps);
            auto it = b.index.find(parent.key());
            if (it == b.index.end())
                continue;
            e.restrictions.push_back({it->second, restriction(e.states, b.entries[it->second].states)});
        }
    }
    return b;
}

TestPushout test_pushout(const Position& x, const Position& y,
                         const std::vector<std::string>& interface)
{
    for (const auto& c : interface) {
        auto in_x = x.presheaf()->find(c);
        auto in_y = y.presheaf()->find(c);
        if (!in_x || in_x->obj != cat::star() || !in_y || in_y->obj != cat::star())
            throw interface_error("interface channel " + c + " is not a channel of both sides");
    }
    auto i = Position::build(interface, {}).presheaf();
    auto po = presheaf::pushout(presheaf::map_by_labels(i, x.presheaf()),
                                presheaf::map_by_labels(i, y.presheaf()));
    TestPushout t{Position(po.object), {}, {}, {}};
    for (const auto& p : x.players())
        t.left_players[p.label] = p.label;
    const auto& ys = *y.presheaf();
    for (const auto& o : ys.objects())
        for (std::uint32_t k = 0; k < ys.size(o); ++k) {
            auto target = po.object->labels(o).at(po.from_right.apply({o, k}));
            if (o == cat::star())
                t.right_channels[ys.labels(o)[k]] = target;
            else
                t.right_players[ys.labels(o)[k]] = target;
        }
    return t;
}

TestPushout test_pushout(const Position& x, const Position& y, const Position& interface)
{
    if (!interface.players().empty())
        throw interface_error("the interface must consist of channels only");
    return test_pushout(x, y, interface.channels());
}

Criterion parse_criterion(const std::string& s)
{
    if (s == "fair")
        return Criterion::Fair;
    if (s == "must")
        return Criterion::Must;
    throw std::invalid_argument("unknown criterion " + s);
}

std::string to_string(Criterion c) { return c == Criterion::Fair ? "fair" : "must"; }

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::Pass:
        return "pass";
    case Outcome::Fail:
        return "fail";
    case Outcome::Unknown:
        return "unknown";
    }
    return "?";
}

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::Equal:
        return "equal";
    case Relation::Distinguished:
        return "distinguished";
    case Relation::Unknown:
        return "unknown";
    }
    return "?";
}

namespace {

// A configuration: live players with their committed residual state.
struct LPlayer {
    std::string label;
    int resid = 0;
    std::vector<int> ports;
};

struct LConfig {
    std::vector<LPlayer> players;
    int next_chan = 0;
    bool success = false;
};

struct Successor {
    ExtendedMove move;
    LConfig config;
    std::vector<std::pair<int, int>> idle;  // (index before, index after)
};

struct Edge {
    int target = 0;
    std::vector<int> mu;  // canonical player before -> canonical player after, or -1
};

struct Node {
    std::vector<int> code;
    LConfig repr;
    std::vector<int> perm;  // repr index -> canonical index
    bool expanded = false;
    std::vector<Edge> out;
    int parent = -1;  // discovery tree
};

constexpr std::size_t permutation_cap = 720;

class ConfigGraph {
public:
    ConfigGraph(const Amalgam& f, const Position& x, std::size_t budget)
        : budget_(budget), fuel_(static_cast<int>(max_definitions(f)) + 1)
    {
        LConfig base;
        base.next_chan = static_cast<int>(x.channels().size());
        std::vector<std::vector<strategy::Committed>> choices;
        for (const auto& p : x.players()) {
            LPlayer lp{p.label, -1, {}};
            for (auto c : p.ports)
                lp.ports.push_back(static_cast<int>(c));
            base.players.push_back(lp);
            choices.push_back(strategy::resolve(f.parts.at(p.label), fuel_));
        }
        std::vector<LConfig> roots{base};
        for (std::size_t k = 0; k < choices.size(); ++k) {
            std::vector<LConfig> next;
            for (const auto& r : roots)
                for (const auto& c : choices[k]) {
                    auto r2 = r;
                    r2.players[k].resid = intern(c.node);
                    next.push_back(std::move(r2));
                }
            roots = std::move(next);
        }
        for (auto& r : roots) {
            auto [code, perm] = canonical(r);
            if (!index_.count(code)) {
                index_[code] = static_cast<int>(nodes_.size());
                nodes_.push_back({code, r, perm, false, {}, -1});
                roots_.push_back(static_cast<int>(nodes_.size()) - 1);
            }
        }
    }

    void explore()
    {
        std::deque<int> queue(roots_.begin(), roots_.end());
        while (!queue.empty()) {
            int v = queue.front();
            auto& nv = nodes_[v];
            if (nv.repr.success) {
                queue.pop_front();
                continue;
            }
            auto succ = successors(nv.repr, nullptr);
            std::set<std::vector<int>> fresh;
            std::vector<std::pair<std::vector<int>, std::vector<int>>> canon;
            for (const auto& s : succ) {
                canon.push_back(canonical(s.config));
                if (!index_.count(canon.back().first))
                    fresh.insert(canon.back().first);
            }
            if (nodes_.size() + fresh.size() > budget_) {
                exhausted_ = true;
                return;
            }
            queue.pop_front();
            for (std::size_t k = 0; k < succ.size(); ++k) {
                auto& [code, perm] = canon[k];
                int w;
                auto it = index_.find(code);
                if (it == index_.end()) {
                    w = static_cast<int>(nodes_.size());
                    index_[code] = w;
                    nodes_.push_back({code, succ[k].config, perm, false, {}, v});
                    queue.push_back(w);
                } else {
                    w = it->second;
                }
                Edge e{w, std::vector<int>(nodes_[v].repr.players.size(), -1)};
                for (auto [a, b] : succ[k].idle)
                    e.mu[static_cast<std::size_t>(nodes_[v].perm[a])] = perm[static_cast<std::size_t>(b)];
                nodes_[v].out.push_back(std::move(e));
            }
            nodes_[v].expanded = true;
        }
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

    // Enabled moves among the given canonical players of node v alone.
    bool enabled_among(int v, const std::vector<bool>& allowed)
    {
        const auto& nv = nodes_[v];
        std::vector<bool> in(nv.repr.players.size(), false);
        for (std::size_t k = 0; k < in.size(); ++k)
            in[k] = allowed[static_cast<std::size_t>(nv.perm[k])];
        return !successors(nv.repr, &in).empty();
    }

    std::vector<int> path_to(int v) const
    {
        std::vector<int> p;
        for (int x = v; x >= 0; x = nodes_[x].parent)
            p.push_back(x);
        std::reverse(p.begin(), p.end());
        return p;
    }

    // Labelled moves along a node sequence starting at a root.
    std::vector<ExtendedMove> replay_path(const std::vector<int>& seq)
    {
        std::vector<ExtendedMove> moves;
        LConfig cur = nodes_[seq[0]].repr;
        for (std::size_t k = 1; k < seq.size(); ++k) {
            bool found = false;
            for (auto& s : successors(cur, nullptr)) {
                if (canonical(s.config).first == nodes_[seq[k]].code) {
                    moves.push_back(s.move);
                    cur = std::move(s.config);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::logic_error("witness path cannot be replayed");
        }
        return moves;
    }

private:
    int intern(const StrategyPtr& node)
    {
        auto fp = strategy::fingerprint(node);
        auto it = resid_index_.find(fp);
        if (it != resid_index_.end())
            return it->second;
        int id = static_cast<int>(resids_.size());
        resids_.push_back(node);
        resid_index_[fp] = id;
        return id;
    }

    std::vector<strategy::Committed> cont(int resid, const MoveKey& k) const
    {
        const auto* c = resids_[static_cast<std::size_t>(resid)]->continuation(k);
        if (!c)
            return {};
        return strategy::resolve(*c, fuel_);
    }

    std::vector<Successor> successors(const LConfig& c, const std::vector<bool>* allowed)
    {
        std::vector<Successor> out;
        auto ok = [&](std::size_t k) { return !allowed || (*allowed)[k]; };
        auto without = [&](std::vector<std::size_t> gone) {
            Successor s;
            s.config.next_chan = c.next_chan;
            s.config.success = c.success;
            for (std::size_t k = 0; k < c.players.size(); ++k) {
                if (std::find(gone.begin(), gone.end(), k) != gone.end())
                    continue;
                s.idle.push_back({static_cast<int>(k), static_cast<int>(s.config.players.size())});
                s.config.players.push_back(c.players[k]);
            }
            return s;
        };
        for (std::size_t x = 0; x < c.players.size(); ++x) {
            if (!ok(x))
                continue;
            const auto& p = c.players[x];
            int n = static_cast<int>(p.ports.size());
            auto l = cont(p.resid, {arena::MoveType::Fork, 0, Slot::T1});
            auto r = cont(p.resid, {arena::MoveType::Fork, 0, Slot::T2});
            for (const auto& a : l)
                for (const auto& b : r) {
                    auto s = without({x});
                    s.move = {arena::fork_move(n), {p.label}};
                    s.config.players.push_back({p.label + ".L", intern(a.node), p.ports});
                    s.config.players.push_back({p.label + ".R", intern(b.node), p.ports});
                    out.push_back(std::move(s));
                }
            for (const auto& a : cont(p.resid, {arena::MoveType::Tick, 0, Slot::T})) {
                auto s = without({x});
                s.move = {arena::tick_move(n), {p.label}};
                s.config.players.push_back({p.label + ".T", intern(a.node), p.ports});
                s.config.success = true;
                out.push_back(std::move(s));
            }
            for (const auto& a : cont(p.resid, {arena::MoveType::Nu, 0, Slot::T})) {
                auto s = without({x});
                s.move = {arena::nu_move(n), {p.label}};
                auto ports = p.ports;
                ports.push_back(s.config.next_chan++);
                s.config.players.push_back({p.label + ".N", intern(a.node), ports});
                out.push_back(std::move(s));
            }
        }
        for (std::size_t x = 0; x < c.players.size(); ++x)
            for (std::size_t y = 0; y < c.players.size(); ++y) {
                if (x == y || !ok(x) || !ok(y))
                    continue;
                const auto& snd = c.players[x];
                const auto& rcv = c.players[y];
                for (std::size_t i = 0; i < snd.ports.size(); ++i)
                    for (std::size_t j = 0; j < rcv.ports.size(); ++j) {
                        if (snd.ports[i] != rcv.ports[j])
                            continue;
                        auto a = cont(snd.resid, {arena::MoveType::Output, static_cast<int>(i), Slot::T});
                        if (a.empty())
                            continue;
                        auto b = cont(rcv.resid, {arena::MoveType::Input, static_cast<int>(j), Slot::T});
                        for (const auto& sa : a)
                            for (const auto& rb : b) {
                                auto s = without({x, y});
                                s.move = {arena::synch_move(static_cast<int>(snd.ports.size()),
                                                            static_cast<int>(i),
                                                            static_cast<int>(rcv.ports.size()),
                                                            static_cast<int>(j)),
                                          {snd.label, rcv.label}};
                                s.config.players.push_back({snd.label + ".O", intern(sa.node), snd.ports});
                                s.config.players.push_back({rcv.label + ".I", intern(rb.node), rcv.ports});
                                out.push_back(std::move(s));
                            }
                    }
            }
        return out;
    }

    static std::vector<int> encode(const LConfig& c, const std::vector<std::size_t>& order)
    {
        std::vector<int> code{c.success ? 1 : 0, static_cast<int>(order.size())};
        std::map<int, int> chan;
        for (auto k : order) {
            const auto& p = c.players[k];
            code.push_back(p.resid);
            code.push_back(static_cast<int>(p.ports.size()));
            for (auto ch : p.ports) {
                auto it = chan.find(ch);
                if (it == chan.end())
                    it = chan.emplace(ch, static_cast<int>(chan.size())).first;
                code.push_back(it->second);
            }
        }
        return code;
    }

    // Least encoding over orderings of players with equal (residual, arity).
    static std::pair<std::vector<int>, std::vector<int>> canonical(const LConfig& c)
    {
        std::size_t n = c.players.size();
        std::vector<std::size_t> order(n);
        for (std::size_t k = 0; k < n; ++k)
            order[k] = k;
        auto rank = [&](std::size_t k) {
            return std::make_pair(c.players[k].resid, c.players[k].ports.size());
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); });
        std::vector<std::pair<std::size_t, std::size_t>> groups;
        std::size_t combos = 1;
        for (std::size_t s = 0; s < n;) {
            std::size_t e = s;
            while (e < n && rank(order[e]) == rank(order[s]))
                ++e;
            for (std::size_t k = 2; k <= e - s && combos <= permutation_cap; ++k)
                combos *= k;
            if (e - s > 1)
                groups.push_back({s, e});
            s = e;
        }
        std::vector<int> best = encode(c, order);
        std::vector<std::size_t> best_order = order;
        if (combos <= permutation_cap && !groups.empty()) {
            std::function<void(std::size_t)> go = [&](std::size_t g) {
                if (g == groups.size()) {
                    auto code = encode(c, order);
                    if (code < best) {
                        best = std::move(code);
                        best_order = order;
                    }
                    return;
                }
                auto [s, e] = groups[g];
                std::sort(order.begin() + static_cast<long>(s), order.begin() + static_cast<long>(e));
                do {
                    go(g + 1);
                } while (std::next_permutation(order.begin() + static_cast<long>(s),
                                               order.begin() + static_cast<long>(e)));
            };
            go(0);
        }
        std::vector<int> perm(n);
        for (std::size_t k = 0; k < n; ++k)
            perm[best_order[k]] = static_cast<int>(k);
        return {best, perm};
    }

    std::size_t budget_;
    int fuel_;
    std::vector<StrategyPtr> resids_;
    std::map<std::string, int> resid_index_;
    std::map<std::vector<int>, int> index_;
    std::vector<Node> nodes_;
    std::vector<int> roots_;
    bool exhausted_ = false;
};

Verdict finish(Verdict v, const ConfigGraph& g, std::size_t budget)
{
    v.nodes = g.nodes().size();
    v.budget = budget;
    return v;
}

// Nodes from which some node satisfying `target` is reachable.
std::vector<bool> co_reach(const std::vector<Node>& nodes, const std::function<bool(int)>& target)
{
    std::vector<std::vector<int>> rev(nodes.size());
    for (std::size_t v = 0; v < nodes.size(); ++v)
        for (const auto& e : nodes[v].out)
            rev[static_cast<std::size_t>(e.target)].push_back(static_cast<int>(v));
    std::vector<bool> mark(nodes.size(), false);
    std::deque<int> q;
    for (std::size_t v = 0; v < nodes.size(); ++v)
        if (target(static_cast<int>(v))) {
            mark[v] = true;
            q.push_back(static_cast<int>(v));
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : rev[static_cast<std::size_t>(v)])
            if (!mark[static_cast<std::size_t>(u)]) {
                mark[static_cast<std::size_t>(u)] = true;
                q.push_back(u);
            }
    }
    return mark;
}

std::vector<int> scc_ids(const std::vector<Node>& nodes, const std::vector<bool>& keep)
{
    // iterative Tarjan over kept nodes
    std::size_t n = nodes.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on(n, false);
    std::vector<int> stack;
    int counter = 0;
    int comps = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!keep[root] || index[root] >= 0)
            continue;
        std::vector<std::pair<int, std::size_t>> work{{static_cast<int>(root), 0}};
        index[root] = low[root] = counter++;
        stack.push_back(static_cast<int>(root));
        on[root] = true;
        while (!work.empty()) {
            auto& [v, ei] = work.back();
            auto vs = static_cast<std::size_t>(v);
            if (ei < nodes[vs].out.size()) {
                int w = nodes[vs].out[ei++].target;
                auto ws = static_cast<std::size_t>(w);
                if (!keep[ws])
                    continue;
                if (index[ws] < 0) {
                    index[ws] = low[ws] = counter++;
                    stack.push_back(w);
                    on[ws] = true;
                    work.push_back({w, 0});
                } else if (on[ws]) {
                    low[vs] = std::min(low[vs], index[ws]);
                }
                continue;
            }
            if (low[vs] == index[vs]) {
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on[static_cast<std::size_t>(w)] = false;
                    comp[static_cast<std::size_t>(w)] = comps;
                    if (w == v)
                        break;
                }
                ++comps;
            }
            int done = v;
            work.pop_back();
            if (!work.empty()) {
                auto ps = static_cast<std::size_t>(work.back().first);
                low[ps] = std::min(low[ps], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    return comp;
}

}  // namespace

Verdict fair_pass(const Amalgam& f, const Position& x, const Limits& lim)
{
    ConfigGraph g(f, x, lim.budget);
    g.explore();
    const auto& nodes = g.nodes();
    auto good = co_reach(nodes, [&](int v) { return nodes[static_cast<std::size_t>(v)].repr.success; });
    auto open = co_reach(nodes, [&](int v) {
        const auto& n = nodes[static_cast<std::size_t>(v)];
        return !n.expanded && !n.repr.success;
    });
    for (std::size_t v = 0; v < nodes.size(); ++v)
        if (!good[v] && !open[v]) {
            Verdict r;
            r.outcome = Outcome::Fail;
            r.witness = g.replay_path(g.path_to(static_cast<int>(v)));
            r.reason = "a reachable state has no successful extension";
            return finish(r, g, lim.budget);
        }
    Verdict r;
    if (g.exhausted()) {
        r.reason = "configuration budget exhausted";
        return finish(r, g, lim.budget);
    }
    r.outcome = Outcome::Pass;
    r.reason = "every reachable state has a successful extension";
    return finish(r, g, lim.budget);
}

Verdict must_pass(const Amalgam& f, const Position& x, const Limits& lim)
{
    ConfigGraph g(f, x, lim.budget);
    g.explore();
    const auto& nodes = g.nodes();
    // (a) unsuccessful deadlocks
    for (std::size_t v = 0; v < nodes.size(); ++v)
        if (nodes[v].expanded && !nodes[v].repr.success && nodes[v].out.empty()) {
            Verdict r;
            r.outcome = Outcome::Fail;
            r.witness = g.replay_path(g.path_to(static_cast<int>(v)));
            r.reason = "an unsuccessful play cannot be extended";
            return finish(r, g, lim.budget);
        }
    // (b) unsuccessful self-contained cycles
    std::vector<bool> keep(nodes.size());
    for (std::size_t v = 0; v < nodes.size(); ++v)
        keep[v] = nodes[v].expanded && !nodes[v].repr.success;
    auto comp = scc_ids(nodes, keep);
    std::vector<int> comp_size;
    for (std::size_t v = 0; v < nodes.size(); ++v)
        if (comp[v] >= 0) {
            if (static_cast<std::size_t>(comp[v]) >= comp_size.size())
                comp_size.resize(static_cast<std::size_t>(comp[v]) + 1, 0);
            ++comp_size[static_cast<std::size_t>(comp[v])];
        }
    bool product_exhausted = false;
    std::size_t product_budget = lim.budget * 50;
    std::size_t product_states = 0;
    for (std::size_t v0 = 0; v0 < nodes.size(); ++v0) {
        if (comp[v0] < 0)
            continue;
        bool nontrivial = comp_size[static_cast<std::size_t>(comp[v0])] > 1;
        for (const auto& e : nodes[v0].out)
            if (e.target == static_cast<int>(v0))
                nontrivial = true;
        if (!nontrivial)
            continue;
        std::size_t m = nodes[v0].repr.players.size();
        using State = std::pair<int, std::vector<int>>;
        std::vector<State> states;
        std::vector<int> back;
        std::vector<int> id(m);
        for (std::size_t k = 0; k < m; ++k)
            id[k] = static_cast<int>(k);
        states.push_back({static_cast<int>(v0), id});
        back.push_back(-1);
        std::map<State, int> seen{{states[0], 0}};
        for (std::size_t s = 0; s < states.size(); ++s) {
            if (++product_states > product_budget) {
                product_exhausted = true;
                break;
            }
            auto [v, gmap] = states[s];
            for (const auto& e : nodes[static_cast<std::size_t>(v)].out) {
                if (comp[static_cast<std::size_t>(e.target)] != comp[v0])
                    continue;
                std::vector<int> g2(m, -1);
                for (std::size_t k = 0; k < m; ++k)
                    if (gmap[k] >= 0)
                        g2[k] = e.mu[static_cast<std::size_t>(gmap[k])];
                State next{e.target, g2};
                if (!seen.count(next)) {
                    seen[next] = static_cast<int>(states.size());
                    states.push_back(next);
                    back.push_back(static_cast<int>(s));
                }
                if (e.target != static_cast<int>(v0))
                    continue;
                // players idle forever when the round is repeated
                std::vector<bool> periodic(m, false);
                for (std::size_t k = 0; k < m; ++k) {
                    int y = static_cast<int>(k);
                    for (std::size_t step = 0; step < m && y >= 0; ++step) {
                        y = g2[static_cast<std::size_t>(y)];
                        if (y == static_cast<int>(k)) {
                            periodic[k] = true;
                            break;
                        }
                    }
                }
                if (g.enabled_among(static_cast<int>(v0), periodic))
                    continue;
                std::vector<int> cyc{static_cast<int>(v0)};
                for (int t = static_cast<int>(s); t > 0; t = back[static_cast<std::size_t>(t)])
                    cyc.push_back(states[static_cast<std::size_t>(t)].first);
                cyc.push_back(static_cast<int>(v0));
                std::reverse(cyc.begin() + 1, cyc.end() - 1);
                auto path = g.path_to(static_cast<int>(v0));
                auto full = path;
                full.insert(full.end(), cyc.begin() + 1, cyc.end());
                Verdict r;
                r.outcome = Outcome::Fail;
                r.witness = g.replay_path(full);
                r.cycle = true;
                r.cycle_start = path.size() - 1;
                r.reason = "an unsuccessful cycle leaves no move insertable";
                return finish(r, g, lim.budget);
            }
        }
        if (product_exhausted)
            break;
    }
    Verdict r;
    if (g.exhausted() || product_exhausted) {
        r.reason = "configuration budget exhausted";
        return finish(r, g, lim.budget);
    }
    r.outcome = Outcome::Pass;
    r.reason = "every maximal play is successful";
    return finish(r, g, lim.budget);
}

Verdict check(const Amalgam& f, const Position& x, Criterion c, const Limits& lim)
{
    return c == Criterion::Fair ? fair_pass(f, x, lim) : must_pass(f, x, lim);
}

Verdict orthogonal(const StrategyPtr& f, const Position& x, const StrategyPtr& g, const Position& y,
                   const std::vector<std::string>& interface, Criterion c, const Limits& lim)
{
    if (x.players().size() != 1 || y.players().size() != 1)
        throw interface_error("process and test positions must have one player each");
    auto tp = test_pushout(x, y, interface);
    std::map<std::string, StrategyPtr> parts{
        {tp.left_players.at(x.players()[0].label), f},
        {tp.right_players.at(y.players()[0].label), g}};
    return check(strategy::amalgamate(tp.z, parts), tp.z, c, lim);
}

Comparison compare(const StrategyPtr& f, const StrategyPtr& f2, const Position& x,
                   const std::vector<Test>& tests, Criterion c, const Limits& lim)
{
    Comparison cmp;
    bool unknown = false;
    for (std::size_t k = 0; k < tests.size(); ++k) {
        const auto& t = tests[k];
        TestReport rep{t.name, orthogonal(f, x, t.strategy, t.position, t.interface, c, lim),
                       orthogonal(f2, x, t.strategy, t.position, t.interface, c, lim)};
        auto a = rep.left.outcome;
        auto b = rep.right.outcome;
        if (a == Outcome::Unknown || b == Outcome::Unknown)
            unknown = true;
        else if (a != b && !cmp.witness_test)
            cmp.witness_test = k;
        cmp.reports.push_back(std::move(rep));
    }
    if (cmp.witness_test)
        cmp.relation = Relation::Distinguished;
    else
        cmp.relation = unknown ? Relation::Unknown : Relation::Equal;
    return cmp;
}

Position process_position(const std::vector<std::string>& channels, const std::string& player)
{
    return Position::build(channels, {{player, channels}});
}

}  // namespace innocent::semantics
