#include "innocent/arena.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_set>

namespace innocent::arena {

using cat::ObjectId;
using presheaf::Elem;

Position::Position() : ps_(std::make_shared<FinPresheaf>()) {}

Position::Position(PresheafPtr ps) : ps_(std::move(ps))
{
    for (const auto& o : ps_->objects())
        if (o.kind != cat::Kind::Star && o.kind != cat::Kind::Player)
            throw position_error("position has elements over " + cat::to_string(o));
    auto v = presheaf::check_functorial(*ps_);
    if (!v.empty())
        throw position_error("position is not functorial: " + v.front().relation + " at " +
                             v.front().element);
    for (const auto& o : ps_->objects()) {
        if (o.kind != cat::Kind::Player)
            continue;
        const auto& labels = ps_->labels(o);
        for (std::uint32_t x = 0; x < labels.size(); ++x) {
            PlayerInfo p{labels[x], o.n, {}};
            for (int i = 0; i < o.n; ++i)
                p.ports.push_back(ps_->act(cat::d(i, o.n), x));
            std::set<std::uint32_t> distinct(p.ports.begin(), p.ports.end());
            if (distinct.size() != p.ports.size())
                throw position_error("player " + p.label + " knows a channel twice");
            players_.push_back(std::move(p));
        }
    }
}

Position Position::build(const std::vector<std::string>& channels,
                         const std::vector<std::pair<std::string, std::vector<std::string>>>& players)
{
    auto f = std::make_shared<FinPresheaf>();
    for (const auto& c : channels)
        f->add(cat::star(), c);
    for (const auto& [name, ports] : players) {
        int n = static_cast<int>(ports.size());
        auto x = f->add(cat::player(n), name);
        for (int i = 0; i < n; ++i) {
            auto c = f->find(ports[i]);
            if (!c || c->obj != cat::star())
                throw position_error("player " + name + " refers to unknown channel " + ports[i]);
            f->set_action(cat::d(i, n), x, c->idx);
        }
    }
    return Position(f);
}

const PlayerInfo* Position::find_player(const std::string& label) const
{
    for (const auto& p : players_)
        if (p.label == label)
            return &p;
    return nullptr;
}

bool valid_base_label(const std::string& s)
{
    if (s.empty())
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~';
    });
}

MoveKind fork_move(int n) { return {MoveType::Fork, n}; }
MoveKind half_fork_l(int n) { return {MoveType::HalfForkL, n}; }
MoveKind half_fork_r(int n) { return {MoveType::HalfForkR, n}; }
MoveKind tick_move(int n) { return {MoveType::Tick, n}; }
MoveKind nu_move(int n) { return {MoveType::Nu, n}; }
MoveKind input_move(int n, int i) { return {MoveType::Input, n, i}; }
MoveKind output_move(int n, int i) { return {MoveType::Output, n, i}; }
MoveKind synch_move(int n, int i, int m, int j) { return {MoveType::Synch, n, i, m, j}; }

bool is_basic(const MoveKind& k) { return k.type != MoveType::Fork && k.type != MoveType::Synch; }

bool is_full(const MoveKind& k)
{
    return k.type != MoveType::HalfForkL && k.type != MoveType::HalfForkR &&
           k.type != MoveType::Synch;
}

bool is_closed_world(const MoveKind& k)
{
    return k.type == MoveType::Fork || k.type == MoveType::Tick || k.type == MoveType::Nu ||
           k.type == MoveType::Synch;
}

bool valid(const MoveKind& k) { return cat::valid(move_object(k)); }

ObjectId move_object(const MoveKind& k)
{
    switch (k.type) {
    case MoveType::Fork:
        return cat::fork(k.n);
    case MoveType::HalfForkL:
        return cat::fork_l(k.n);
    case MoveType::HalfForkR:
        return cat::fork_r(k.n);
    case MoveType::Tick:
        return cat::tick(k.n);
    case MoveType::Nu:
        return cat::nu(k.n);
    case MoveType::Input:
        return cat::in(k.n, k.i);
    case MoveType::Output:
        return cat::out(k.n, k.i);
    case MoveType::Synch:
        return cat::sync(k.n, k.i, k.m, k.j);
    }
    return cat::star();
}

std::string to_string(const MoveKind& k)
{
    auto n = std::to_string(k.n);
    switch (k.type) {
    case MoveType::Fork:
        return "fork" + n;
    case MoveType::HalfForkL:
        return "lfork" + n;
    case MoveType::HalfForkR:
        return "rfork" + n;
    case MoveType::Tick:
        return "tick" + n;
    case MoveType::Nu:
        return "nu" + n;
    case MoveType::Input:
        return "in" + n + "," + std::to_string(k.i);
    case MoveType::Output:
        return "out" + n + "," + std::to_string(k.i);
    case MoveType::Synch:
        return "sync" + n + "," + std::to_string(k.i) + "," + std::to_string(k.m) + "," +
               std::to_string(k.j);
    }
    return "?";
}

bool in_class(const MoveKind& k, MoveClass c)
{
    switch (c) {
    case MoveClass::Basic:
        return is_basic(k);
    case MoveClass::Full:
        return is_full(k);
    case MoveClass::ClosedWorld:
        return is_closed_world(k);
    }
    return false;
}

MoveClass parse_move_class(const std::string& s)
{
    if (s == "basic")
        return MoveClass::Basic;
    if (s == "full")
        return MoveClass::Full;
    if (s == "closed-world" || s == "closed")
        return MoveClass::ClosedWorld;
    throw std::invalid_argument("unknown move class " + s);
}

namespace {

struct RepInfo {
    FinPresheaf y;
    std::map<ObjectId, std::vector<cat::Morphism>> morphs;
};

const RepInfo& rep_info(const ObjectId& m)
{
    static std::mutex mu;
    static std::map<ObjectId, std::unique_ptr<RepInfo>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[m];
    if (!slot) {
        slot = std::make_unique<RepInfo>();
        slot->y = presheaf::representable(m);
        for (const auto& c : slot->y.objects())
            slot->morphs[c] = cat::hom(c, m);
    }
    return *slot;
}

bool starts_with_s(const cat::Morphism& f) { return !f.path.empty() && f.path[0].name == cat::Gen::S; }

int side_of(const cat::Morphism& f)
{
    for (const auto& g : f.path)
        if (g.name == cat::Gen::Rho)
            return 1;
    return 0;
}

// Sub-presheaf on the given player elements and their channels.
PresheafPtr sub_position(const FinPresheaf& y, const std::vector<Elem>& players)
{
    auto a = std::make_shared<FinPresheaf>();
    std::map<std::uint32_t, std::uint32_t> chan;
    for (const auto& p : players)
        for (int i = 0; i < p.obj.n; ++i) {
            auto c = y.act(cat::d(i, p.obj.n), p.idx);
            if (!chan.count(c))
                chan[c] = a->add(cat::star(), y.labels(cat::star())[c]);
        }
    for (const auto& p : players) {
        auto x = a->add(p.obj, y.label(p));
        for (int i = 0; i < p.obj.n; ++i)
            a->set_action(cat::d(i, p.obj.n), x, chan[y.act(cat::d(i, p.obj.n), p.idx)]);
    }
    return a;
}

std::vector<Elem> side_players(const RepInfo& r, bool initial)
{
    std::vector<Elem> res;
    for (const auto& [c, ms] : r.morphs) {
        if (c.kind != cat::Kind::Player)
            continue;
        for (std::uint32_t x = 0; x < ms.size(); ++x)
            if (starts_with_s(ms[x]) == initial)
                res.push_back({c, x});
    }
    std::stable_sort(res.begin(), res.end(), [&](const Elem& a, const Elem& b) {
        return side_of(r.morphs.at(a.obj)[a.idx]) < side_of(r.morphs.at(b.obj)[b.idx]);
    });
    return res;
}

const char* move_suffix(MoveType t)
{
    switch (t) {
    case MoveType::Fork:
        return "fork";
    case MoveType::HalfForkL:
        return "forkL";
    case MoveType::HalfForkR:
        return "forkR";
    case MoveType::Tick:
        return "tick";
    case MoveType::Nu:
        return "nu";
    case MoveType::Input:
        return "in";
    case MoveType::Output:
        return "out";
    case MoveType::Synch:
        return "sync";
    }
    return "?";
}

std::string avatar_tag(const MoveKind& k, const cat::Morphism& f)
{
    switch (k.type) {
    case MoveType::Fork:
        return f.path.back().name == cat::Gen::L ? "L" : "R";
    case MoveType::HalfForkL:
        return "L";
    case MoveType::HalfForkR:
        return "R";
    case MoveType::Tick:
        return "T";
    case MoveType::Nu:
        return "N";
    case MoveType::Input:
        return "I";
    case MoveType::Output:
        return "O";
    case MoveType::Synch:
        return side_of(f) == 0 ? "O" : "I";
    }
    return "?";
}

std::string element_label(const MoveKind& k, const cat::Morphism& f,
                          const std::vector<const PlayerInfo*>& actors, const Position& pos)
{
    const auto& actor = *actors[static_cast<std::size_t>(side_of(f))];
    auto obj = move_object(k);
    if (f.source == obj)
        return actors[0]->label + "!" + move_suffix(k.type);
    switch (f.source.kind) {
    case cat::Kind::Star: {
        if (f.path[1].name == cat::Gen::T)
            return actors[0]->label + "^";
        return pos.port(actor, f.path[0].index);
    }
    case cat::Kind::Player:
        if (starts_with_s(f))
            return actor.label;
        return actor.label + "." + avatar_tag(k, f);
    case cat::Kind::ForkL:
        return actor.label + "!forkL";
    case cat::Kind::ForkR:
        return actor.label + "!forkR";
    case cat::Kind::Out:
        return actor.label + "!out";
    case cat::Kind::In:
        return actor.label + "!in";
    default:
        return actor.label + "!?";
    }
}

}  // namespace

MoveCospan move_cospan(const MoveKind& k)
{
    if (!valid(k))
        throw move_error("invalid move kind " + to_string(k));
    const auto& r = rep_info(move_object(k));
    auto y = std::make_shared<FinPresheaf>(r.y);
    auto init = sub_position(*y, side_players(r, true));
    auto fin = sub_position(*y, side_players(r, false));
    return {init, y, fin, presheaf::map_by_labels(init, y), presheaf::map_by_labels(fin, y)};
}

std::string describe(const ExtendedMove& m)
{
    const auto& k = m.kind;
    auto p = [&](std::size_t x) { return x < m.players.size() ? m.players[x] : std::string("?"); };
    switch (k.type) {
    case MoveType::Input:
    case MoveType::Output:
        return std::string(k.type == MoveType::Input ? "in(" : "out(") + p(0) + "," +
               std::to_string(k.i) + ")";
    case MoveType::Synch:
        return "sync(" + p(0) + "," + std::to_string(k.i) + "," + p(1) + "," + std::to_string(k.j) +
               ")";
    case MoveType::Fork:
        return "fork(" + p(0) + ")";
    case MoveType::HalfForkL:
        return "lfork(" + p(0) + ")";
    case MoveType::HalfForkR:
        return "rfork(" + p(0) + ")";
    case MoveType::Tick:
        return "tick(" + p(0) + ")";
    case MoveType::Nu:
        return "nu(" + p(0) + ")";
    }
    return "?";
}

std::vector<ExtendedMove> applicable_moves(const Position& p, MoveClass c)
{
    std::vector<ExtendedMove> res;
    auto add = [&](const MoveKind& k, std::vector<std::string> who) {
        if (in_class(k, c))
            res.push_back({k, std::move(who)});
    };
    for (const auto& pl : p.players()) {
        int n = pl.arity;
        add(fork_move(n), {pl.label});
        add(half_fork_l(n), {pl.label});
        add(half_fork_r(n), {pl.label});
        add(tick_move(n), {pl.label});
        add(nu_move(n), {pl.label});
        for (int i = 0; i < n; ++i) {
            add(input_move(n, i), {pl.label});
            add(output_move(n, i), {pl.label});
        }
    }
    if (c == MoveClass::ClosedWorld)
        for (const auto& snd : p.players())
            for (const auto& rcv : p.players()) {
                if (snd.label == rcv.label)
                    continue;
                for (int i = 0; i < snd.arity; ++i)
                    for (int j = 0; j < rcv.arity; ++j)
                        if (snd.ports[i] == rcv.ports[j])
                            res.push_back({synch_move(snd.arity, i, rcv.arity, j),
                                           {snd.label, rcv.label}});
            }
    return res;
}

Play::Play(Position base) : base_(std::move(base)), glued_(base_.presheaf()), final_(base_)
{
    for (const auto& c : base_.channels())
        if (!valid_base_label(c))
            throw position_error("invalid base channel label '" + c + "'");
    for (const auto& p : base_.players())
        if (!valid_base_label(p.label))
            throw position_error("invalid base player label '" + p.label + "'");
}

PresheafMap Play::embedding() const { return presheaf::map_by_labels(base_.presheaf(), glued_); }

std::optional<std::size_t> Play::consumer(const std::string& player) const
{
    auto it = consumer_.find(player);
    if (it == consumer_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Play::creator(const std::string& player) const
{
    auto it = creator_.find(player);
    if (it == creator_.end())
        return std::nullopt;
    return it->second;
}

std::vector<ExtendedMove> Play::canonical_steps() const
{
    std::size_t n = steps_.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& p : steps_[k].players) {
            auto c = creator(p);
            if (c) {
                succ[*c].push_back(k);
                ++indeg[k];
            }
        }
    std::vector<std::string> desc;
    for (const auto& s : steps_)
        desc.push_back(describe(s));
    std::set<std::pair<std::string, std::size_t>> avail;
    for (std::size_t k = 0; k < n; ++k)
        if (indeg[k] == 0)
            avail.insert({desc[k], k});
    std::vector<ExtendedMove> res;
    while (!avail.empty()) {
        auto [d, k] = *avail.begin();
        avail.erase(avail.begin());
        res.push_back(steps_[k]);
        for (auto s : succ[k])
            if (--indeg[s] == 0)
                avail.insert({desc[s], s});
    }
    return res;
}

std::string Play::key() const
{
    std::string s;
    for (const auto& m : canonical_steps()) {
        if (!s.empty())
            s += "; ";
        s += describe(m);
    }
    return s;
}

std::vector<std::size_t> Play::maximal_steps() const
{
    std::vector<bool> has_dependent(steps_.size(), false);
    for (const auto& [label, k] : consumer_) {
        auto c = creator(label);
        if (c)
            has_dependent[*c] = true;
    }
    std::vector<std::size_t> res;
    for (std::size_t k = 0; k < steps_.size(); ++k)
        if (!has_dependent[k])
            res.push_back(k);
    return res;
}

Play apply_move(const Play& u, const ExtendedMove& m)
{
    const auto& k = m.kind;
    if (!valid(k))
        throw move_error("invalid move kind " + to_string(k));
    std::size_t need = k.type == MoveType::Synch ? 2 : 1;
    if (m.players.size() != need)
        throw move_error(describe(m) + ": wrong number of players");
    std::vector<const PlayerInfo*> actors;
    for (const auto& l : m.players) {
        auto p = u.final().find_player(l);
        if (!p)
            throw move_error(describe(m) + ": no live player " + l);
        actors.push_back(p);
    }
    if (actors[0]->arity != k.n)
        throw move_error(describe(m) + ": player arity " + std::to_string(actors[0]->arity) +
                         " does not match " + to_string(k));
    if (need == 2) {
        if (actors[0] == actors[1])
            throw move_error(describe(m) + ": synchronisation needs two distinct players");
        if (actors[1]->arity != k.m)
            throw move_error(describe(m) + ": receiver arity does not match " + to_string(k));
        if (actors[0]->ports[k.i] != actors[1]->ports[k.j])
            throw move_error(describe(m) + ": players do not share the synchronised channel");
    }

    const auto& r = rep_info(move_object(k));
    // The representable, relabelled; channels the actors already share are
    // identified, so this is a quotient of it.
    auto mv = std::make_shared<FinPresheaf>();
    std::vector<std::uint32_t> chan;
    for (const auto& [c, ms] : r.morphs)
        for (const auto& f : ms) {
            auto l = element_label(k, f, actors, u.final());
            if (c.kind == cat::Kind::Star) {
                auto e = mv->find(l);
                chan.push_back(e ? e->idx : mv->add(c, l));
            } else {
                mv->add(c, l);
            }
        }
    for (const auto& [c, ms] : r.morphs)
        for (const auto& g : cat::generators_into(c))
            for (std::uint32_t x = 0; x < ms.size(); ++x) {
                auto v = r.y.act(g, x);
                mv->set_action(g, x, g.source.kind == cat::Kind::Star ? chan[v] : v);
            }

    auto init = sub_position(*mv, side_players(r, true));
    auto po = presheaf::pushout(presheaf::map_by_labels(init, u.glued()),
                                presheaf::map_by_labels(init, mv));

    Play v = u;
    auto idx = v.steps_.size();
    v.steps_.push_back(m);
    v.glued_ = po.object;
    for (const auto* a : actors)
        v.consumer_[a->label] = idx;

    std::vector<std::pair<std::string, std::vector<std::string>>> players;
    for (const auto& p : u.final().players()) {
        if (std::find(m.players.begin(), m.players.end(), p.label) != m.players.end())
            continue;
        std::vector<std::string> ports;
        for (auto c : p.ports)
            ports.push_back(u.final().channels()[c]);
        players.push_back({p.label, ports});
    }
    const auto& chans = po.object->labels(cat::star());
    for (const auto& e : side_players(r, false)) {
        const auto& label = mv->label(e);
        auto pe = po.object->find(label);
        if (!pe)
            throw std::logic_error("avatar label " + label + " was renamed by the pushout");
        std::vector<std::string> ports;
        for (int i = 0; i < e.obj.n; ++i)
            ports.push_back(chans[po.object->act(cat::d(i, e.obj.n), pe->idx)]);
        players.push_back({label, ports});
        v.creator_[label] = idx;
    }
    v.final_ = Position::build(chans, players);
    return v;
}

Play replay(const Position& base, const std::vector<ExtendedMove>& steps)
{
    Play u(base);
    for (const auto& s : steps)
        u = apply_move(u, s);
    return u;
}

bool play_iso(const Play& u, const Play& v)
{
    if (!(*u.base().presheaf() == *v.base().presheaf()))
        return false;
    const auto& g = *u.glued();
    const auto& h = *v.glued();
    if (g.objects() != h.objects())
        return false;
    for (const auto& o : g.objects())
        if (g.size(o) != h.size(o))
            return false;
    auto eu = u.embedding();
    auto ev = v.embedding();
    std::map<Elem, std::uint32_t> fixed;
    for (const auto& [o, comp] : eu.components)
        for (std::uint32_t x = 0; x < comp.size(); ++x)
            fixed[{o, comp[x]}] = ev.components.at(o)[x];
    presheaf::MapOptions opts;
    opts.monos_only = true;
    opts.max_results = 1;
    opts.allowed = [&](const Elem& a, const Elem& b) {
        auto it = fixed.find(a);
        return it == fixed.end() || it->second == b.idx;
    };
    return !presheaf::enumerate_maps(u.glued(), v.glued(), opts).empty();
}

std::vector<PresheafMap> base_preserving_embeddings(const Play& v, const Play& u)
{
    auto image = [](const Play& w) {
        std::set<Elem> r;
        for (const auto& [o, comp] : w.embedding().components)
            for (auto x : comp)
                r.insert({o, x});
        return r;
    };
    auto from = image(v);
    auto to = image(u);
    presheaf::MapOptions opts;
    opts.monos_only = true;
    opts.allowed = [&](const Elem& a, const Elem& b) { return !from.count(a) || to.count(b); };
    return presheaf::enumerate_maps(v.glued(), u.glued(), opts);
}

bool is_closed_world(const Play& u)
{
    const auto& g = *u.glued();
    std::set<Elem> covered;
    for (const auto& o : g.objects()) {
        if (o.kind != cat::Kind::Sync && o.kind != cat::Kind::Fork)
            continue;
        for (const auto& gen : cat::generators_into(o))
            for (std::uint32_t x = 0; x < g.size(o); ++x)
                covered.insert({gen.source, g.act(gen, x)});
    }
    for (const auto& o : g.objects()) {
        auto kd = o.kind;
        if (kd != cat::Kind::In && kd != cat::Kind::Out && kd != cat::Kind::ForkL &&
            kd != cat::Kind::ForkR)
            continue;
        for (std::uint32_t x = 0; x < g.size(o); ++x)
            if (!covered.count({o, x}))
                return false;
    }
    return true;
}

bool is_successful(const Play& u)
{
    for (const auto& o : u.glued()->objects())
        if (o.kind == cat::Kind::Tick)
            return true;
    return false;
}

std::vector<Play> enumerate_plays(const Position& x, int depth, MoveClass c)
{
    std::vector<Play> res{Play(x)};
    std::unordered_set<std::string> seen{res[0].key()};
    std::size_t level_begin = 0;
    for (int d = 0; d < depth; ++d) {
        std::size_t level_end = res.size();
        for (std::size_t k = level_begin; k < level_end; ++k)
            for (const auto& m : applicable_moves(res[k].final(), c)) {
                auto v = apply_move(res[k], m);
                if (seen.insert(v.key()).second)
                    res.push_back(std::move(v));
            }
        level_begin = level_end;
    }
    return res;
}

std::vector<Play> enumerate_closed_world(const Position& x, int depth)
{
    return enumerate_plays(x, depth, MoveClass::ClosedWorld);
}

namespace {

std::vector<std::pair<MoveKind, std::string>> view_children(const Play& u, const std::string& q,
                                                            int arity)
{
    auto c = u.consumer(q);
    if (!c)
        return {};
    const auto& s = u.steps()[*c];
    const auto& k = s.kind;
    switch (k.type) {
    case MoveType::Fork:
        return {{half_fork_l(arity), q + ".L"}, {half_fork_r(arity), q + ".R"}};
    case MoveType::HalfForkL:
        return {{half_fork_l(arity), q + ".L"}};
    case MoveType::HalfForkR:
        return {{half_fork_r(arity), q + ".R"}};
    case MoveType::Tick:
        return {{tick_move(arity), q + ".T"}};
    case MoveType::Nu:
        return {{nu_move(arity), q + ".N"}};
    case MoveType::Input:
        return {{input_move(arity, k.i), q + ".I"}};
    case MoveType::Output:
        return {{output_move(arity, k.i), q + ".O"}};
    case MoveType::Synch:
        if (s.players[0] == q)
            return {{output_move(arity, k.i), q + ".O"}};
        return {{input_move(arity, k.j), q + ".I"}};
    }
    return {};
}

}  // namespace

std::vector<ViewNode> view_forest(const Play& u)
{
    std::vector<ViewNode> nodes;
    for (const auto& p : u.base().players())
        nodes.push_back({p.label, p.label, -1, {}, p.arity, 0});
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto node = nodes[k];
        for (auto& [mv, avatar] : view_children(u, node.avatar, node.arity)) {
            int arity = mv.type == MoveType::Nu ? node.arity + 1 : node.arity;
            nodes.push_back({avatar, node.base_player, static_cast<int>(k), mv, arity,
                             node.depth + 1});
        }
    }
    return nodes;
}

std::vector<MoveKind> view_moves(const std::vector<ViewNode>& forest, int k)
{
    std::vector<MoveKind> res;
    while (forest[k].parent >= 0) {
        res.push_back(forest[k].move);
        k = forest[k].parent;
    }
    std::reverse(res.begin(), res.end());
    return res;
}

std::vector<View> views_into(const Play& u)
{
    auto forest = view_forest(u);
    std::vector<View> res;
    for (int k = 0; k < static_cast<int>(forest.size()); ++k) {
        std::vector<int> chain;
        for (int x = k; x >= 0; x = forest[x].parent)
            chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        const auto* root = u.base().find_player(forest[chain[0]].avatar);
        std::vector<std::string> ports;
        for (auto c : root->ports)
            ports.push_back(u.base().channels()[c]);
        Play v(Position::build(ports, {{root->label, ports}}));
        for (std::size_t x = 1; x < chain.size(); ++x)
            v = apply_move(v, {forest[chain[x]].move, {forest[chain[x - 1]].avatar}});
        auto emb = presheaf::map_by_labels(v.glued(), u.glued());
        res.push_back({std::move(v), std::move(emb), k});
    }
    return res;
}

namespace {

std::string q(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string to_dot(const Position& p, const std::string& name)
{
    std::ostringstream os;
    os << "graph " << q(name) << " {\n";
    for (const auto& c : p.channels())
        os << "  " << q("c:" + c) << " [shape=point, xlabel=" << q(c) << "];\n";
    for (const auto& pl : p.players()) {
        os << "  " << q("p:" + pl.label) << " [shape=triangle, label=" << q(pl.label) << "];\n";
        for (std::size_t i = 0; i < pl.ports.size(); ++i)
            os << "  " << q("p:" + pl.label) << " -- " << q("c:" + p.channels()[pl.ports[i]])
               << " [label=" << q(std::to_string(i)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_dot(const Play& u, const std::string& name)
{
    std::ostringstream os;
    os << "digraph " << q(name) << " {\n  rankdir=BT;\n";
    const auto& g = *u.glued();
    for (const auto& c : g.labels(cat::star()))
        os << "  " << q("c:" + c) << " [shape=point, xlabel=" << q(c) << "];\n";
    std::set<std::string> live;
    for (const auto& p : u.final().players())
        live.insert(p.label);
    for (const auto& o : g.objects()) {
        if (o.kind != cat::Kind::Player)
            continue;
        for (const auto& l : g.labels(o))
            os << "  " << q("p:" + l) << " [shape=triangle, label=" << q(l)
               << (live.count(l) ? ", style=bold" : "") << "];\n";
    }
    for (std::size_t k = 0; k < u.steps().size(); ++k) {
        const auto& s = u.steps()[k];
        auto node = "m" + std::to_string(k);
        os << "  " << node << " [shape=box, label=" << q(describe(s)) << "];\n";
        for (const auto& p : s.players)
            os << "  " << q("p:" + p) << " -> " << node << ";\n";
        for (const auto& o : g.objects()) {
            if (o.kind != cat::Kind::Player)
                continue;
            for (const auto& l : g.labels(o)) {
                auto c = u.creator(l);
                if (c && *c == k)
                    os << "  " << node << " -> " << q("p:" + l) << ";\n";
            }
        }
    }
    for (const auto& p : u.final().players())
        for (std::size_t i = 0; i < p.ports.size(); ++i)
            os << "  " << q("p:" + p.label) << " -> " << q("c:" + u.final().channels()[p.ports[i]])
               << " [style=dashed, arrowhead=none, label=" << q(std::to_string(i)) << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace innocent::arena
