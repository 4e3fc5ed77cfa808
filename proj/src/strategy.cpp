#include "innocent/strategy.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace innocent::strategy {

MoveKey key_of(const MoveKind& k)
{
    switch (k.type) {
    case MoveType::HalfForkL:
        return {MoveType::Fork, 0, Slot::T1};
    case MoveType::HalfForkR:
        return {MoveType::Fork, 0, Slot::T2};
    case MoveType::Tick:
    case MoveType::Nu:
        return {k.type, 0, Slot::T};
    case MoveType::Input:
    case MoveType::Output:
        return {k.type, k.i, Slot::T};
    case MoveType::Fork:
    case MoveType::Synch:
        break;
    }
    throw std::invalid_argument("not a view move: " + arena::to_string(k));
}

std::string to_string(const MoveKey& k)
{
    switch (k.type) {
    case MoveType::Fork:
        return k.slot == Slot::T1 ? "fork.1" : "fork.2";
    case MoveType::Tick:
        return "tick";
    case MoveType::Nu:
        return "new";
    case MoveType::Input:
        return "in " + std::to_string(k.i);
    case MoveType::Output:
        return "out " + std::to_string(k.i);
    default:
        return "?";
    }
}

const StrategyPtr* Strategy::continuation(const MoveKey& k) const
{
    auto it = std::lower_bound(moves.begin(), moves.end(), k,
                               [](const auto& p, const MoveKey& x) { return p.first < x; });
    if (it == moves.end() || it->first != k)
        return nullptr;
    return &it->second;
}

int arity_after(const MoveKey& k, int n) { return k.type == MoveType::Nu ? n + 1 : n; }

StrategyPtr node(int arity, std::vector<std::pair<MoveKey, StrategyPtr>> moves)
{
    std::sort(moves.begin(), moves.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < moves.size(); ++k) {
        if (k > 0 && moves[k].first == moves[k - 1].first)
            throw std::invalid_argument("duplicate move key " + to_string(moves[k].first));
        if (moves[k].second->arity != arity_after(moves[k].first, arity))
            throw arity_error("continuation arity mismatch at " + to_string(moves[k].first));
        if ((moves[k].first.type == MoveType::Input || moves[k].first.type == MoveType::Output) &&
            (moves[k].first.i < 0 || moves[k].first.i >= arity))
            throw arity_error("channel out of range at " + to_string(moves[k].first));
    }
    auto s = std::make_shared<Strategy>();
    s->tag = Strategy::Tag::Node;
    s->arity = arity;
    s->moves = std::move(moves);
    return s;
}

StrategyPtr sum_of(int arity, std::vector<StrategyPtr> parts)
{
    for (const auto& p : parts)
        if (p->arity != arity)
            throw arity_error("sum part of arity " + std::to_string(p->arity) + " in arity " +
                              std::to_string(arity));
    auto s = std::make_shared<Strategy>();
    s->tag = Strategy::Tag::Sum;
    s->arity = arity;
    s->parts = std::move(parts);
    return s;
}

StrategyPtr empty(int arity) { return sum_of(arity, {}); }
StrategyPtr zero(int arity) { return node(arity, {}); }

StrategyPtr var(int arity, std::string name, std::vector<int> args, ccs::DefsPtr defs)
{
    auto s = std::make_shared<Strategy>();
    s->tag = Strategy::Tag::Var;
    s->arity = arity;
    s->name = std::move(name);
    s->args = std::move(args);
    s->defs = std::move(defs);
    return s;
}

StrategyPtr translate(const ccs::TermPtr& t, int n, const ccs::DefsPtr& defs)
{
    using ccs::Term;
    switch (t->tag) {
    case Term::Tag::Apply:
        return var(n, t->name, t->args, defs);
    case Term::Tag::Par:
        return node(n, {{{MoveType::Fork, 0, Slot::T1}, translate(t->left, n, defs)},
                        {{MoveType::Fork, 0, Slot::T2}, translate(t->right, n, defs)}});
    case Term::Tag::Nu:
        return node(n, {{{MoveType::Nu, 0, Slot::T}, translate(t->left, n + 1, defs)}});
    case Term::Tag::Tick:
        return node(n, {{{MoveType::Tick, 0, Slot::T}, translate(t->left, n, defs)}});
    case Term::Tag::Sum: {
        std::map<MoveKey, std::vector<StrategyPtr>> by_key;
        for (const auto& g : t->guards) {
            MoveKey k{g.pol == ccs::Pol::In ? MoveType::Input : MoveType::Output, g.chan, Slot::T};
            by_key[k].push_back(translate(g.cont, n, defs));
        }
        std::vector<std::pair<MoveKey, StrategyPtr>> moves;
        for (auto& [k, parts] : by_key)
            moves.push_back({k, parts.size() == 1 ? parts[0] : sum_of(n, std::move(parts))});
        return node(n, std::move(moves));
    }
    }
    return empty(n);
}

StrategyPtr translate(const ccs::Program& p)
{
    return translate(p.main, static_cast<int>(p.channels.size()), p.defs);
}

StrategyPtr unfold(const Strategy& v)
{
    using Key = std::tuple<const ccs::Definitions*, std::string, int, std::vector<int>>;
    // Values keep their definitions alive, so the raw pointer in the key stays valid.
    static std::mutex mu;
    static std::map<Key, StrategyPtr> memo;
    if (v.tag != Strategy::Tag::Var)
        throw std::invalid_argument("unfold of a non-variable");
    if (!v.defs)
        throw std::invalid_argument("unbound variable " + v.name);
    Key key{v.defs.get(), v.name, v.arity, v.args};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }
    auto d = v.defs->find(v.name);
    if (!d)
        throw std::invalid_argument("unbound variable " + v.name);
    if (d->params.size() != v.args.size())
        throw arity_error("variable " + v.name + " applied to the wrong number of channels");
    auto body = ccs::substitute(d->body, static_cast<int>(d->params.size()), v.args, v.arity);
    auto res = translate(body, v.arity, v.defs);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, res).first->second;
}

std::vector<std::uint32_t> StateSet::restriction_to(std::size_t k) const
{
    std::size_t top = counts.size() - 1;
    std::vector<std::uint32_t> m(counts[top]);
    for (std::uint32_t x = 0; x < m.size(); ++x)
        m[x] = x;
    for (std::size_t level = top; level > k; --level)
        for (auto& x : m)
            x = restrict[level - 1][x];
    return m;
}

bool StateSet::monotone() const
{
    for (const auto& r : restrict)
        if (!std::is_sorted(r.begin(), r.end()))
            return false;
    return true;
}

namespace {

StateSet zeros(std::size_t len)
{
    StateSet s;
    s.counts.assign(len + 1, 0);
    s.restrict.assign(len, {});
    return s;
}

StateSet eval_rec(const StrategyPtr& f, const std::vector<MoveKind>& view, std::size_t pos,
                  int fuel)
{
    std::size_t len = view.size() - pos;
    switch (f->tag) {
    case Strategy::Tag::Var:
        if (fuel <= 0)
            return zeros(len);
        return eval_rec(unfold(*f), view, pos, fuel - 1);
    case Strategy::Tag::Sum: {
        auto res = zeros(len);
        for (const auto& p : f->parts) {
            auto s = eval_rec(p, view, pos, fuel);
            for (std::size_t k = 0; k < len; ++k)
                for (auto x : s.restrict[k])
                    res.restrict[k].push_back(x + static_cast<std::uint32_t>(res.counts[k]));
            for (std::size_t k = 0; k <= len; ++k)
                res.counts[k] += s.counts[k];
        }
        return res;
    }
    case Strategy::Tag::Node: {
        auto res = zeros(len);
        res.counts[0] = 1;
        if (len == 0)
            return res;
        const auto* c = f->continuation(key_of(view[pos]));
        if (!c)
            return res;
        auto sub = eval_rec(*c, view, pos + 1, fuel);
        for (std::size_t k = 0; k < len; ++k)
            res.counts[k + 1] = sub.counts[k];
        res.restrict[0].assign(sub.counts[0], 0);
        for (std::size_t k = 0; k + 1 < len; ++k)
            res.restrict[k + 1] = std::move(sub.restrict[k]);
        return res;
    }
    }
    return zeros(len);
}

void check_view(int arity, const std::vector<MoveKind>& view)
{
    int n = arity;
    for (const auto& m : view) {
        if (m.n != n)
            throw arity_error("view move " + arena::to_string(m) + " at arity " +
                              std::to_string(n));
        key_of(m);
        if (m.type == MoveType::Nu)
            ++n;
    }
}

}  // namespace

StateSet eval(const StrategyPtr& f, const std::vector<MoveKind>& view, int fuel)
{
    check_view(f->arity, view);
    return eval_rec(f, view, 0, fuel);
}

int default_fuel(std::size_t k, std::size_t i)
{
    auto a = (k + 1) * i;
    auto b = k * (i + 1);
    return static_cast<int>(std::max(a, b));
}

std::size_t definition_count(const StrategyPtr& f)
{
    std::vector<const Strategy*> stack{f.get()};
    std::set<const Strategy*> seen;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        if (!seen.insert(s).second)
            continue;
        if (s->tag == Strategy::Tag::Var && s->defs)
            return s->defs->size();
        for (const auto& [k, c] : s->moves)
            stack.push_back(c.get());
        for (const auto& p : s->parts)
            stack.push_back(p.get());
    }
    return 0;
}

StateSet eval(const StrategyPtr& f, const std::vector<MoveKind>& view)
{
    return eval(f, view, default_fuel(definition_count(f), view.size()));
}

namespace {

void resolve_into(const StrategyPtr& f, int fuel, std::vector<Committed>& out)
{
    switch (f->tag) {
    case Strategy::Tag::Node:
        out.push_back({f, fuel});
        return;
    case Strategy::Tag::Sum:
        for (const auto& p : f->parts)
            resolve_into(p, fuel, out);
        return;
    case Strategy::Tag::Var:
        if (fuel > 0)
            resolve_into(unfold(*f), fuel - 1, out);
        return;
    }
}

void fingerprint_to(std::ostream& os, const Strategy& s)
{
    switch (s.tag) {
    case Strategy::Tag::Node:
        os << "N" << s.arity << "{";
        for (const auto& [k, c] : s.moves) {
            os << to_string(k) << ":";
            fingerprint_to(os, *c);
            os << ";";
        }
        os << "}";
        return;
    case Strategy::Tag::Sum:
        os << "S" << s.arity << "[";
        for (const auto& p : s.parts) {
            fingerprint_to(os, *p);
            os << ";";
        }
        os << "]";
        return;
    case Strategy::Tag::Var:
        os << "V" << s.arity << ":" << s.name << "(";
        for (auto a : s.args)
            os << a << ",";
        os << ")";
        return;
    }
}

}  // namespace

std::vector<Committed> resolve(const StrategyPtr& f, int fuel)
{
    std::vector<Committed> out;
    resolve_into(f, fuel, out);
    return out;
}

std::string fingerprint(const StrategyPtr& f)
{
    std::ostringstream os;
    fingerprint_to(os, *f);
    return os.str();
}

Amalgam amalgamate(const arena::Position& x, std::map<std::string, StrategyPtr> parts)
{
    for (const auto& p : x.players()) {
        auto it = parts.find(p.label);
        if (it == parts.end())
            throw amalgamation_error("no strategy for player " + p.label);
        if (it->second->arity != p.arity)
            throw amalgamation_error("strategy for " + p.label + " has arity " +
                                     std::to_string(it->second->arity) + ", player has " +
                                     std::to_string(p.arity));
    }
    for (const auto& [label, s] : parts)
        if (!x.find_player(label))
            throw amalgamation_error("strategy given for unknown player " + label);
    return {std::move(parts)};
}

StateSet eval(const Amalgam& a, const std::string& base_player, const std::vector<MoveKind>& view)
{
    auto it = a.parts.find(base_player);
    if (it == a.parts.end())
        throw amalgamation_error("no strategy for player " + base_player);
    return eval(it->second, view);
}

namespace {

std::string key_text(const MoveKey& k, const std::vector<std::string>& names)
{
    auto chan = [&](int i) {
        return i < static_cast<int>(names.size()) ? names[i] : "^" + std::to_string(i);
    };
    switch (k.type) {
    case MoveType::Input:
        return "in " + chan(k.i);
    case MoveType::Output:
        return "out " + chan(k.i);
    default:
        return to_string(k);
    }
}

std::string head(const Strategy& s, const std::vector<std::string>& names)
{
    switch (s.tag) {
    case Strategy::Tag::Node:
        return s.moves.empty() ? "state, no moves" : "state";
    case Strategy::Tag::Sum:
        return "sum of " + std::to_string(s.parts.size());
    case Strategy::Tag::Var: {
        std::string r = "var " + s.name + "(";
        for (std::size_t k = 0; k < s.args.size(); ++k)
            r += (k ? ", " : "") +
                 (s.args[k] < static_cast<int>(names.size()) ? names[s.args[k]]
                                                            : "^" + std::to_string(s.args[k]));
        return r + ")";
    }
    }
    return "?";
}

void dump_rec(std::ostream& os, const Strategy& s, int depth, std::vector<std::string> names,
              const std::string& indent)
{
    if (depth <= 0)
        return;
    if (s.tag == Strategy::Tag::Node) {
        for (const auto& [k, c] : s.moves) {
            auto sub = names;
            if (k.type == MoveType::Nu)
                sub.push_back("^" + std::to_string(names.size()));
            os << indent << key_text(k, names) << " -> " << head(*c, sub) << "\n";
            dump_rec(os, *c, depth - 1, sub, indent + "  ");
        }
    } else if (s.tag == Strategy::Tag::Sum) {
        for (std::size_t k = 0; k < s.parts.size(); ++k) {
            os << indent << "[" << k << "] " << head(*s.parts[k], names) << "\n";
            dump_rec(os, *s.parts[k], depth, names, indent + "  ");
        }
    }
}

}  // namespace

std::string dump(const StrategyPtr& f, int depth, const std::vector<std::string>& channels)
{
    std::ostringstream os;
    os << head(*f, channels) << "\n";
    dump_rec(os, *f, depth, channels, "  ");
    return os.str();
}

}  // namespace innocent::strategy
