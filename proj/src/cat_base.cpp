#include "innocent/cat_base.hpp"

#include <algorithm>
#include <set>

namespace innocent::cat {

ObjectId star() { return {}; }
ObjectId player(int n) { return {Kind::Player, n}; }
ObjectId tick(int n) { return {Kind::Tick, n}; }
ObjectId fork_l(int n) { return {Kind::ForkL, n}; }
ObjectId fork_r(int n) { return {Kind::ForkR, n}; }
ObjectId fork(int n) { return {Kind::Fork, n}; }
ObjectId nu(int n) { return {Kind::Nu, n}; }
ObjectId in(int n, int i) { return {Kind::In, n, i}; }
ObjectId out(int n, int i) { return {Kind::Out, n, i}; }
ObjectId sync(int n, int i, int m, int j) { return {Kind::Sync, n, i, m, j}; }

bool valid(const ObjectId& o)
{
    switch (o.kind) {
    case Kind::Star:
        return o.n == 0 && o.i == 0 && o.m == 0 && o.j == 0;
    case Kind::Player:
    case Kind::Tick:
    case Kind::ForkL:
    case Kind::ForkR:
    case Kind::Fork:
    case Kind::Nu:
        return o.n >= 0 && o.i == 0 && o.m == 0 && o.j == 0;
    case Kind::In:
    case Kind::Out:
        return o.n > 0 && o.i >= 0 && o.i < o.n && o.m == 0 && o.j == 0;
    case Kind::Sync:
        return o.n > 0 && o.m > 0 && o.i >= 0 && o.i < o.n && o.j >= 0 && o.j < o.m;
    }
    return false;
}

int grade(const ObjectId& o)
{
    switch (o.kind) {
    case Kind::Star:
        return 0;
    case Kind::Player:
        return 1;
    case Kind::Fork:
    case Kind::Sync:
        return 3;
    default:
        return 2;
    }
}

bool is_half_move(const ObjectId& o) { return grade(o) == 2; }

std::string to_string(const ObjectId& o)
{
    auto n = std::to_string(o.n);
    switch (o.kind) {
    case Kind::Star:
        return "*";
    case Kind::Player:
        return "[" + n + "]";
    case Kind::Tick:
        return "tick" + n;
    case Kind::ForkL:
        return "forkL" + n;
    case Kind::ForkR:
        return "forkR" + n;
    case Kind::Fork:
        return "fork" + n;
    case Kind::Nu:
        return "nu" + n;
    case Kind::In:
        return "in" + n + "," + std::to_string(o.i);
    case Kind::Out:
        return "out" + n + "," + std::to_string(o.i);
    case Kind::Sync:
        return "sync" + n + "," + std::to_string(o.i) + "," + std::to_string(o.m) + "," +
               std::to_string(o.j);
    }
    return "?";
}

GenArrow d(int i, int n) { return {Gen::D, i, star(), player(n)}; }

GenArrow s_to(const ObjectId& target) { return {Gen::S, 0, player(target.n), target}; }

GenArrow t_to(const ObjectId& target)
{
    int n = target.kind == Kind::Nu ? target.n + 1 : target.n;
    return {Gen::T, 0, player(n), target};
}

GenArrow l_to(int n) { return {Gen::L, 0, fork_l(n), fork(n)}; }
GenArrow r_to(int n) { return {Gen::R, 0, fork_r(n), fork(n)}; }

GenArrow eps_to(const ObjectId& y) { return {Gen::Eps, 0, out(y.n, y.i), y}; }
GenArrow rho_to(const ObjectId& y) { return {Gen::Rho, 0, in(y.m, y.j), y}; }

bool well_typed(const GenArrow& g)
{
    if (!valid(g.source) || !valid(g.target))
        return false;
    const auto& a = g.source;
    const auto& b = g.target;
    switch (g.name) {
    case Gen::D:
        return a.kind == Kind::Star && b.kind == Kind::Player && g.index >= 0 && g.index < b.n;
    case Gen::S:
    case Gen::T: {
        if (g.index != 0 || a.kind != Kind::Player || !is_half_move(b))
            return false;
        if (b.kind == Kind::Nu)
            return a.n == (g.name == Gen::S ? b.n : b.n + 1);
        return a.n == b.n;
    }
    case Gen::L:
        return g.index == 0 && a.kind == Kind::ForkL && b.kind == Kind::Fork && a.n == b.n;
    case Gen::R:
        return g.index == 0 && a.kind == Kind::ForkR && b.kind == Kind::Fork && a.n == b.n;
    case Gen::Eps:
        return g.index == 0 && b.kind == Kind::Sync && a == out(b.n, b.i);
    case Gen::Rho:
        return g.index == 0 && b.kind == Kind::Sync && a == in(b.m, b.j);
    }
    return false;
}

std::string gen_name(const GenArrow& g)
{
    switch (g.name) {
    case Gen::D:
        return "d" + std::to_string(g.index);
    case Gen::S:
        return "s";
    case Gen::T:
        return "t";
    case Gen::L:
        return "l";
    case Gen::R:
        return "r";
    case Gen::Eps:
        return "eps";
    case Gen::Rho:
        return "rho";
    }
    return "?";
}

std::string to_string(const GenArrow& g)
{
    return gen_name(g) + ":" + to_string(g.source) + "->" + to_string(g.target);
}

std::vector<GenArrow> generators_into(const ObjectId& b)
{
    std::vector<GenArrow> res;
    if (!valid(b))
        return res;
    switch (b.kind) {
    case Kind::Star:
        break;
    case Kind::Player:
        for (int i = 0; i < b.n; ++i)
            res.push_back(d(i, b.n));
        break;
    case Kind::Fork:
        res.push_back(l_to(b.n));
        res.push_back(r_to(b.n));
        break;
    case Kind::Sync:
        res.push_back(eps_to(b));
        res.push_back(rho_to(b));
        break;
    default:
        res.push_back(s_to(b));
        res.push_back(t_to(b));
        break;
    }
    return res;
}

std::vector<GenArrow> generators_from(const ObjectId& a, int max_arity)
{
    std::vector<GenArrow> res;
    if (!valid(a))
        return res;
    switch (a.kind) {
    case Kind::Star:
        for (int n = 1; n <= max_arity; ++n)
            for (int i = 0; i < n; ++i)
                res.push_back(d(i, n));
        break;
    case Kind::Player: {
        int n = a.n;
        for (auto o : {tick(n), fork_l(n), fork_r(n)}) {
            res.push_back(s_to(o));
            res.push_back(t_to(o));
        }
        res.push_back(s_to(nu(n)));
        if (n >= 1)
            res.push_back(t_to(nu(n - 1)));
        for (int i = 0; i < n; ++i) {
            res.push_back(s_to(in(n, i)));
            res.push_back(t_to(in(n, i)));
            res.push_back(s_to(out(n, i)));
            res.push_back(t_to(out(n, i)));
        }
        break;
    }
    case Kind::ForkL:
        res.push_back(l_to(a.n));
        break;
    case Kind::ForkR:
        res.push_back(r_to(a.n));
        break;
    case Kind::Out:
        for (int m = 1; m <= max_arity; ++m)
            for (int j = 0; j < m; ++j)
                res.push_back(eps_to(sync(a.n, a.i, m, j)));
        break;
    case Kind::In:
        for (int n = 1; n <= max_arity; ++n)
            for (int i = 0; i < n; ++i)
                res.push_back(rho_to(sync(n, i, a.n, a.i)));
        break;
    default:
        break;
    }
    return res;
}

Morphism identity(const ObjectId& a) { return {a, a, {}}; }

Morphism from_generator(const GenArrow& g)
{
    if (!well_typed(g))
        throw composition_error("ill-typed generator " + to_string(g));
    return {g.source, g.target, {g}};
}

Morphism compose(const Morphism& f, const Morphism& g)
{
    if (f.target != g.source)
        throw composition_error("cannot compose " + to_string(f) + " then " + to_string(g));
    Morphism h{f.source, g.target, f.path};
    h.path.insert(h.path.end(), g.path.begin(), g.path.end());
    return normalize(std::move(h));
}

namespace {

// One rewrite step at position k; returns true if something changed.
bool rewrite_at(std::vector<GenArrow>& p, std::size_t k)
{
    // [d_i, t] -> [d_i, s]
    if (k + 1 < p.size() && p[k].name == Gen::D && p[k + 1].name == Gen::T) {
        const auto& tgt = p[k + 1].target;
        int i = p[k].index;
        if (tgt.kind == Kind::Nu) {
            if (i < tgt.n) {
                p[k] = d(i, tgt.n);
                p[k + 1] = s_to(tgt);
                return true;
            }
            return false;
        }
        p[k + 1] = s_to(tgt);
        return true;
    }
    // [s, r] -> [s, l]
    if (k + 1 < p.size() && p[k].name == Gen::S && p[k + 1].name == Gen::R) {
        int n = p[k + 1].target.n;
        p[k + 1] = l_to(n);
        p[k] = s_to(fork_l(n));
        return true;
    }
    // [d_j, s, rho] -> [d_i, s, eps] where j, i are the synchronised channels
    if (k + 2 < p.size() && p[k].name == Gen::D && p[k + 1].name == Gen::S &&
        p[k + 2].name == Gen::Rho) {
        const auto& y = p[k + 2].target;
        if (p[k].index == y.j) {
            p[k] = d(y.i, y.n);
            p[k + 1] = s_to(out(y.n, y.i));
            p[k + 2] = eps_to(y);
            return true;
        }
    }
    return false;
}

}  // namespace

Morphism normalize(Morphism f)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < f.path.size(); ++k) {
            if (rewrite_at(f.path, k)) {
                changed = true;
                break;
            }
        }
    }
    return f;
}

std::string to_string(const Morphism& f)
{
    if (f.path.empty())
        return "id_" + to_string(f.source);
    std::string s;
    for (const auto& g : f.path) {
        if (!s.empty())
            s += ";";
        s += gen_name(g);
    }
    return s + ":" + to_string(f.source) + "->" + to_string(f.target);
}

namespace {

void paths_into(const ObjectId& a, const ObjectId& cur, const ObjectId& b,
                std::vector<GenArrow>& suffix, std::set<Morphism>& out_set)
{
    if (a == cur)
        out_set.insert(normalize(Morphism{a, b, {suffix.rbegin(), suffix.rend()}}));
    if (grade(cur) <= grade(a))
        return;
    for (const auto& g : generators_into(cur)) {
        suffix.push_back(g);
        paths_into(a, g.source, b, suffix, out_set);
        suffix.pop_back();
    }
}

}  // namespace

std::vector<Morphism> hom(const ObjectId& a, const ObjectId& b)
{
    if (!valid(a) || !valid(b))
        return {};
    std::set<Morphism> res;
    std::vector<GenArrow> suffix;
    paths_into(a, b, b, suffix, res);
    return {res.begin(), res.end()};
}

std::vector<ObjectId> objects_below(const ObjectId& b)
{
    std::set<ObjectId> seen{b};
    std::vector<ObjectId> todo{b};
    while (!todo.empty()) {
        auto o = todo.back();
        todo.pop_back();
        for (const auto& g : generators_into(o))
            if (seen.insert(g.source).second)
                todo.push_back(g.source);
    }
    std::vector<ObjectId> v(seen.begin(), seen.end());
    std::stable_sort(v.begin(), v.end(),
                     [](const ObjectId& x, const ObjectId& y) { return grade(x) < grade(y); });
    return v;
}

}  // namespace innocent::cat
