#pragma once

// Brute-force hom-sets: every composable generator path from a to b, quotiented
// by the congruence generated by the three relation families. Shares nothing
// with the library's rewriting beyond the generator constructors.

#include <innocent/cat_base.hpp>

#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using innocent::cat::GenArrow;
using innocent::cat::ObjectId;
using Path = std::vector<GenArrow>;

inline void all_paths(const ObjectId& cur, const ObjectId& b, int max_arity, Path& p,
                      std::vector<Path>& out)
{
    if (cur == b)
        out.push_back(p);
    if (p.size() >= 3)
        return;
    for (const auto& g : innocent::cat::generators_from(cur, max_arity)) {
        p.push_back(g);
        all_paths(g.target, b, max_arity, p, out);
        p.pop_back();
    }
}

// All paths obtained from p by rewriting one relation instance, in either direction.
inline std::vector<Path> relation_neighbours(const Path& p)
{
    using namespace innocent::cat;
    std::vector<Path> res;
    auto emit = [&](std::size_t k, std::size_t len, const Path& repl) {
        Path q(p.begin(), p.begin() + k);
        q.insert(q.end(), repl.begin(), repl.end());
        q.insert(q.end(), p.begin() + k + len, p.end());
        res.push_back(q);
    };
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k + 1 < p.size() && p[k].name == Gen::D &&
            (p[k + 1].name == Gen::S || p[k + 1].name == Gen::T)) {
            const auto& h = p[k + 1].target;
            int i = p[k].index;
            if (h.kind == Kind::Nu) {
                if (i < h.n) {
                    if (p[k + 1].name == Gen::S)
                        emit(k, 2, {d(i, h.n + 1), t_to(h)});
                    else
                        emit(k, 2, {d(i, h.n), s_to(h)});
                }
            } else {
                emit(k, 2, {p[k], p[k + 1].name == Gen::S ? t_to(h) : s_to(h)});
            }
        }
        if (k + 1 < p.size() && p[k].name == Gen::S && p[k + 1].name == Gen::L)
            emit(k, 2, {s_to(fork_r(p[k + 1].target.n)), r_to(p[k + 1].target.n)});
        if (k + 1 < p.size() && p[k].name == Gen::S && p[k + 1].name == Gen::R)
            emit(k, 2, {s_to(fork_l(p[k + 1].target.n)), l_to(p[k + 1].target.n)});
        if (k + 2 < p.size() && p[k].name == Gen::D && p[k + 1].name == Gen::S) {
            const auto& y = p[k + 2].target;
            if (p[k + 2].name == Gen::Eps && p[k].index == y.i)
                emit(k, 3, {d(y.j, y.m), s_to(in(y.m, y.j)), rho_to(y)});
            if (p[k + 2].name == Gen::Rho && p[k].index == y.j)
                emit(k, 3, {d(y.i, y.n), s_to(out(y.n, y.i)), eps_to(y)});
        }
    }
    return res;
}

struct HomClasses {
    std::vector<Path> paths;
    std::vector<int> cls;  // class id per path
    int count = 0;
};

inline HomClasses brute_hom(const ObjectId& a, const ObjectId& b)
{
    HomClasses h;
    int max_arity = std::max({b.n, b.m, a.n, a.m}) + 1;
    Path p;
    all_paths(a, b, max_arity, p, h.paths);
    std::map<Path, int> idx;
    for (std::size_t k = 0; k < h.paths.size(); ++k)
        idx[h.paths[k]] = static_cast<int>(k);
    std::vector<int> parent(h.paths.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t k = 0; k < h.paths.size(); ++k)
        for (const auto& q : relation_neighbours(h.paths[k])) {
            auto it = idx.find(q);
            if (it != idx.end())
                parent[find(static_cast<int>(k))] = find(it->second);
        }
    std::map<int, int> renum;
    for (std::size_t k = 0; k < h.paths.size(); ++k) {
        int r = find(static_cast<int>(k));
        if (!renum.count(r))
            renum[r] = h.count++;
        h.cls.push_back(renum[r]);
    }
    return h;
}

inline std::vector<ObjectId> small_objects(int max_param)
{
    using namespace innocent::cat;
    std::vector<ObjectId> v{star()};
    for (int n = 0; n <= max_param; ++n) {
        v.push_back(player(n));
        v.push_back(tick(n));
        v.push_back(fork_l(n));
        v.push_back(fork_r(n));
        v.push_back(fork(n));
        v.push_back(nu(n));
        for (int i = 0; i < n; ++i) {
            v.push_back(in(n, i));
            v.push_back(out(n, i));
        }
    }
    for (int n = 1; n <= max_param; ++n)
        for (int i = 0; i < n; ++i)
            for (int m = 1; m <= max_param; ++m)
                for (int j = 0; j < m; ++j)
                    v.push_back(sync(n, i, m, j));
    return v;
}

inline int param_size(const ObjectId& o) { return o.n + o.m; }

}  // namespace oracle
