#include "innocent/presheaf.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace innocent::presheaf {

namespace {
const std::vector<std::string> no_labels;
}

std::uint32_t FinPresheaf::add(const ObjectId& o, std::string label)
{
    if (!cat::valid(o))
        throw std::invalid_argument("invalid object " + cat::to_string(o));
    if (index_.count(label))
        throw std::invalid_argument("duplicate element label " + label);
    auto& c = carriers_[o];
    auto idx = static_cast<std::uint32_t>(c.size());
    index_.emplace(label, Elem{o, idx});
    c.push_back(std::move(label));
    return idx;
}

void FinPresheaf::set_action(const GenArrow& g, std::uint32_t x, std::uint32_t value)
{
    if (!cat::well_typed(g))
        throw std::invalid_argument("ill-typed generator " + cat::to_string(g));
    if (x >= size(g.target) || value >= size(g.source))
        throw std::out_of_range("action out of carrier range for " + cat::to_string(g));
    auto& v = actions_[g];
    if (v.size() < size(g.target))
        v.resize(size(g.target), -1);
    v[x] = value;
}

std::size_t FinPresheaf::size(const ObjectId& o) const
{
    auto it = carriers_.find(o);
    return it == carriers_.end() ? 0 : it->second.size();
}

std::size_t FinPresheaf::total_size() const
{
    std::size_t s = 0;
    for (const auto& [o, c] : carriers_)
        s += c.size();
    return s;
}

std::vector<ObjectId> FinPresheaf::objects() const
{
    std::vector<ObjectId> v;
    for (const auto& [o, c] : carriers_)
        v.push_back(o);
    return v;
}

const std::vector<std::string>& FinPresheaf::labels(const ObjectId& o) const
{
    auto it = carriers_.find(o);
    return it == carriers_.end() ? no_labels : it->second;
}

std::optional<Elem> FinPresheaf::find(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool FinPresheaf::has_action(const GenArrow& g, std::uint32_t x) const
{
    auto it = actions_.find(g);
    return it != actions_.end() && x < it->second.size() && it->second[x] >= 0;
}

std::uint32_t FinPresheaf::act(const GenArrow& g, std::uint32_t x) const
{
    auto it = actions_.find(g);
    if (it == actions_.end() || x >= it->second.size() || it->second[x] < 0)
        throw std::out_of_range("undefined action of " + cat::to_string(g));
    return static_cast<std::uint32_t>(it->second[x]);
}

Elem FinPresheaf::act(const cat::Morphism& f, std::uint32_t x) const
{
    Elem e{f.target, x};
    for (auto it = f.path.rbegin(); it != f.path.rend(); ++it)
        e = Elem{it->source, act(*it, e.idx)};
    return e;
}

FinPresheaf representable(const ObjectId& m)
{
    FinPresheaf f;
    auto objs = cat::objects_below(m);
    std::map<ObjectId, std::vector<cat::Morphism>> homs;
    for (const auto& c : objs) {
        homs[c] = cat::hom(c, m);
        for (const auto& h : homs[c])
            f.add(c, cat::to_string(h));
    }
    for (const auto& c : objs)
        for (const auto& g : cat::generators_into(c)) {
            const auto& src = homs[g.source];
            const auto& tgt = homs[c];
            for (std::uint32_t x = 0; x < tgt.size(); ++x) {
                auto h = cat::compose(cat::from_generator(g), tgt[x]);
                auto pos = std::find(src.begin(), src.end(), h) - src.begin();
                f.set_action(g, x, static_cast<std::uint32_t>(pos));
            }
        }
    return f;
}

namespace {

struct RelationCheck {
    std::string name;
    cat::Morphism lhs;
    cat::Morphism rhs;
};

cat::Morphism path_of(std::initializer_list<GenArrow> gs)
{
    cat::Morphism m{gs.begin()->source, (gs.end() - 1)->target, gs};
    return m;
}

std::vector<RelationCheck> relations_into(const ObjectId& b)
{
    using namespace cat;
    std::vector<RelationCheck> res;
    switch (b.kind) {
    case Kind::Star:
    case Kind::Player:
        break;
    case Kind::Fork:
        res.push_back({"l.s = r.s", path_of({s_to(fork_l(b.n)), l_to(b.n)}),
                       path_of({s_to(fork_r(b.n)), r_to(b.n)})});
        break;
    case Kind::Sync:
        res.push_back({"eps.s.d" + std::to_string(b.i) + " = rho.s.d" + std::to_string(b.j),
                       path_of({d(b.i, b.n), s_to(out(b.n, b.i)), eps_to(b)}),
                       path_of({d(b.j, b.m), s_to(in(b.m, b.j)), rho_to(b)})});
        break;
    case Kind::Nu:
        for (int i = 0; i < b.n; ++i)
            res.push_back({"s.d" + std::to_string(i) + " = t.d" + std::to_string(i),
                           path_of({d(i, b.n), s_to(b)}), path_of({d(i, b.n + 1), t_to(b)})});
        break;
    default:
        for (int i = 0; i < b.n; ++i)
            res.push_back({"s.d" + std::to_string(i) + " = t.d" + std::to_string(i),
                           path_of({d(i, b.n), s_to(b)}), path_of({d(i, b.n), t_to(b)})});
        break;
    }
    return res;
}

}  // namespace

std::vector<Violation> check_functorial(const FinPresheaf& f)
{
    std::vector<Violation> res;
    for (const auto& b : f.objects()) {
        const auto& labels = f.labels(b);
        bool total = true;
        for (const auto& g : cat::generators_into(b))
            for (std::uint32_t x = 0; x < labels.size(); ++x)
                if (!f.has_action(g, x)) {
                    res.push_back({"total action " + cat::gen_name(g), b, labels[x]});
                    total = false;
                }
        if (!total)
            continue;
        for (const auto& rel : relations_into(b))
            for (std::uint32_t x = 0; x < labels.size(); ++x)
                if (f.act(rel.lhs, x) != f.act(rel.rhs, x))
                    res.push_back({rel.name, b, labels[x]});
    }
    return res;
}

bool PresheafMap::is_natural() const
{
    for (const auto& b : source->objects()) {
        auto it = components.find(b);
        if (it == components.end() || it->second.size() != source->size(b))
            return false;
        for (auto y : it->second)
            if (y >= target->size(b))
                return false;
        for (const auto& g : cat::generators_into(b))
            for (std::uint32_t x = 0; x < source->size(b); ++x) {
                auto lhs = apply({g.source, source->act(g, x)});
                auto rhs = target->act(g, it->second[x]);
                if (lhs != rhs)
                    return false;
            }
    }
    return true;
}

bool PresheafMap::is_mono() const
{
    for (const auto& [o, comp] : components) {
        std::set<std::uint32_t> seen(comp.begin(), comp.end());
        if (seen.size() != comp.size())
            return false;
    }
    return true;
}

PresheafMap identity_map(const PresheafPtr& f)
{
    PresheafMap m{f, f, {}};
    for (const auto& o : f->objects()) {
        auto& c = m.components[o];
        for (std::uint32_t x = 0; x < f->size(o); ++x)
            c.push_back(x);
    }
    return m;
}

PresheafMap compose(const PresheafMap& f, const PresheafMap& g)
{
    PresheafMap h{f.source, g.target, {}};
    for (const auto& [o, comp] : f.components) {
        auto& c = h.components[o];
        for (auto y : comp)
            c.push_back(g.apply({o, y}));
    }
    return h;
}

PresheafMap map_by_labels(const PresheafPtr& source, const PresheafPtr& target)
{
    PresheafMap m{source, target, {}};
    for (const auto& o : source->objects()) {
        auto& c = m.components[o];
        for (const auto& l : source->labels(o)) {
            auto e = target->find(l);
            if (!e || e->obj != o)
                throw std::invalid_argument("no element labelled " + l + " over " +
                                            cat::to_string(o));
            c.push_back(e->idx);
        }
    }
    return m;
}

namespace {

class MapSearch {
public:
    MapSearch(const PresheafPtr& f, const PresheafPtr& g, const MapOptions& opts)
        : f_(f), g_(g), opts_(opts)
    {
        for (const auto& o : f_->objects()) {
            assign_[o].assign(f_->size(o), -1);
            owner_[o].assign(g_->size(o), -1);
            for (std::uint32_t x = 0; x < f_->size(o); ++x)
                order_.push_back({o, x});
        }
        std::stable_sort(order_.begin(), order_.end(), [](const Elem& a, const Elem& b) {
            return cat::grade(a.obj) > cat::grade(b.obj);
        });
    }

    std::vector<PresheafMap> run()
    {
        for (const auto& o : f_->objects())
            if (g_->size(o) == 0)
                return {};
        search(0);
        return std::move(results_);
    }

private:
    bool assign(const Elem& x, std::uint32_t y)
    {
        auto& a = assign_[x.obj][x.idx];
        if (a >= 0)
            return a == static_cast<std::int64_t>(y);
        if (opts_.monos_only && owner_[x.obj][y] >= 0)
            return false;
        if (opts_.allowed && !opts_.allowed(x, Elem{x.obj, y}))
            return false;
        a = y;
        if (opts_.monos_only)
            owner_[x.obj][y] = x.idx;
        trail_.push_back(x);
        for (const auto& gen : cat::generators_into(x.obj)) {
            Elem xf{gen.source, f_->act(gen, x.idx)};
            if (!assign(xf, g_->act(gen, y)))
                return false;
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto x = trail_.back();
            trail_.pop_back();
            auto& a = assign_[x.obj][x.idx];
            if (opts_.monos_only)
                owner_[x.obj][static_cast<std::size_t>(a)] = -1;
            a = -1;
        }
    }

    bool full() const { return opts_.max_results && results_.size() >= opts_.max_results; }

    void search(std::size_t k)
    {
        if (full())
            return;
        while (k < order_.size() && assign_[order_[k].obj][order_[k].idx] >= 0)
            ++k;
        if (k == order_.size()) {
            PresheafMap m{f_, g_, {}};
            for (const auto& [o, v] : assign_) {
                auto& c = m.components[o];
                for (auto y : v)
                    c.push_back(static_cast<std::uint32_t>(y));
            }
            results_.push_back(std::move(m));
            return;
        }
        const auto& x = order_[k];
        for (std::uint32_t y = 0; y < g_->size(x.obj) && !full(); ++y) {
            auto mark = trail_.size();
            if (assign(x, y))
                search(k + 1);
            undo(mark);
        }
    }

    PresheafPtr f_, g_;
    const MapOptions& opts_;
    std::map<ObjectId, std::vector<std::int64_t>> assign_;
    std::map<ObjectId, std::vector<std::int64_t>> owner_;
    std::vector<Elem> order_;
    std::vector<Elem> trail_;
    std::vector<PresheafMap> results_;
};

}  // namespace

std::vector<PresheafMap> enumerate_maps(const PresheafPtr& f, const PresheafPtr& g,
                                        const MapOptions& opts)
{
    return MapSearch(f, g, opts).run();
}

bool isomorphic(const PresheafPtr& f, const PresheafPtr& g)
{
    if (f->objects() != g->objects())
        return false;
    for (const auto& o : f->objects())
        if (f->size(o) != g->size(o))
            return false;
    MapOptions opts;
    opts.monos_only = true;
    opts.max_results = 1;
    return !enumerate_maps(f, g, opts).empty();
}

Pushout pushout(const PresheafMap& f, const PresheafMap& g)
{
    if (!(*f.source == *g.source))
        throw pushout_error("pushout legs have different sources");
    if (!f.is_mono() || !g.is_mono())
        throw pushout_error("pushout legs must be monic");
    const auto& b = *f.target;
    const auto& c = *g.target;

    auto p = std::make_shared<FinPresheaf>(b);
    PresheafMap into_c{g.target, nullptr, {}};
    // preimages of g, per object
    std::map<ObjectId, std::map<std::uint32_t, std::uint32_t>> g_inv;
    for (const auto& [o, comp] : g.components)
        for (std::uint32_t a = 0; a < comp.size(); ++a)
            g_inv[o][comp[a]] = a;

    std::vector<std::pair<ObjectId, std::uint32_t>> fresh;
    for (const auto& o : c.objects()) {
        auto& comp = into_c.components[o];
        const auto& inv = g_inv[o];
        for (std::uint32_t z = 0; z < c.size(o); ++z) {
            auto it = inv.find(z);
            if (it != inv.end()) {
                comp.push_back(f.apply({o, it->second}));
                continue;
            }
            std::string label = c.labels(o)[z];
            if (p->find(label)) {
                int k = 1;
                while (p->find(label + "~" + std::to_string(k)))
                    ++k;
                label += "~" + std::to_string(k);
            }
            comp.push_back(p->add(o, label));
            fresh.push_back({o, z});
        }
    }
    for (const auto& [o, z] : fresh)
        for (const auto& gen : cat::generators_into(o)) {
            auto zf = c.act(gen, z);
            p->set_action(gen, into_c.components[o][z], into_c.components[gen.source][zf]);
        }
    PresheafPtr obj = p;
    into_c.target = obj;
    PresheafMap into_b{f.target, obj, {}};
    for (const auto& o : b.objects()) {
        auto& comp = into_b.components[o];
        for (std::uint32_t x = 0; x < b.size(o); ++x)
            comp.push_back(x);
    }
    return {obj, std::move(into_b), std::move(into_c)};
}

namespace {

class LimitSearch {
public:
    explicit LimitSearch(const SetDiagram& d) : d_(d), value_(d.sizes.size(), -1)
    {
        auto n = d.sizes.size();
        out_.resize(n);
        in_.resize(n);
        for (std::size_t a = 0; a < d.arrows.size(); ++a) {
            const auto& ar = d.arrows[a];
            if (ar.source >= n || ar.target >= n || ar.fn.size() != d.sizes[ar.source])
                throw std::invalid_argument("malformed set diagram arrow");
            out_[ar.source].push_back(a);
            in_[ar.target].push_back(a);
        }
        // sources before targets, so that choosing a source forces its targets
        std::vector<std::size_t> indeg(n, 0);
        for (const auto& ar : d.arrows)
            if (ar.source != ar.target)
                ++indeg[ar.target];
        std::vector<bool> placed(n, false);
        while (order_.size() < n) {
            std::size_t pick = n;
            for (std::size_t k = 0; k < n; ++k)
                if (!placed[k] && indeg[k] == 0) {
                    pick = k;
                    break;
                }
            if (pick == n)
                for (std::size_t k = 0; k < n; ++k)
                    if (!placed[k]) {
                        pick = k;
                        break;
                    }
            placed[pick] = true;
            order_.push_back(pick);
            for (auto a : out_[pick])
                if (d.arrows[a].target != pick && indeg[d.arrows[a].target] > 0)
                    --indeg[d.arrows[a].target];
        }
    }

    std::vector<std::vector<std::uint32_t>> run()
    {
        for (auto s : d_.sizes)
            if (s == 0)
                return {};
        search(0);
        std::sort(results_.begin(), results_.end());
        return std::move(results_);
    }

private:
    bool set(std::size_t obj, std::uint32_t v)
    {
        if (value_[obj] >= 0)
            return value_[obj] == static_cast<std::int64_t>(v);
        value_[obj] = v;
        trail_.push_back(obj);
        for (auto a : out_[obj]) {
            const auto& ar = d_.arrows[a];
            if (!set(ar.target, ar.fn[v]))
                return false;
        }
        for (auto a : in_[obj]) {
            const auto& ar = d_.arrows[a];
            if (value_[ar.source] >= 0 &&
                ar.fn[static_cast<std::size_t>(value_[ar.source])] != v)
                return false;
        }
        return true;
    }

    void search(std::size_t k)
    {
        while (k < order_.size() && value_[order_[k]] >= 0)
            ++k;
        if (k == order_.size()) {
            std::vector<std::uint32_t> fam;
            for (auto v : value_)
                fam.push_back(static_cast<std::uint32_t>(v));
            results_.push_back(std::move(fam));
            return;
        }
        auto obj = order_[k];
        for (std::uint32_t v = 0; v < d_.sizes[obj]; ++v) {
            auto mark = trail_.size();
            if (set(obj, v))
                search(k + 1);
            while (trail_.size() > mark) {
                value_[trail_.back()] = -1;
                trail_.pop_back();
            }
        }
    }

    const SetDiagram& d_;
    std::vector<std::int64_t> value_;
    std::vector<std::vector<std::size_t>> out_, in_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> trail_;
    std::vector<std::vector<std::uint32_t>> results_;
};

}  // namespace

std::vector<std::vector<std::uint32_t>> limit(const SetDiagram& d) { return LimitSearch(d).run(); }

std::string to_dot(const FinPresheaf& f, const std::string& name)
{
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
    auto node = [&](const ObjectId& o, std::uint32_t x) {
        return "\"" + cat::to_string(o) + ":" + f.labels(o)[x] + "\"";
    };
    for (const auto& o : f.objects())
        for (std::uint32_t x = 0; x < f.size(o); ++x)
            os << "  " << node(o, x) << " [label=\"" << f.labels(o)[x] << "\\n"
               << cat::to_string(o) << "\"];\n";
    for (const auto& o : f.objects())
        for (const auto& g : cat::generators_into(o))
            for (std::uint32_t x = 0; x < f.size(o); ++x)
                if (f.has_action(g, x))
                    os << "  " << node(g.source, f.act(g, x)) << " -> " << node(o, x)
                       << " [label=\"" << cat::gen_name(g) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace innocent::presheaf
