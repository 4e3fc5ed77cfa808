#pragma once

#include "innocent/cat_base.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace innocent::presheaf {

using cat::GenArrow;
using cat::ObjectId;

struct Elem {
    ObjectId obj;
    std::uint32_t idx = 0;

    auto operator<=>(const Elem&) const = default;
};

// A finite presheaf on the base category, given on generators. Every element
// carries a label unique within the presheaf; labels are what plays use to
// name players, channels and moves.
class FinPresheaf {
public:
    std::uint32_t add(const ObjectId& o, std::string label);
    // x is an element over g.target; value an element over g.source
    void set_action(const GenArrow& g, std::uint32_t x, std::uint32_t value);

    std::size_t size(const ObjectId& o) const;
    std::size_t total_size() const;
    bool empty() const { return carriers_.empty(); }
    std::vector<ObjectId> objects() const;
    const std::vector<std::string>& labels(const ObjectId& o) const;
    const std::string& label(const Elem& e) const { return labels(e.obj).at(e.idx); }
    std::optional<Elem> find(const std::string& label) const;

    bool has_action(const GenArrow& g, std::uint32_t x) const;
    std::uint32_t act(const GenArrow& g, std::uint32_t x) const;
    // x is an element over f.target
    Elem act(const cat::Morphism& f, std::uint32_t x) const;

    bool operator==(const FinPresheaf& o) const
    {
        return carriers_ == o.carriers_ && actions_ == o.actions_;
    }

private:
    std::map<ObjectId, std::vector<std::string>> carriers_;
    std::map<GenArrow, std::vector<std::int64_t>> actions_;
    std::unordered_map<std::string, Elem> index_;
};

using PresheafPtr = std::shared_ptr<const FinPresheaf>;

// The representable presheaf hom(-, m). Elements over c are listed in the
// order of cat::hom(c, m) and labelled by their normal-form paths.
FinPresheaf representable(const ObjectId& m);

struct Violation {
    std::string relation;
    ObjectId object;
    std::string element;
};

// Totality of actions and every relation instance of the presentation.
std::vector<Violation> check_functorial(const FinPresheaf& f);

struct PresheafMap {
    PresheafPtr source;
    PresheafPtr target;
    std::map<ObjectId, std::vector<std::uint32_t>> components;

    std::uint32_t apply(const Elem& e) const { return components.at(e.obj).at(e.idx); }
    bool is_natural() const;
    bool is_mono() const;
};

PresheafMap identity_map(const PresheafPtr& f);
// g after f
PresheafMap compose(const PresheafMap& f, const PresheafMap& g);
// Sends each element to the target element with the same label.
PresheafMap map_by_labels(const PresheafPtr& source, const PresheafPtr& target);

struct MapOptions {
    bool monos_only = false;
    // If set, only pairs (source element, target element) accepted here are used.
    std::function<bool(const Elem&, const Elem&)> allowed;
    std::size_t max_results = 0;  // 0 = unbounded
};

std::vector<PresheafMap> enumerate_maps(const PresheafPtr& f, const PresheafPtr& g,
                                        const MapOptions& opts = {});
bool isomorphic(const PresheafPtr& f, const PresheafPtr& g);

struct Pushout {
    PresheafPtr object;
    PresheafMap from_left;   // B -> P
    PresheafMap from_right;  // C -> P
};

class pushout_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Pushout of monos f : A -> B and g : A -> C. B's labels are kept; labels of
// C-only elements clashing with B are suffixed with ~k.
Pushout pushout(const PresheafMap& f, const PresheafMap& g);

// A finite diagram of finite sets, given by generating arrows. Compatibility
// along generators implies compatibility along their composites, so the
// limit only needs the generators.
struct SetDiagram {
    struct Arrow {
        std::size_t source;
        std::size_t target;
        std::vector<std::uint32_t> fn;
    };
    std::vector<std::size_t> sizes;
    std::vector<Arrow> arrows;
};

// Compatible families, lexicographically sorted.
std::vector<std::vector<std::uint32_t>> limit(const SetDiagram& d);

std::string to_dot(const FinPresheaf& f, const std::string& name = "elements");

}  // namespace innocent::presheaf
