#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace innocent::cat {

enum class Kind : std::uint8_t { Star, Player, Tick, ForkL, ForkR, Fork, Nu, In, Out, Sync };

// Out(n,i) is the output half-move (the sender side of a synchronisation),
// In(n,i) the input half-move. Sync(n,i,m,j): sender of arity n on its
// channel i, receiver of arity m on its channel j.
struct ObjectId {
    Kind kind = Kind::Star;
    int n = 0;
    int i = 0;
    int m = 0;
    int j = 0;

    auto operator<=>(const ObjectId&) const = default;
};

ObjectId star();
ObjectId player(int n);
ObjectId tick(int n);
ObjectId fork_l(int n);
ObjectId fork_r(int n);
ObjectId fork(int n);
ObjectId nu(int n);
ObjectId in(int n, int i);
ObjectId out(int n, int i);
ObjectId sync(int n, int i, int m, int j);

bool valid(const ObjectId& o);
// 0 for the star, 1 for players, 2 for half-moves, 3 for fork and sync
int grade(const ObjectId& o);
bool is_half_move(const ObjectId& o);
std::string to_string(const ObjectId& o);

enum class Gen : std::uint8_t { D, S, T, L, R, Eps, Rho };

struct GenArrow {
    Gen name = Gen::D;
    int index = 0;  // only meaningful for d_i
    ObjectId source;
    ObjectId target;

    auto operator<=>(const GenArrow&) const = default;
};

GenArrow d(int i, int n);
GenArrow s_to(const ObjectId& target);
GenArrow t_to(const ObjectId& target);
GenArrow l_to(int n);
GenArrow r_to(int n);
GenArrow eps_to(const ObjectId& sync_obj);
GenArrow rho_to(const ObjectId& sync_obj);

bool well_typed(const GenArrow& g);
std::string gen_name(const GenArrow& g);
std::string to_string(const GenArrow& g);

// All generating arrows with the given target. Always finite.
std::vector<GenArrow> generators_into(const ObjectId& b);
// Generating arrows out of a, with arity parameters of targets bounded by max_arity.
std::vector<GenArrow> generators_from(const ObjectId& a, int max_arity);

class composition_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Path is in application order: path[0] is applied first (its source is the
// morphism's source).
struct Morphism {
    ObjectId source;
    ObjectId target;
    std::vector<GenArrow> path;

    bool is_identity() const { return path.empty(); }
    auto operator<=>(const Morphism&) const = default;
};

Morphism identity(const ObjectId& a);
Morphism from_generator(const GenArrow& g);
// g after f
Morphism compose(const Morphism& f, const Morphism& g);
Morphism normalize(Morphism f);
std::string to_string(const Morphism& f);

std::vector<Morphism> hom(const ObjectId& a, const ObjectId& b);

// Objects b' with hom(b', b) nonempty, b included, in increasing grade.
std::vector<ObjectId> objects_below(const ObjectId& b);

}  // namespace innocent::cat
