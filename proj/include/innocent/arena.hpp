#pragma once

#include "innocent/presheaf.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace innocent::arena {

using presheaf::FinPresheaf;
using presheaf::PresheafMap;
using presheaf::PresheafPtr;

struct PlayerInfo {
    std::string label;
    int arity = 0;
    std::vector<std::uint32_t> ports;  // indices into the channel list
};

class position_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A finite presheaf supported on the star and the player objects.
class Position {
public:
    Position();
    explicit Position(PresheafPtr ps);
    static Position build(const std::vector<std::string>& channels,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& players);

    const PresheafPtr& presheaf() const { return ps_; }
    const std::vector<std::string>& channels() const { return ps_->labels(cat::star()); }
    const std::vector<PlayerInfo>& players() const { return players_; }
    const PlayerInfo* find_player(const std::string& label) const;
    const std::string& port(const PlayerInfo& p, int i) const { return channels().at(p.ports.at(i)); }

private:
    PresheafPtr ps_;
    std::vector<PlayerInfo> players_;
};

// Labels usable in base positions; the characters . ! ^ are kept for
// labels generated by moves.
bool valid_base_label(const std::string& s);

enum class MoveType : std::uint8_t { Fork, HalfForkL, HalfForkR, Tick, Nu, Input, Output, Synch };

struct MoveKind {
    MoveType type = MoveType::Tick;
    int n = 0;
    int i = 0;  // channel of Input/Output, sender channel of Synch
    int m = 0;  // receiver arity of Synch
    int j = 0;  // receiver channel of Synch

    auto operator<=>(const MoveKind&) const = default;
};

MoveKind fork_move(int n);
MoveKind half_fork_l(int n);
MoveKind half_fork_r(int n);
MoveKind tick_move(int n);
MoveKind nu_move(int n);
MoveKind input_move(int n, int i);
MoveKind output_move(int n, int i);
MoveKind synch_move(int n, int i, int m, int j);

bool is_basic(const MoveKind& k);
bool is_full(const MoveKind& k);
bool is_closed_world(const MoveKind& k);
bool valid(const MoveKind& k);
cat::ObjectId move_object(const MoveKind& k);
std::string to_string(const MoveKind& k);

enum class MoveClass { Basic, Full, ClosedWorld };
bool in_class(const MoveKind& k, MoveClass c);
MoveClass parse_move_class(const std::string& s);

struct MoveCospan {
    PresheafPtr initial;
    PresheafPtr move;
    PresheafPtr final;
    PresheafMap initial_leg;
    PresheafMap final_leg;
};

// The representable presheaf of the move with its two position legs.
MoveCospan move_cospan(const MoveKind& k);

// For Synch, players = {sender, receiver}.
struct ExtendedMove {
    MoveKind kind;
    std::vector<std::string> players;

    auto operator<=>(const ExtendedMove&) const = default;
};

std::string describe(const ExtendedMove& m);

class move_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<ExtendedMove> applicable_moves(const Position& p, MoveClass c);

class Play {
public:
    explicit Play(Position base);

    const Position& base() const { return base_; }
    const std::vector<ExtendedMove>& steps() const { return steps_; }
    const PresheafPtr& glued() const { return glued_; }
    const Position& final() const { return final_; }
    PresheafMap embedding() const;
    std::size_t length() const { return steps_.size(); }

    // Step index that consumed / created a player label, if any.
    std::optional<std::size_t> consumer(const std::string& player) const;
    std::optional<std::size_t> creator(const std::string& player) const;

    // Canonical step string: equal for plays related by a base-preserving iso.
    std::string key() const;
    // Steps in the canonical order used by key().
    std::vector<ExtendedMove> canonical_steps() const;
    // Indices of steps no other step depends on.
    std::vector<std::size_t> maximal_steps() const;

    friend Play apply_move(const Play& u, const ExtendedMove& m);

private:
    Position base_;
    std::vector<ExtendedMove> steps_;
    PresheafPtr glued_;
    Position final_;
    std::map<std::string, std::size_t> consumer_;
    std::map<std::string, std::size_t> creator_;
};

Play apply_move(const Play& u, const ExtendedMove& m);
Play replay(const Position& base, const std::vector<ExtendedMove>& steps);

bool play_iso(const Play& u, const Play& v);
// Monos glued(v) -> glued(u) sending base elements of v into the base of u.
std::vector<PresheafMap> base_preserving_embeddings(const Play& v, const Play& u);
bool is_closed_world(const Play& u);
bool is_successful(const Play& u);

// All plays up to iso with at most depth steps from the class, empty play first.
std::vector<Play> enumerate_plays(const Position& x, int depth, MoveClass c);
std::vector<Play> enumerate_closed_world(const Position& x, int depth);

// Views of a play form a forest rooted at the base players. A node is named
// by the avatar its last move produced (the base player for the roots).
struct ViewNode {
    std::string avatar;
    std::string base_player;
    int parent = -1;
    MoveKind move;  // the basic move leading here from the parent
    int arity = 0;  // arity of the avatar
    int depth = 0;
};

std::vector<ViewNode> view_forest(const Play& u);
// Moves from the root down to node k.
std::vector<MoveKind> view_moves(const std::vector<ViewNode>& forest, int k);

struct View {
    Play play;
    PresheafMap embedding;
    int node = 0;  // index in view_forest(u)
};

std::vector<View> views_into(const Play& u);

std::string to_dot(const Position& p, const std::string& name = "position");
std::string to_dot(const Play& u, const std::string& name = "play");

}  // namespace innocent::arena
