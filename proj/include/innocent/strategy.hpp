#pragma once

#include "innocent/arena.hpp"
#include "innocent/ccs.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace innocent::strategy {

using arena::MoveKind;
using arena::MoveType;

// Which avatar of a full move a continuation is for: the only one, or the
// left/right one of a fork.
enum class Slot : std::uint8_t { T, T1, T2 };

struct MoveKey {
    MoveType type = MoveType::Tick;  // Fork, Tick, Nu, Input or Output
    int i = 0;                       // channel of Input/Output
    Slot slot = Slot::T;

    auto operator<=>(const MoveKey&) const = default;
};

// The key a basic view move is dispatched on; Synch and full Fork are not
// view moves and throw.
MoveKey key_of(const MoveKind& basic);
std::string to_string(const MoveKey& k);

struct Strategy;
using StrategyPtr = std::shared_ptr<const Strategy>;

// Node: one initial state with a continuation per move key (absent keys are
// the empty strategy). Sum: states of the parts, concatenated in order.
// Var: a recursion variable applied to channels of the current arity,
// unfolded lazily.
struct Strategy {
    enum class Tag : std::uint8_t { Node, Sum, Var };
    Tag tag = Tag::Node;
    int arity = 0;
    std::vector<std::pair<MoveKey, StrategyPtr>> moves;  // Node, sorted by key
    std::vector<StrategyPtr> parts;                      // Sum
    std::string name;                                    // Var
    std::vector<int> args;                               // Var
    ccs::DefsPtr defs;                                   // Var

    const StrategyPtr* continuation(const MoveKey& k) const;
};

StrategyPtr node(int arity, std::vector<std::pair<MoveKey, StrategyPtr>> moves);
StrategyPtr sum_of(int arity, std::vector<StrategyPtr> parts);
StrategyPtr empty(int arity);  // the sum of nothing
StrategyPtr zero(int arity);   // one state, no moves
StrategyPtr var(int arity, std::string name, std::vector<int> args, ccs::DefsPtr defs);

int arity_after(const MoveKey& k, int n);

// The translation of an open process in a context of n names.
StrategyPtr translate(const ccs::TermPtr& t, int n, const ccs::DefsPtr& defs);
StrategyPtr translate(const ccs::Program& p);

// One unfolding of a variable (memoised).
StrategyPtr unfold(const Strategy& v);

// States after each prefix of a view: counts[k] states after the first k
// moves, restrict[k] maps states after k+1 moves to states after k.
struct StateSet {
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::uint32_t>> restrict;

    std::size_t size() const { return counts.back(); }
    // The composite restriction from the full view to its prefix of length k.
    std::vector<std::uint32_t> restriction_to(std::size_t k) const;
    bool monotone() const;
    bool operator==(const StateSet&) const = default;
};

// Variables are unfolded at most `fuel` times along any path.
StateSet eval(const StrategyPtr& f, const std::vector<MoveKind>& view, int fuel);
// Default fuel for a view of length i under k definitions.
int default_fuel(std::size_t k, std::size_t i);
// Number of definitions reachable from the strategy's variables.
std::size_t definition_count(const StrategyPtr& f);
StateSet eval(const StrategyPtr& f, const std::vector<MoveKind>& view);

class arity_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The committed states of a strategy: its initial states as Nodes, found by
// unfolding variables, with the fuel left after reaching each.
struct Committed {
    StrategyPtr node;
    int fuel = 0;
};
std::vector<Committed> resolve(const StrategyPtr& f, int fuel);

// Structural fingerprint (variables are not unfolded).
std::string fingerprint(const StrategyPtr& f);

// Per-player strategies on a position; a view is evaluated by the strategy
// of its base player.
struct Amalgam {
    std::map<std::string, StrategyPtr> parts;
};

class amalgamation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Amalgam amalgamate(const arena::Position& x, std::map<std::string, StrategyPtr> parts);
StateSet eval(const Amalgam& a, const std::string& base_player, const std::vector<MoveKind>& view);

// Human-readable dump of the first levels of a strategy.
std::string dump(const StrategyPtr& f, int depth, const std::vector<std::string>& channels);

}  // namespace innocent::strategy
