#pragma once

#include "innocent/strategy.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace innocent::semantics {

using arena::Play;
using arena::Position;
using strategy::Amalgam;

// States of the Kan-extended strategy on a play: compatible families of view
// states, one entry per node of view_forest(play), sorted.
struct PlayStates {
    std::vector<arena::ViewNode> forest;
    std::vector<std::size_t> node_sizes;
    std::vector<std::vector<std::uint32_t>> families;

    std::size_t size() const { return families.size(); }
};

PlayStates ran_eval(const Amalgam& f, const Play& u);

struct BehaviourEntry {
    Play play;
    std::string key;
    PlayStates states;
    // restriction to the plays obtained by removing one maximal step
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> restrictions;
};

struct Behaviour {
    Position position;
    int depth = 0;
    std::vector<BehaviourEntry> entries;  // entries[0] is the empty play
    std::map<std::string, std::size_t> index;

    const BehaviourEntry* find(const std::string& key) const;
};

// Closed-world plays up to depth. Plays with no states are listed but not
// extended: their extensions have no states either.
Behaviour gl(const Amalgam& f, const Position& x, int depth);

class interface_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TestPushout {
    Position z;
    std::map<std::string, std::string> left_players;   // player of X -> player of Z
    std::map<std::string, std::string> right_players;  // player of Y -> player of Z
    std::map<std::string, std::string> right_channels;
};

// Glue X and Y along the named channels, which must exist in both.
TestPushout test_pushout(const Position& x, const Position& y,
                         const std::vector<std::string>& interface);
TestPushout test_pushout(const Position& x, const Position& y, const Position& interface);

enum class Criterion { Fair, Must };
Criterion parse_criterion(const std::string& s);
std::string to_string(Criterion c);

enum class Outcome { Pass, Fail, Unknown };
std::string to_string(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    // For Fail: a replayable play. For must, a cycle is given as the
    // prefix leading to it followed by one round.
    std::vector<arena::ExtendedMove> witness;
    std::size_t cycle_start = 0;  // index in witness where the cycle begins (must only)
    bool cycle = false;
    std::string reason;
    std::size_t nodes = 0;  // configuration nodes explored
    std::size_t budget = 0;
};

struct Limits {
    std::size_t budget = 10000;  // configuration nodes
};

// Decide the criterion on the closed-world behaviour of f over x.
Verdict check(const Amalgam& f, const Position& x, Criterion c, const Limits& lim = {});
Verdict fair_pass(const Amalgam& f, const Position& x, const Limits& lim = {});
Verdict must_pass(const Amalgam& f, const Position& x, const Limits& lim = {});

Verdict orthogonal(const strategy::StrategyPtr& f, const Position& x,
                   const strategy::StrategyPtr& g, const Position& y,
                   const std::vector<std::string>& interface, Criterion c, const Limits& lim = {});

struct Test {
    std::string name;
    strategy::StrategyPtr strategy;
    Position position;
    std::vector<std::string> interface;
};

enum class Relation { Equal, Distinguished, Unknown };
std::string to_string(Relation r);

struct TestReport {
    std::string test;
    Verdict left;
    Verdict right;
};

struct Comparison {
    Relation relation = Relation::Unknown;
    std::optional<std::size_t> witness_test;
    std::vector<TestReport> reports;
};

Comparison compare(const strategy::StrategyPtr& f, const strategy::StrategyPtr& f2,
                   const Position& x, const std::vector<Test>& tests, Criterion c,
                   const Limits& lim = {});

// One-player position "p" on the given channels.
Position process_position(const std::vector<std::string>& channels, const std::string& player = "p");

}  // namespace innocent::semantics
