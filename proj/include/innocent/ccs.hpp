#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace innocent::ccs {

enum class Pol : std::uint8_t { In, Out };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Channels are de Bruijn levels: in a context of n names, 0..n-1 are the
// names in declaration order and a binder under that context introduces n.
struct Guard {
    Pol pol = Pol::In;
    int chan = 0;
    TermPtr cont;
};

struct Term {
    enum class Tag : std::uint8_t { Apply, Nu, Sum, Par, Tick };
    Tag tag = Tag::Sum;
    std::string name;           // Apply: variable; Nu: binder (for printing)
    std::vector<int> args;      // Apply
    std::vector<Guard> guards;  // Sum; empty is the inert process
    TermPtr left;               // Par, and the body of Nu and Tick
    TermPtr right;              // Par
};

TermPtr apply(std::string var, std::vector<int> args);
TermPtr nu(std::string binder, TermPtr body);
TermPtr sum(std::vector<Guard> guards);
TermPtr end();
TermPtr par(TermPtr l, TermPtr r);
TermPtr tick(TermPtr body);
TermPtr prefix(Pol p, int chan, TermPtr cont);

struct Definition {
    std::string name;
    std::vector<std::string> params;
    TermPtr body;  // typed in the context of params
};

struct Definitions {
    std::vector<Definition> defs;

    const Definition* find(const std::string& name) const;
    std::size_t size() const { return defs.size(); }
};

using DefsPtr = std::shared_ptr<const Definitions>;

struct Program {
    std::vector<std::string> channels;  // the context of main
    std::optional<std::vector<std::string>> interface;
    DefsPtr defs;
    TermPtr main;
};

class parse_error : public std::runtime_error {
public:
    parse_error(int line, int col, std::string rule, const std::string& msg);
    int line;
    int col;
    std::string rule;
};

// Header lines "channels ..." and "interface ..." followed by
//   program  := ("rec" def ("," def)* "in")? par
//   def      := ident "(" idents? ")" ":=" par
//   par      := sum ("|" sum)*
//   sum      := prefixed ("+" prefixed)*      all summands guarded
//   prefixed := "end" | "tick" "." prefixed | ("in"|"out") ident "." prefixed
//             | "new" ident "." prefixed | ident "(" idents? ")" | "(" par ")"
// "#" starts a comment. Without a channels header the context is the
// interface, or empty.
Program parse_program(const std::string& text);
// A bare term in the given context, without headers or definitions.
TermPtr parse_term(const std::string& text, const std::vector<std::string>& channels,
                   const DefsPtr& defs = nullptr);

std::string print(const TermPtr& t, const std::vector<std::string>& channels);
std::string print(const Program& p);

// Simultaneous renaming of a term typed in a context of k names into a
// context of n names: level l < k goes to sigma[l], bound levels shift.
TermPtr substitute(const TermPtr& t, int k, const std::vector<int>& sigma, int n);

// One layer of unfolding of every variable application.
TermPtr derive(const TermPtr& t, int n, const Definitions& defs);
TermPtr derive_n(TermPtr t, int n, const Definitions& defs, int times);

bool equal(const TermPtr& a, const TermPtr& b);
int size(const TermPtr& t);
bool recursion_free(const TermPtr& t);

}  // namespace innocent::ccs
