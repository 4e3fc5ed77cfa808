#include "innocent/ccs.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace innocent::ccs {

TermPtr apply(std::string var, std::vector<int> args)
{
    auto t = std::make_shared<Term>();
    t->tag = Term::Tag::Apply;
    t->name = std::move(var);
    t->args = std::move(args);
    return t;
}

TermPtr nu(std::string binder, TermPtr body)
{
    auto t = std::make_shared<Term>();
    t->tag = Term::Tag::Nu;
    t->name = std::move(binder);
    t->left = std::move(body);
    return t;
}

TermPtr sum(std::vector<Guard> guards)
{
    auto t = std::make_shared<Term>();
    t->tag = Term::Tag::Sum;
    t->guards = std::move(guards);
    return t;
}

TermPtr end() { return sum({}); }

TermPtr par(TermPtr l, TermPtr r)
{
    auto t = std::make_shared<Term>();
    t->tag = Term::Tag::Par;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

TermPtr tick(TermPtr body)
{
    auto t = std::make_shared<Term>();
    t->tag = Term::Tag::Tick;
    t->left = std::move(body);
    return t;
}

TermPtr prefix(Pol p, int chan, TermPtr cont) { return sum({{p, chan, std::move(cont)}}); }

const Definition* Definitions::find(const std::string& name) const
{
    for (const auto& d : defs)
        if (d.name == name)
            return &d;
    return nullptr;
}

parse_error::parse_error(int line_, int col_, std::string rule_, const std::string& msg)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " +
                         (rule_.empty() ? "" : rule_ + ": ") + msg),
      line(line_), col(col_), rule(std::move(rule_))
{
}

namespace {

struct Token {
    enum class Kind { Ident, Punct, Eof } kind = Kind::Eof;
    std::string text;
    int line = 1;
    int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& s, int line, int col)
{
    std::vector<Token> out;
    std::size_t k = 0;
    auto advance = [&]() {
        if (s[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++k;
    };
    while (k < s.size()) {
        char c = s[k];
        if (c == '#') {
            while (k < s.size() && s[k] != '\n')
                advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (ident_start(c)) {
            t.kind = Token::Kind::Ident;
            while (k < s.size() && ident_char(s[k])) {
                t.text += s[k];
                advance();
            }
        } else if (c == ':' && k + 1 < s.size() && s[k + 1] == '=') {
            t.kind = Token::Kind::Punct;
            t.text = ":=";
            advance();
            advance();
        } else if (std::string(".+|(),").find(c) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            advance();
        } else {
            throw parse_error(line, col, "", std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token eof;
    eof.line = line;
    eof.col = col;
    out.push_back(eof);
    return out;
}

const std::set<std::string> keywords{"end", "tick", "in", "out", "new", "rec",
                                     "channels", "interface"};

struct PendingApp {
    std::string name;
    std::size_t arity;
    int line;
    int col;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at(const std::string& text) const
    {
        return peek().kind != Token::Kind::Eof && peek().text == text;
    }
    bool at_eof() const { return peek().kind == Token::Kind::Eof; }

    [[noreturn]] void fail(const Token& t, const std::string& rule, const std::string& msg) const
    {
        throw parse_error(t.line, t.col, rule, msg);
    }

    Token expect(const std::string& text)
    {
        if (!at(text))
            fail(peek(), "", "expected '" + text + "'" + found());
        return toks_[pos_++];
    }

    std::string found() const
    {
        if (at_eof())
            return " but reached the end of input";
        return " but found '" + peek().text + "'";
    }

    Token ident(const std::string& what)
    {
        const auto& t = peek();
        if (t.kind != Token::Kind::Ident || keywords.count(t.text))
            fail(t, "", "expected " + what + found());
        return toks_[pos_++];
    }

    int lookup(const Token& t, const std::string& rule) const
    {
        for (int k = static_cast<int>(scope_.size()) - 1; k >= 0; --k)
            if (scope_[k] == t.text)
                return k;
        fail(t, rule, "channel " + t.text + " not in context");
    }

    std::vector<Token> ident_list()
    {
        std::vector<Token> res;
        expect("(");
        if (!at(")")) {
            res.push_back(ident("a channel name"));
            while (at(",")) {
                ++pos_;
                res.push_back(ident("a channel name"));
            }
        }
        expect(")");
        return res;
    }

    TermPtr parse_par()
    {
        auto t = parse_sum();
        while (at("|")) {
            ++pos_;
            t = par(t, parse_sum());
        }
        return t;
    }

    TermPtr parse_sum()
    {
        auto first_tok = peek();
        auto t = parse_prefixed();
        if (!at("+"))
            return t;
        std::vector<Guard> guards;
        auto add = [&](const TermPtr& s, const Token& where) {
            if (s->tag != Term::Tag::Sum)
                fail(where, "CCSSum", "summands must be guarded (in/out prefixes or end)");
            guards.insert(guards.end(), s->guards.begin(), s->guards.end());
        };
        add(t, first_tok);
        while (at("+")) {
            ++pos_;
            auto where = peek();
            add(parse_prefixed(), where);
        }
        return sum(std::move(guards));
    }

    TermPtr parse_prefixed()
    {
        const auto& t = peek();
        if (t.kind != Token::Kind::Ident && !at("("))
            fail(t, "", "expected a process" + found());
        if (at("(")) {
            ++pos_;
            auto p = parse_par();
            expect(")");
            return p;
        }
        if (at("end")) {
            ++pos_;
            return end();
        }
        if (at("tick")) {
            ++pos_;
            expect(".");
            return tick(parse_prefixed());
        }
        if (at("in") || at("out")) {
            Pol p = at("in") ? Pol::In : Pol::Out;
            ++pos_;
            auto c = ident("a channel name");
            int chan = lookup(c, "CCSSum");
            expect(".");
            return prefix(p, chan, parse_prefixed());
        }
        if (at("new")) {
            ++pos_;
            auto b = ident("a binder name");
            expect(".");
            scope_.push_back(b.text);
            auto body = parse_prefixed();
            scope_.pop_back();
            return nu(b.text, body);
        }
        auto name = ident("a process");
        if (!at("("))
            fail(peek(), "", "expected '(' after variable " + name.text + found());
        std::vector<int> args;
        for (const auto& a : ident_list())
            args.push_back(lookup(a, "CCSApp"));
        pending_.push_back({name.text, args.size(), name.line, name.col});
        return apply(name.text, args);
    }

    void check_apps(const Definitions& defs) const
    {
        for (const auto& a : pending_) {
            auto d = defs.find(a.name);
            if (!d)
                throw parse_error(a.line, a.col, "CCSApp", "unbound variable " + a.name);
            if (d->params.size() != a.arity)
                throw parse_error(a.line, a.col, "CCSApp",
                                  "variable " + a.name + " expects " +
                                      std::to_string(d->params.size()) + " arguments, got " +
                                      std::to_string(a.arity));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
    std::vector<PendingApp> pending_;
};

}  // namespace

Program parse_program(const std::string& text)
{
    Program prog;
    std::optional<std::vector<std::string>> channels;
    std::size_t offset = 0;
    int line = 1;
    // header lines
    while (offset < text.size()) {
        auto eol = text.find('\n', offset);
        auto raw = text.substr(offset, eol == std::string::npos ? std::string::npos : eol - offset);
        auto hash = raw.find('#');
        auto body = raw.substr(0, hash);
        std::istringstream is(body);
        std::string word;
        if (!(is >> word)) {
            if (eol == std::string::npos)
                break;
            offset = eol + 1;
            ++line;
            continue;
        }
        if (word != "channels" && word != "interface")
            break;
        auto& target = word == "channels" ? channels : prog.interface;
        if (target)
            throw parse_error(line, 1, "", "duplicate " + word + " header");
        target.emplace();
        std::string name;
        while (is >> name) {
            bool ok = ident_start(name[0]) &&
                      std::all_of(name.begin(), name.end(), ident_char) && !keywords.count(name);
            if (!ok)
                throw parse_error(line, static_cast<int>(body.find(name)) + 1, "",
                                  "invalid channel name '" + name + "'");
            if (std::find(target->begin(), target->end(), name) != target->end())
                throw parse_error(line, static_cast<int>(body.find(name)) + 1, "",
                                  "channel " + name + " declared twice");
            target->push_back(name);
        }
        if (eol == std::string::npos) {
            offset = text.size();
            break;
        }
        offset = eol + 1;
        ++line;
    }
    prog.channels = channels ? *channels : prog.interface.value_or(std::vector<std::string>{});
    if (channels && prog.interface)
        for (const auto& c : *prog.interface)
            if (std::find(channels->begin(), channels->end(), c) == channels->end())
                throw parse_error(1, 1, "", "interface channel " + c + " is not declared");

    Parser ps(lex(text.substr(std::min(offset, text.size())), line, 1));
    auto defs = std::make_shared<Definitions>();
    if (ps.at("rec")) {
        ++ps.pos_;
        while (true) {
            auto name = ps.ident("a definition name");
            if (defs->find(name.text))
                ps.fail(name, "Global", "variable " + name.text + " defined twice");
            Definition d;
            d.name = name.text;
            for (const auto& p : ps.ident_list()) {
                if (std::find(d.params.begin(), d.params.end(), p.text) != d.params.end())
                    ps.fail(p, "Global", "parameter " + p.text + " repeated");
                d.params.push_back(p.text);
            }
            ps.expect(":=");
            ps.scope_ = d.params;
            d.body = ps.parse_par();
            defs->defs.push_back(std::move(d));
            if (ps.at(",")) {
                ++ps.pos_;
                continue;
            }
            break;
        }
        ps.expect("in");
    }
    ps.scope_ = prog.channels;
    prog.main = ps.parse_par();
    if (!ps.at_eof())
        ps.fail(ps.peek(), "", "unexpected '" + ps.peek().text + "' after the process");
    ps.check_apps(*defs);
    prog.defs = defs;
    return prog;
}

TermPtr parse_term(const std::string& text, const std::vector<std::string>& channels,
                   const DefsPtr& defs)
{
    Parser ps(lex(text, 1, 1));
    ps.scope_ = channels;
    auto t = ps.parse_par();
    if (!ps.at_eof())
        ps.fail(ps.peek(), "", "unexpected '" + ps.peek().text + "' after the process");
    ps.check_apps(defs ? *defs : Definitions{});
    return t;
}

namespace {

std::string fresh(const std::string& base, const std::vector<std::string>& scope)
{
    auto taken = [&](const std::string& s) {
        return std::find(scope.begin(), scope.end(), s) != scope.end();
    };
    if (!taken(base))
        return base;
    for (int k = 1;; ++k) {
        auto s = base + "_" + std::to_string(k);
        if (!taken(s))
            return s;
    }
}

void print_to(std::ostream& os, const TermPtr& t, std::vector<std::string>& scope, int prec);

// prec 0: par context, 1: sum operand, 2: prefix continuation
void print_to(std::ostream& os, const TermPtr& t, std::vector<std::string>& scope, int prec)
{
    switch (t->tag) {
    case Term::Tag::Apply: {
        os << t->name << "(";
        for (std::size_t k = 0; k < t->args.size(); ++k)
            os << (k ? ", " : "") << scope.at(static_cast<std::size_t>(t->args[k]));
        os << ")";
        return;
    }
    case Term::Tag::Nu: {
        auto b = fresh(t->name.empty() ? "c" : t->name, scope);
        os << "new " << b << ". ";
        scope.push_back(b);
        print_to(os, t->left, scope, 2);
        scope.pop_back();
        return;
    }
    case Term::Tag::Tick:
        os << "tick. ";
        print_to(os, t->left, scope, 2);
        return;
    case Term::Tag::Sum: {
        if (t->guards.empty()) {
            os << "end";
            return;
        }
        bool paren = t->guards.size() > 1 && prec >= 2;
        if (paren)
            os << "(";
        for (std::size_t k = 0; k < t->guards.size(); ++k) {
            const auto& g = t->guards[k];
            os << (k ? " + " : "") << (g.pol == Pol::In ? "in " : "out ")
               << scope.at(static_cast<std::size_t>(g.chan)) << ". ";
            print_to(os, g.cont, scope, 2);
        }
        if (paren)
            os << ")";
        return;
    }
    case Term::Tag::Par: {
        bool paren = prec >= 1;
        if (paren)
            os << "(";
        print_to(os, t->left, scope, 0);
        os << " | ";
        print_to(os, t->right, scope, 1);
        if (paren)
            os << ")";
        return;
    }
    }
}

}  // namespace

std::string print(const TermPtr& t, const std::vector<std::string>& channels)
{
    std::ostringstream os;
    auto scope = channels;
    print_to(os, t, scope, 0);
    return os.str();
}

std::string print(const Program& p)
{
    std::ostringstream os;
    os << "channels";
    for (const auto& c : p.channels)
        os << " " << c;
    os << "\n";
    if (p.interface) {
        os << "interface";
        for (const auto& c : *p.interface)
            os << " " << c;
        os << "\n";
    }
    if (p.defs && p.defs->size() > 0) {
        os << "rec ";
        for (std::size_t k = 0; k < p.defs->defs.size(); ++k) {
            const auto& d = p.defs->defs[k];
            os << (k ? ",\n    " : "") << d.name << "(";
            for (std::size_t i = 0; i < d.params.size(); ++i)
                os << (i ? ", " : "") << d.params[i];
            os << ") := " << print(d.body, d.params);
        }
        os << "\nin ";
    }
    os << print(p.main, p.channels) << "\n";
    return os.str();
}

namespace {

TermPtr subst(const TermPtr& t, int k, const std::vector<int>& sigma, int n, int depth)
{
    auto ren = [&](int l) { return l < k ? sigma.at(static_cast<std::size_t>(l)) : n + (l - k); };
    switch (t->tag) {
    case Term::Tag::Apply: {
        std::vector<int> args;
        for (auto a : t->args)
            args.push_back(ren(a));
        return apply(t->name, args);
    }
    case Term::Tag::Nu:
        return nu(t->name, subst(t->left, k, sigma, n, depth + 1));
    case Term::Tag::Tick:
        return tick(subst(t->left, k, sigma, n, depth));
    case Term::Tag::Par:
        return par(subst(t->left, k, sigma, n, depth), subst(t->right, k, sigma, n, depth));
    case Term::Tag::Sum: {
        std::vector<Guard> gs;
        for (const auto& g : t->guards)
            gs.push_back({g.pol, ren(g.chan), subst(g.cont, k, sigma, n, depth)});
        return sum(std::move(gs));
    }
    }
    return t;
}

}  // namespace

TermPtr substitute(const TermPtr& t, int k, const std::vector<int>& sigma, int n)
{
    return subst(t, k, sigma, n, 0);
}

TermPtr derive(const TermPtr& t, int n, const Definitions& defs)
{
    switch (t->tag) {
    case Term::Tag::Apply: {
        auto d = defs.find(t->name);
        if (!d)
            throw std::invalid_argument("unbound variable " + t->name);
        if (d->params.size() != t->args.size())
            throw std::invalid_argument("arity mismatch for " + t->name);
        return substitute(d->body, static_cast<int>(d->params.size()), t->args, n);
    }
    case Term::Tag::Nu:
        return nu(t->name, derive(t->left, n + 1, defs));
    case Term::Tag::Tick:
        return tick(derive(t->left, n, defs));
    case Term::Tag::Par:
        return par(derive(t->left, n, defs), derive(t->right, n, defs));
    case Term::Tag::Sum: {
        std::vector<Guard> gs;
        for (const auto& g : t->guards)
            gs.push_back({g.pol, g.chan, derive(g.cont, n, defs)});
        return sum(std::move(gs));
    }
    }
    return t;
}

TermPtr derive_n(TermPtr t, int n, const Definitions& defs, int times)
{
    for (int k = 0; k < times; ++k)
        t = derive(t, n, defs);
    return t;
}

bool equal(const TermPtr& a, const TermPtr& b)
{
    if (a == b)
        return true;
    if (a->tag != b->tag)
        return false;
    switch (a->tag) {
    case Term::Tag::Apply:
        return a->name == b->name && a->args == b->args;
    case Term::Tag::Nu:
    case Term::Tag::Tick:
        return equal(a->left, b->left);
    case Term::Tag::Par:
        return equal(a->left, b->left) && equal(a->right, b->right);
    case Term::Tag::Sum:
        if (a->guards.size() != b->guards.size())
            return false;
        for (std::size_t k = 0; k < a->guards.size(); ++k) {
            const auto& g = a->guards[k];
            const auto& h = b->guards[k];
            if (g.pol != h.pol || g.chan != h.chan || !equal(g.cont, h.cont))
                return false;
        }
        return true;
    }
    return false;
}

int size(const TermPtr& t)
{
    switch (t->tag) {
    case Term::Tag::Apply:
        return 1;
    case Term::Tag::Nu:
    case Term::Tag::Tick:
        return 1 + size(t->left);
    case Term::Tag::Par:
        return 1 + size(t->left) + size(t->right);
    case Term::Tag::Sum: {
        if (t->guards.empty())
            return 1;
        int s = 0;
        for (const auto& g : t->guards)
            s += 1 + size(g.cont);
        return s;
    }
    }
    return 0;
}

bool recursion_free(const TermPtr& t)
{
    switch (t->tag) {
    case Term::Tag::Apply:
        return false;
    case Term::Tag::Nu:
    case Term::Tag::Tick:
        return recursion_free(t->left);
    case Term::Tag::Par:
        return recursion_free(t->left) && recursion_free(t->right);
    case Term::Tag::Sum:
        return std::all_of(t->guards.begin(), t->guards.end(),
                           [](const Guard& g) { return recursion_free(g.cont); });
    }
    return true;
}

}  // namespace innocent::ccs
