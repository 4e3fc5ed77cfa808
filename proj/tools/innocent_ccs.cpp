// innocent-ccs: translate CCS, enumerate plays, run testing experiments.

#include <innocent/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace innocent;
using io::json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> inputs;
    int depth = -1;  // per-command default
    std::size_t budget = 10000;
    std::string criterion = "fair";
    std::string format = "text";
    std::string move_class = "closed-world";
};

void need_format(const RunConfig& rc, std::initializer_list<const char*> ok)
{
    for (const auto* f : ok)
        if (rc.format == f)
            return;
    throw usage_error("format " + rc.format + " is not available for this command");
}

int depth_or(const RunConfig& rc, int d) { return rc.depth < 0 ? d : rc.depth; }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int cmd_translate(const RunConfig& rc)
{
    need_format(rc, {"text", "json"});
    auto p = io::load_program(rc.inputs.at(0));
    auto f = strategy::translate(p);
    int d = depth_or(rc, 3);
    auto text = strategy::dump(f, d, p.channels);
    if (rc.format == "json") {
        json lines = json::array();
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);)
            lines.push_back(l);
        json j{{"player", "p"},
               {"arity", f->arity},
               {"channels", p.channels},
               {"definitions", p.defs ? p.defs->size() : 0},
               {"term", ccs::print(p)},
               {"depth", d},
               {"dump", lines}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "player p, arity " << f->arity << "\n" << text;
    }
    return 0;
}

int cmd_plays(const RunConfig& rc)
{
    need_format(rc, {"text", "json", "dot"});
    auto x = io::load_position(rc.inputs.at(0));
    auto cls = arena::parse_move_class(rc.move_class);
    int d = depth_or(rc, 2);
    auto plays = arena::enumerate_plays(x, d, cls);
    if (rc.format == "dot") {
        std::size_t k = 0;
        for (const auto& u : plays)
            std::cout << arena::to_dot(u, "play" + std::to_string(k++));
        return 0;
    }
    if (rc.format == "json") {
        json list = json::array();
        for (const auto& u : plays)
            list.push_back(io::to_json(u));
        json j{{"position", io::to_json(x)},
               {"class", rc.move_class},
               {"depth", d},
               {"plays", plays.size()},
               {"nonempty", plays.size() - 1},
               {"list", list}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "plays: " << plays.size() << " (" << plays.size() - 1 << " nonempty)\n";
    for (const auto& u : plays) {
        std::cout << (u.length() == 0 ? std::string("(empty)") : u.key());
        std::cout << "  [" << (arena::is_closed_world(u) ? "closed-world" : "open")
                  << (arena::is_successful(u) ? ", successful" : "") << "]\n";
    }
    return 0;
}

int cmd_gl(const RunConfig& rc)
{
    need_format(rc, {"text", "json"});
    auto p = io::load_program(rc.inputs.at(0));
    auto x = semantics::process_position(p.channels);
    auto f = strategy::amalgamate(x, {{"p", strategy::translate(p)}});
    auto b = semantics::gl(f, x, depth_or(rc, 8));
    if (rc.format == "json") {
        std::cout << io::to_json(b).dump(2) << "\n";
        return 0;
    }
    for (const auto& e : b.entries)
        std::cout << e.states.size() << "  " << (e.key.empty() ? std::string("(empty)") : e.key) << "\n";
    return 0;
}

struct LoadedTest {
    std::string name;
    semantics::Test test;
};

std::vector<LoadedTest> load_tests(const std::string& path)
{
    std::vector<LoadedTest> out;
    for (const auto& file : io::test_files(path)) {
        auto t = io::load_program(file);
        if (!t.interface)
            throw usage_error(file + ": a test needs an interface header");
        auto y = semantics::process_position(t.channels, "q");
        out.push_back({stem(file), {stem(file), strategy::translate(t), y, *t.interface}});
    }
    return out;
}

void print_verdict(const std::string& side, const semantics::Verdict& v)
{
    std::cout << "  " << side << ": " << semantics::to_string(v.outcome) << " (" << v.nodes << " nodes)";
    if (!v.reason.empty())
        std::cout << ", " << v.reason;
    std::cout << "\n";
    if (v.outcome != semantics::Outcome::Fail)
        return;
    if (v.witness.empty())
        std::cout << "    (at the empty play)\n";
    for (std::size_t k = 0; k < v.witness.size(); ++k) {
        if (v.cycle && k == v.cycle_start)
            std::cout << "    -- cycle --\n";
        std::cout << "    " << arena::describe(v.witness[k]) << "\n";
    }
}

int cmd_check(const RunConfig& rc)
{
    need_format(rc, {"text", "json"});
    auto p = io::load_program(rc.inputs.at(0));
    auto tests = load_tests(rc.inputs.at(1));
    auto x = semantics::process_position(p.channels);
    auto f = strategy::translate(p);
    auto c = semantics::parse_criterion(rc.criterion);
    semantics::Limits lim{rc.budget};
    bool unknown = false;
    json list = json::array();
    for (const auto& t : tests) {
        auto v = semantics::orthogonal(f, x, t.test.strategy, t.test.position, t.test.interface, c, lim);
        unknown = unknown || v.outcome == semantics::Outcome::Unknown;
        if (rc.format == "json") {
            auto j = io::to_json(v);
            j["test"] = t.name;
            list.push_back(j);
        } else {
            std::cout << "test " << t.name << "\n";
            print_verdict("process", v);
        }
    }
    if (rc.format == "json")
        std::cout << json{{"criterion", rc.criterion}, {"results", list}}.dump(2) << "\n";
    return unknown ? 2 : 0;
}

int cmd_compare(const RunConfig& rc)
{
    need_format(rc, {"text", "json"});
    auto p = io::load_program(rc.inputs.at(0));
    auto p2 = io::load_program(rc.inputs.at(1));
    if (p.channels != p2.channels)
        throw usage_error("the two processes must declare the same channels");
    auto tests = load_tests(rc.inputs.at(2));
    auto x = semantics::process_position(p.channels);
    auto c = semantics::parse_criterion(rc.criterion);
    std::vector<semantics::Test> ts;
    for (const auto& t : tests)
        ts.push_back(t.test);
    auto cmp = semantics::compare(strategy::translate(p), strategy::translate(p2), x, ts, c,
                                  semantics::Limits{rc.budget});
    bool unknown = cmp.relation == semantics::Relation::Unknown;
    for (const auto& r : cmp.reports)
        if (r.left.outcome == semantics::Outcome::Unknown || r.right.outcome == semantics::Outcome::Unknown)
            unknown = true;

    if (rc.format == "json") {
        json reports = json::array();
        for (const auto& r : cmp.reports)
            reports.push_back({{"test", r.test}, {"left", io::to_json(r.left)}, {"right", io::to_json(r.right)}});
        json j{{"criterion", rc.criterion}, {"budget", rc.budget}, {"relation", semantics::to_string(cmp.relation)}};
        if (cmp.witness_test)
            j["distinguishing_test"] = cmp.reports[*cmp.witness_test].test;
        j["reports"] = reports;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "criterion " << rc.criterion << ", budget " << rc.budget << "\n";
        for (const auto& r : cmp.reports) {
            std::cout << "test " << r.test << "\n";
            print_verdict("left", r.left);
            print_verdict("right", r.right);
        }
        std::cout << "relation: " << semantics::to_string(cmp.relation);
        if (cmp.witness_test)
            std::cout << " by " << cmp.reports[*cmp.witness_test].test;
        std::cout << "\n";
    }
    return unknown ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Innocent strategies for CCS: translation, plays and testing equivalences"};
    app.require_subcommand(1);
    RunConfig rc;

    auto depth = [&](CLI::App* s, const std::string& what) {
        s->add_option("--depth", rc.depth, what)->check(CLI::NonNegativeNumber);
    };
    auto format = [&](CLI::App* s) {
        s->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    };
    auto testing = [&](CLI::App* s) {
        s->add_option("--budget", rc.budget, "Configuration node budget")->check(CLI::PositiveNumber);
        s->add_option("--criterion", rc.criterion, "Observation criterion")
            ->check(CLI::IsMember({"fair", "must"}));
        depth(s, "Accepted for uniformity; verdicts are bounded by --budget");
    };

    auto* tr = app.add_subcommand("translate", "Dump the strategy of a CCS process");
    tr->add_option("file", rc.inputs, "CCS file")->required()->expected(1);
    depth(tr, "Levels to show (default 3)");
    format(tr);

    auto* pl = app.add_subcommand("plays", "Enumerate plays on a position up to isomorphism");
    pl->add_option("position", rc.inputs, "Position JSON, or a CCS file for its process position")
        ->required()
        ->expected(1);
    depth(pl, "Maximal number of moves (default 2)");
    pl->add_option("--class", rc.move_class, "Move class")
        ->check(CLI::IsMember({"basic", "full", "closed-world", "closed"}));
    format(pl);

    auto* g = app.add_subcommand("gl", "Closed-world behaviour table of a CCS process");
    g->add_option("file", rc.inputs, "CCS file")->required()->expected(1);
    depth(g, "Maximal play length (default 8)");
    format(g);

    auto* ck = app.add_subcommand("check", "Run tests against one process");
    ck->add_option("inputs", rc.inputs, "PROCESS TESTS")->required()->expected(2);
    testing(ck);
    format(ck);

    auto* cp = app.add_subcommand("compare", "Compare two processes under a test suite");
    cp->add_option("inputs", rc.inputs, "F F' TESTS (a .ccs file or a directory of them)")
        ->required()
        ->expected(3);
    testing(cp);
    format(cp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*tr)
            return cmd_translate(rc);
        if (*pl)
            return cmd_plays(rc);
        if (*g)
            return cmd_gl(rc);
        if (*ck)
            return cmd_check(rc);
        return cmd_compare(rc);
    } catch (const ccs::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
