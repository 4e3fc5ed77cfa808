#include "innocent/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace innocent::io {

namespace fs = std::filesystem;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

arena::Position position_from_json(const json& j)
{
    try {
        auto channels = j.at("channels").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::vector<std::string>>> players;
        std::size_t k = 0;
        for (const auto& p : j.at("players")) {
            std::string name = p.contains("name") ? p["name"].get<std::string>() : "p" + std::to_string(k);
            players.emplace_back(name, p.at("ports").get<std::vector<std::string>>());
            ++k;
        }
        return arena::Position::build(channels, players);
    } catch (const json::exception& e) {
        throw io_error(std::string("bad position: ") + e.what());
    }
}

json to_json(const arena::Position& x)
{
    json players = json::array();
    for (const auto& p : x.players()) {
        json ports = json::array();
        for (int i = 0; i < p.arity; ++i)
            ports.push_back(x.port(p, i));
        players.push_back({{"name", p.label}, {"ports", ports}});
    }
    return {{"channels", x.channels()}, {"players", players}};
}

json to_json(const arena::ExtendedMove& m)
{
    return {{"move", arena::to_string(m.kind)}, {"players", m.players}, {"step", arena::describe(m)}};
}

json to_json(const arena::Play& u)
{
    json steps = json::array();
    for (const auto& m : u.canonical_steps())
        steps.push_back(arena::describe(m));
    return {{"key", u.key()},
            {"length", u.length()},
            {"steps", steps},
            {"closed_world", arena::is_closed_world(u)},
            {"successful", arena::is_successful(u)}};
}

json to_json(const semantics::Behaviour& b)
{
    json plays = json::array();
    for (const auto& e : b.entries) {
        json r = json::object();
        for (const auto& [parent, map] : e.restrictions)
            r[b.entries[parent].key] = map;
        plays.push_back({{"key", e.key},
                         {"states", e.states.size()},
                         {"successful", arena::is_successful(e.play)},
                         {"restrictions", r}});
    }
    return {{"position", to_json(b.position)}, {"depth", b.depth}, {"plays", plays}};
}

json to_json(const semantics::Verdict& v)
{
    json j{{"verdict", semantics::to_string(v.outcome)}};
    if (v.outcome == semantics::Outcome::Fail) {
        json w = json::array();
        for (const auto& m : v.witness)
            w.push_back(arena::describe(m));
        j["witness"] = w;
        if (v.cycle)
            j["cycle_start"] = v.cycle_start;
    }
    if (!v.reason.empty())
        j["reason"] = v.reason;
    j["nodes"] = v.nodes;
    j["budget"] = v.budget;
    return j;
}

arena::Position load_position(const std::string& path)
{
    auto text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw io_error(path + ": " + e.what());
        }
        return position_from_json(j);
    }
    return semantics::process_position(ccs::parse_program(text).channels);
}

ccs::Program load_program(const std::string& path) { return ccs::parse_program(read_file(path)); }

std::vector<std::string> test_files(const std::string& path)
{
    if (!fs::is_directory(path)) {
        if (!fs::exists(path))
            throw io_error("no such file or directory: " + path);
        return {path};
    }
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file() && e.path().extension() == ".ccs")
            out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    if (out.empty())
        throw io_error("no .ccs tests in " + path);
    return out;
}

}  // namespace innocent::io
