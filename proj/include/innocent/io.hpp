#pragma once

#include "innocent/semantics.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace innocent::io {

using json = nlohmann::ordered_json;

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

// {"channels": [...], "players": [{"name": "x", "ports": ["a", ...]}, ...]}
arena::Position position_from_json(const json& j);
json to_json(const arena::Position& x);

json to_json(const arena::ExtendedMove& m);
json to_json(const arena::Play& u);
json to_json(const semantics::Behaviour& b);
json to_json(const semantics::Verdict& v);

// A position file is JSON; anything else is read as a CCS program and
// stands for its one-player process position.
arena::Position load_position(const std::string& path);
ccs::Program load_program(const std::string& path);

// *.ccs files of a directory in name order, or the file itself.
std::vector<std::string> test_files(const std::string& path);

}  // namespace innocent::io
