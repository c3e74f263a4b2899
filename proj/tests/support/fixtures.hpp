#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "regrelax/scenario_io.hpp"

namespace regrelax::testsupport {

inline std::string read_fixture(const std::string& name) {
    const std::string path = std::string(FIXTURES_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline KnowledgeBase load_scene_fixture(const std::string& name) {
    const SceneParseResult result = parse_scene(read_fixture(name));
    if (!result.ok()) {
        throw std::runtime_error("fixture " + name + " failed to parse: " +
                                 result.errors.front().message);
    }
    return *result.kb;
}

}  // namespace regrelax::testsupport
