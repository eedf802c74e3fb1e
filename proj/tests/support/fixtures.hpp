#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace peglab_test {

inline std::string fixture_path(const std::string& rel) {
    return std::string(PEGLAB_FIXTURE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& rel) {
    return read_file(fixture_path(rel));
}

} // namespace peglab_test
