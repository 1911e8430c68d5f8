#pragma once

#include <string>

#include "pmqhur/json_io.hpp"

namespace pmqhur::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(PMQHUR_FIXTURE_DIR) + "/" + name;
}

inline PmqSpec load_pmq_fixture(const std::string& name) {
    return pmq_from_json(load_json_file(fixture_path(name)));
}

inline PairSpec load_pair_fixture(const std::string& name) {
    return pair_from_json(load_json_file(fixture_path(name)));
}

} // namespace pmqhur::testing
