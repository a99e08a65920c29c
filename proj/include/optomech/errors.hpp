#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

// Failure modes the library distinguishes beyond std::invalid_argument.

struct cutoff_violation : std::runtime_error {
    explicit cutoff_violation(const std::string& what) : std::runtime_error(what) {}
};

struct tracking_failure : std::runtime_error {
    explicit tracking_failure(const std::string& what) : std::runtime_error(what) {}
};

struct numeric_failure : std::runtime_error {
    explicit numeric_failure(const std::string& what) : std::runtime_error(what) {}
};

struct sync_failure : std::runtime_error {
    explicit sync_failure(const std::string& what) : std::runtime_error(what) {}
};

struct unreachable_transition : std::runtime_error {
    explicit unreachable_transition(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_mismatch : std::runtime_error {
    explicit dimension_mismatch(const std::string& what) : std::runtime_error(what) {}
};

struct script_error : std::runtime_error {
    int line;
    int column;
    script_error(int line_, int column_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

}  // namespace optomech
