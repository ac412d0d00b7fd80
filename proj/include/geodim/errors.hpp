#pragma once

#include <stdexcept>
#include <string>

namespace geodim {

// Thrown when a requested computation exceeds the desk-scale budget
// (e.g. subset enumeration past the coordinate cap).
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace geodim
