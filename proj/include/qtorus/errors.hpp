#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

// Invalid input document or witness file; CLI exit code 2.
struct spec_error : std::runtime_error {
    explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal enumeration cap was exceeded; CLI exit code 3.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtorus
