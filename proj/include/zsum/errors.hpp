#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   parse_error    -> exit 2 (bad group strings, sequence literals, flags)
//   resource_error -> exit 3 (memory cap, group-size caps)
//   domain_error   -> exit 4 (violated mathematical preconditions)
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : error {
    using error::error;
};

struct resource_error : error {
    using error::error;
};

struct domain_error : error {
    using error::error;
};

// A group element does not fit the group it is used with.
struct invalid_element : domain_error {
    using domain_error::domain_error;
};

// A group does not have the shape an operation requires.
struct unsupported_group : domain_error {
    using domain_error::domain_error;
};

}  // namespace zsum
