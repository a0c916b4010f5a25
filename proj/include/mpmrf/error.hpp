#pragma once

#include <stdexcept>
#include <string>

namespace mpmrf {

/// Precondition violation in caller-supplied data (bad vertex, edge list,
/// parameter domain, malformed file).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computed quantity broke a numerical invariant (negative mass, pmf that
/// does not sum to one, failed antisymmetry check).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpmrf
