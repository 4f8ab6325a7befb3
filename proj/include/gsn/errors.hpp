#pragma once

#include <stdexcept>
#include <string>

namespace gsn {

/// Requested computation would overflow double range (e.g. 1/phi_hat too large).
class conditioning_error : public std::runtime_error {
public:
    conditioning_error(const std::string& what, double exponent)
        : std::runtime_error(what), exponent_(exponent) {}
    double exponent() const { return exponent_; }

private:
    double exponent_;
};

/// A size cap was exceeded (lattice enumeration, grid allocation).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is mathematically degenerate for the requested operation
/// (all-zero coefficient tree handed to a cost distribution).
class degenerate_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature or fit did not reach its configured tolerance.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few usable points for a rate fit.
class study_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gsn
