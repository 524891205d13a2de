#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

// Bad input: profile parameters, config keys, out-of-range arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical run left its admissible regime (non-positive density,
// non-finite values, gradient blow-up, failed convergence).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double t = 0.0, long node = -1)
        : std::runtime_error(what), t_(t), node_(node) {}
    double time() const noexcept { return t_; }
    long node() const noexcept { return node_; }

private:
    double t_;
    long node_;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

}  // namespace collapse
