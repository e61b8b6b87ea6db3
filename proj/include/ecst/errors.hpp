#pragma once

#include <stdexcept>
#include <string>

namespace ecst {

/// Argument outside its documented domain (angles, grids, flags).
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// alpha = 0: the odd cat state is undefined there.
struct degenerate_alpha : domain_error {
    explicit degenerate_alpha(const std::string& what) : domain_error(what) {}
};

/// A state that must be normalized is not.
struct norm_error : domain_error {
    explicit norm_error(const std::string& what) : domain_error(what) {}
};

/// Fock truncation cannot hold the requested state within the tail tolerance.
struct cutoff_too_small : std::runtime_error {
    explicit cutoff_too_small(const std::string& what) : std::runtime_error(what) {}
};

/// Mode label not present in a register.
struct mode_index_error : std::out_of_range {
    explicit mode_index_error(const std::string& what) : std::out_of_range(what) {}
};

/// Requested the normalized form of a branch that cannot occur (prob = 0).
struct zero_branch : std::runtime_error {
    explicit zero_branch(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ecst
