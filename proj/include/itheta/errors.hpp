#pragma once

#include <stdexcept>
#include <string>

namespace itheta {

// Malformed or inconsistent inputs (dimension mismatch, bad arguments).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Degenerate data: null vectors, singular forms, trivial sublattices.
struct degenerate_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A configuration of timelike vectors that fails the incidence conditions.
struct incidence_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Evaluation requested on (or too close to) the singular locus of the
// primitive 1-form.
struct singular_locus_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A quadrature or truncation budget was exhausted before the requested
// tolerance was met.  Carries the best estimate and its error bound.
struct accuracy_error : std::runtime_error {
    double estimate;
    double error_bound;
    accuracy_error(const std::string& msg, double est, double bound)
        : std::runtime_error(msg), estimate(est), error_bound(bound) {}
};

}  // namespace itheta
