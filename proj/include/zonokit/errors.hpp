#ifndef ZONOKIT_ERRORS_HPP
#define ZONOKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zonokit {

/**
 * @brief Incompatible matrix or vector dimensions.
 */
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/**
 * @brief Operation applied to a set representation it does not support,
 *        or a conversion request that would lose structure.
 */
class RepresentationError : public std::invalid_argument {
public:
    explicit RepresentationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Invalid argument values (bad incidence entries, unordered breakpoints, ...).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A query that requires a nonempty set was given an empty one.
class EmptySetError : public std::runtime_error {
public:
    explicit EmptySetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A polytope or program is unbounded where boundedness is required.
class UnboundedError : public std::runtime_error {
public:
    explicit UnboundedError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iteration, node, or solution-pool caps exhausted before completion.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A geometric routine met a lower-dimensional (flat) set.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A user-supplied evaluator produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace zonokit

#endif
