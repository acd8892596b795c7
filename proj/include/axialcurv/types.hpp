// axialcurv — second-order geometry of corank-1 singular manifolds.
// Shared aliases, error hierarchy and tolerance plumbing.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace axialcurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Base class for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Germ input does not match the JSON schema (missing keys, bad types, ...).
struct SchemaError : Error {
    using Error::Error;
};

/// Input map is not a germ at the origin (nonzero constant term).
struct NotGermError : Error {
    using Error::Error;
};

/// The differential at the origin does not have corank exactly one.
struct CorankError : Error {
    using Error::Error;
};

/// Operation invoked with incompatible source/target dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// A quantity required to be nonzero vanished within tolerance.
struct DegenerateError : Error {
    using Error::Error;
};

/// (n, k) combination outside the supported classification range.
struct UnsupportedError : Error {
    using Error::Error;
};

/// Requested invariant is not defined for this input (e.g. umbilic curvature).
struct UndefinedError : Error {
    using Error::Error;
};

/// Distinguished curve has vanishing velocity; its curvature is undefined.
struct SingularCurveError : Error {
    using Error::Error;
};

/// Oracle received non-finite coefficients.
struct NoCriticalValueError : Error {
    using Error::Error;
};

/// Locus evaluation requested at the infinite parameter u_inf.
struct InfiniteParamError : Error {
    using Error::Error;
};

/// Default relative tolerance for rank tests and degeneracy witnesses.
/// Overridable through the AXIALCURV_TOL environment variable.
double default_tolerance();

/// True when |a - b| <= tol * max(1, |a|, |b|).
bool close(double a, double b, double tol);

} // namespace axialcurv
