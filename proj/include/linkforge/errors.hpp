#pragma once
#include <stdexcept>
#include <string>

namespace linkforge {

/// Base class for all solver errors.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TriangleViolation : SolverError { using SolverError::SolverError; };
struct NotOnCurve : SolverError { using SolverError::SolverError; };
struct DegenerateConfig : SolverError { using SolverError::SolverError; };
struct DegenerateLinkage : SolverError { using SolverError::SolverError; };
struct EmptyModuliSpace : SolverError { using SolverError::SolverError; };
struct NumericalFailure : SolverError { using SolverError::SolverError; };
struct PoleHit : SolverError { using SolverError::SolverError; };
struct InvalidAlpha : SolverError { using SolverError::SolverError; };
struct TangentVertical : SolverError { using SolverError::SolverError; };
struct NotConvex : SolverError { using SolverError::SolverError; };
struct NotAligned : SolverError { using SolverError::SolverError; };
struct NotStrictlyConvex : SolverError { using SolverError::SolverError; };
struct ChartBoundary : SolverError { using SolverError::SolverError; };
struct QuadraticDegenerate : SolverError { using SolverError::SolverError; };

} // namespace linkforge
