#pragma once
#include <stdexcept>
#include <string>

namespace nrh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceMismatch : Error { using Error::Error; };
struct GradeError : Error { using Error::Error; };
struct RankError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct SignatureError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };
struct NotAdapted : Error { using Error::Error; };
struct NotWeaklyIrreducible : Error { using Error::Error; };
struct FamilyConstraintError : Error { using Error::Error; };
struct HolonomyOverlap : Error { using Error::Error; };
struct ModelInconsistent : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace nrh
