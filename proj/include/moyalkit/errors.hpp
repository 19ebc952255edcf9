#pragma once

#include <stdexcept>
#include <string>

namespace moyalkit {

// Error taxonomy used by the CLI exit-code mapping: validation errors are
// caller mistakes (bad inputs, incompatible grids), numerical guards are
// computations refused because a quantitative safety check failed.
enum class ErrorCategory { validation, numerical_guard, io, usage };

class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}
    ErrorCategory category() const { return category_; }

  private:
    ErrorCategory category_;
};

#define MOYALKIT_DEFINE_ERROR(Name, Category)                                 \
    class Name : public Error {                                               \
      public:                                                                 \
        explicit Name(const std::string& what)                                \
            : Error(ErrorCategory::Category, std::string(#Name ": ") + what) {}\
    }

MOYALKIT_DEFINE_ERROR(ConditionViolation, validation);
MOYALKIT_DEFINE_ERROR(NoFeasibleConstant, validation);
MOYALKIT_DEFINE_ERROR(UnsupportedFamily, validation);
MOYALKIT_DEFINE_ERROR(SpecMismatch, validation);
MOYALKIT_DEFINE_ERROR(OrderTooHigh, validation);
MOYALKIT_DEFINE_ERROR(OffLattice, validation);
MOYALKIT_DEFINE_ERROR(NotNormalized, validation);
MOYALKIT_DEFINE_ERROR(NegativeValues, validation);

MOYALKIT_DEFINE_ERROR(TruncationError, numerical_guard);
MOYALKIT_DEFINE_ERROR(BoundaryLeak, numerical_guard);
MOYALKIT_DEFINE_ERROR(IntegrandGrowth, numerical_guard);
MOYALKIT_DEFINE_ERROR(OuterBoundaryLeak, numerical_guard);

MOYALKIT_DEFINE_ERROR(IoError, io);
MOYALKIT_DEFINE_ERROR(UsageError, usage);

#undef MOYALKIT_DEFINE_ERROR

} // namespace moyalkit
