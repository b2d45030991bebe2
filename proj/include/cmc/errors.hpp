#pragma once

#include <stdexcept>
#include <string>

namespace cmc {

/// Bad input or a precondition the caller could have checked. CLI exit code 1.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed on valid input. CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CMC_DECLARE_ERROR(Name, Base)                 \
    class Name : public Base {                        \
    public:                                           \
        explicit Name(const std::string& what)        \
            : Base(std::string(#Name ": ") + what) {} \
    };

CMC_DECLARE_ERROR(DomainError, PreconditionError)
CMC_DECLARE_ERROR(NoGeodesicOrbit, PreconditionError)
CMC_DECLARE_ERROR(NotDefined, PreconditionError)
CMC_DECLARE_ERROR(OutOfRegion, PreconditionError)
CMC_DECLARE_ERROR(OutOfScope, PreconditionError)
CMC_DECLARE_ERROR(NotApplicable, PreconditionError)
CMC_DECLARE_ERROR(NotClosing, PreconditionError)

CMC_DECLARE_ERROR(QuadratureError, NumericError)
CMC_DECLARE_ERROR(IntegrationError, NumericError)
CMC_DECLARE_ERROR(NoTube, NumericError)
CMC_DECLARE_ERROR(GeometryError, NumericError)
CMC_DECLARE_ERROR(IoError, NumericError)

#undef CMC_DECLARE_ERROR

}  // namespace cmc
