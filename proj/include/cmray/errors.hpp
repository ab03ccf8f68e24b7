#pragma once

#include <stdexcept>

namespace cmray {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CMRAY_ERROR(Name)                      \
    struct Name : Error {                      \
        using Error::Error;                    \
    }

CMRAY_ERROR(NotFundamental);
CMRAY_ERROR(NotImaginary);
CMRAY_ERROR(ZeroIdeal);
CMRAY_ERROR(NotCoprime);
CMRAY_ERROR(NotDivisor);
CMRAY_ERROR(LatticePoint);
CMRAY_ERROR(PrecisionExhausted);
CMRAY_ERROR(DegenerateDifference);
CMRAY_ERROR(Indeterminate);
CMRAY_ERROR(SearchExhausted);
CMRAY_ERROR(NoneFound);
CMRAY_ERROR(NoTwistExists);
CMRAY_ERROR(OutOfScope);

#undef CMRAY_ERROR

}  // namespace cmray
