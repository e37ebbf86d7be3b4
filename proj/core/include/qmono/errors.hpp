#pragma once

#include <stdexcept>
#include <string>

namespace qmono {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QMONO_ERROR(Name)                         \
    struct Name : Error {                         \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

QMONO_ERROR(NonQuadratic);
QMONO_ERROR(InvalidDiscriminant);
QMONO_ERROR(SearchExhausted);
QMONO_ERROR(NonIntegral);
QMONO_ERROR(NotStabilizer);
QMONO_ERROR(ThetaMismatch);
QMONO_ERROR(GradeZero);
QMONO_ERROR(GridMismatch);
QMONO_ERROR(WindowOverflow);
QMONO_ERROR(TruncationWarning);
QMONO_ERROR(TargetMismatch);
QMONO_ERROR(NotAdmissible);
QMONO_ERROR(ConfigError);

#undef QMONO_ERROR

}  // namespace qmono
