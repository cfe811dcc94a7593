#ifndef GPM_ERRORS_HPP
#define GPM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define GPM_DEFINE_ERROR(NAME)                                                \
    struct NAME : Error {                                                     \
        using Error::Error;                                                   \
    }

GPM_DEFINE_ERROR(PreconditionViolation);
GPM_DEFINE_ERROR(SpecMismatch);
GPM_DEFINE_ERROR(GraphMismatch);
GPM_DEFINE_ERROR(NotADivisor);
GPM_DEFINE_ERROR(UnknownVertex);
GPM_DEFINE_ERROR(BadComponent);
GPM_DEFINE_ERROR(NotFactorable);
GPM_DEFINE_ERROR(FactorizationFailure);
GPM_DEFINE_ERROR(Unsupported);
GPM_DEFINE_ERROR(ScaleAbsent);
GPM_DEFINE_ERROR(NotInImage);
GPM_DEFINE_ERROR(BudgetExceeded);
GPM_DEFINE_ERROR(LengthCapExceeded);
GPM_DEFINE_ERROR(ParseError);
GPM_DEFINE_ERROR(InternalError);

#undef GPM_DEFINE_ERROR

} // namespace gpm

#endif // GPM_ERRORS_HPP
