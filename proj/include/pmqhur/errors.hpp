#pragma once

#include <stdexcept>
#include <string>

namespace pmqhur {

// Base for all typed errors; `code()` is the stable machine-readable name
// used by the CLI when mapping failures to exit status 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define PMQHUR_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                          \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name, what) {}    \
    }

PMQHUR_DEFINE_ERROR(StructuralError);
PMQHUR_DEFINE_ERROR(NormUnavailable);
PMQHUR_DEFINE_ERROR(TruncationOverflow);
PMQHUR_DEFINE_ERROR(CompletionNotConservative);
PMQHUR_DEFINE_ERROR(ClosureViolation);
PMQHUR_DEFINE_ERROR(SizeGuardExceeded);
PMQHUR_DEFINE_ERROR(CoarsePointPresent);
PMQHUR_DEFINE_ERROR(DegenerateCell);
PMQHUR_DEFINE_ERROR(MonotonicityViolation);
PMQHUR_DEFINE_ERROR(NoBasePoint);
PMQHUR_DEFINE_ERROR(CoveringNotAdapted);
PMQHUR_DEFINE_ERROR(CoveringNotStripSeparated);
PMQHUR_DEFINE_ERROR(InputError);

#undef PMQHUR_DEFINE_ERROR

} // namespace pmqhur
