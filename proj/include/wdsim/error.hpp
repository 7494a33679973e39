#ifndef WDSIM_ERROR_HPP
#define WDSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wdsim {

// Error taxonomy used across the simulator. Precondition violations and
// unrecoverable run failures throw SimError; validation-style rejections
// (config checks, routing misses) are plain return values instead.
enum class ErrorCode {
    InvalidArgument,
    MissingCredentials,
    ConnectionRefused,
    AlreadyMember,
    ScopeExhausted,
    NoRoute,
    PreconditionViolated,
    SchedulingError,
    MissingParameter,
    ControlTimeout,
    ConfigRejected,
};

class SimError : public std::runtime_error {
  public:
    SimError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace wdsim

#endif
