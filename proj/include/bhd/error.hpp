#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace bhd {

enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch,
  DegenerateSpan,
  UnsupportedDimension,
  NotSimple,
  ZeroBivector,
  UnboundedSection,
  InsufficientSamples,
  InvalidId,
  IllConditioned,
  CertificateFailed,
  Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

// All library failures are reported through this type; the C API maps the
// code one-to-one onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bhd

#define BHD_THROW(code, msg)                                     \
  do {                                                           \
    std::ostringstream bhd_throw_os_;                            \
    bhd_throw_os_ << msg;                                        \
    throw ::bhd::Error(::bhd::ErrorCode::code, bhd_throw_os_.str()); \
  } while (0)
