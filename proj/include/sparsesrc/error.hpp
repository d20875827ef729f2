#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsesrc {

enum class ErrorCode {
  kInvalidArgument,
  kResolutionTooCoarse,
  kIndexOutOfRange,
  kSizeMismatch,
  kAssembly,
  kSingular,
  kNotConverged,
  kTooLarge,
  kConfig,
  kIo,
};

const char* to_string(ErrorCode code);

/// Exception type thrown by every library routine. The code maps one-to-one
/// onto the status values of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Non-fatal diagnostics (degenerate noise input, inadmissible alpha, ...)
/// are routed through a process-wide handler. The default writes to stderr.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

/// While alive, warnings raised on the constructing thread are appended to
/// `sink` instead of reaching the process-wide handler.
class ScopedWarningCapture {
 public:
  explicit ScopedWarningCapture(std::vector<std::string>& sink);
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

 private:
  std::vector<std::string>* previous_;
};

}  // namespace sparsesrc
