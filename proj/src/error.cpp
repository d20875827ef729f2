#include "sparsesrc/error.hpp"

#include <iostream>
#include <mutex>

namespace sparsesrc {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h;
  return h;
}

thread_local std::vector<std::string>* t_capture = nullptr;

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kResolutionTooCoarse: return "resolution too coarse";
    case ErrorCode::kIndexOutOfRange: return "index out of range";
    case ErrorCode::kSizeMismatch: return "size mismatch";
    case ErrorCode::kAssembly: return "assembly error";
    case ErrorCode::kSingular: return "singular operator";
    case ErrorCode::kNotConverged: return "not converged";
    case ErrorCode::kTooLarge: return "problem too large";
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

void set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(handler_mutex());
  handler_slot() = std::move(handler);
}

void warn(const std::string& message) {
  if (t_capture) {
    t_capture->push_back(message);
    return;
  }
  std::lock_guard<std::mutex> lock(handler_mutex());
  if (handler_slot()) {
    handler_slot()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace sparsesrc

namespace sparsesrc {

ScopedWarningCapture::ScopedWarningCapture(std::vector<std::string>& sink)
    : previous_(t_capture) {
  t_capture = &sink;
}

ScopedWarningCapture::~ScopedWarningCapture() { t_capture = previous_; }

}  // namespace sparsesrc
