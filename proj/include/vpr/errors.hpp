#pragma once

#include <stdexcept>
#include <string>

namespace vpr {

/// Base class of every error raised by the library. `code()` is a stable
/// snake_case tag used in protocol error frames.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define VPR_DEFINE_ERROR(Name, tag)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(tag, what) {}     \
  };

VPR_DEFINE_ERROR(FormatError, "format_error")
VPR_DEFINE_ERROR(OutOfRangeError, "out_of_range")
VPR_DEFINE_ERROR(SequenceError, "sequence_error")
VPR_DEFINE_ERROR(TerminalError, "terminal")
VPR_DEFINE_ERROR(NonTerminalError, "non_terminal")
VPR_DEFINE_ERROR(IllegalMoveError, "illegal_move")
VPR_DEFINE_ERROR(GenerationError, "generation_failed")
VPR_DEFINE_ERROR(InconsistentGridError, "inconsistent_grid")
VPR_DEFINE_ERROR(InconsistentObservationError, "inconsistent_observation")
VPR_DEFINE_ERROR(ConfigError, "config_error")
VPR_DEFINE_ERROR(EmptyInputError, "empty_input")
VPR_DEFINE_ERROR(EmptyBatchError, "empty_batch")
VPR_DEFINE_ERROR(ShapeError, "shape_error")
VPR_DEFINE_ERROR(MissingVerdictError, "missing_verdict")
VPR_DEFINE_ERROR(ReplayError, "replay_error")
VPR_DEFINE_ERROR(IoError, "io_error")

#undef VPR_DEFINE_ERROR

}  // namespace vpr
