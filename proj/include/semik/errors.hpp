#pragma once

#include <stdexcept>
#include <string>

namespace semik {

enum class Err {
  DimensionMismatch,
  KernelMismatch,
  NotSquare,
  NotIdempotent,
  InvalidTable,
  OrderTooLarge,
  CarrierTooLarge,
  ArgumentTooSmall,
  ShapeMismatch,
  StageOutOfRange,
  UnitalityViolation,
  NotUnital,
  NegativeEntry,
  MalformedFile,
  UnknownSubcommand,
};

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const noexcept { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

const char* err_name(Err code);

}  // namespace semik
