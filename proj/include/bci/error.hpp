#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bci {

enum class ErrorKind {
  kParameter,          // mismatched or out-of-range arguments
  kDivisionByZero,     // inversion of the zero field element
  kFormat,             // malformed text encodings (hex, decimal, JSON fields)
  kCapability,         // request exceeds a tractability guard
  kUnsupportedFormat,  // image magic not P5/P6
  kUnsupportedDepth,   // maxval other than 255
  kCorruptFile,        // truncated raster or envelope
  kStructure,          // inconsistent block grid / block length
  kKey,                // key material missing, invalid or mismatched
  kEnvelope,           // envelope parameters disagree with the key
  kDegenerateVariance, // correlation of a constant sequence
  kIo,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bci
