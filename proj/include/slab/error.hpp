#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slab {

// Machine-readable failure categories. The CLI prints the category name as
// the first field of its single-line error report.
enum class ErrorKind {
  kMalformedStory,
  kEmptyArticle,
  kIoFailure,
  kNoDocuments,
  kBadFractions,
  kEmptyCorpus,
  kUncleanedDocument,
  kZeroMaxlen,
  kUnknownId,
  kDimMismatch,
  kEmptyInput,
  kShapeMismatch,
  kLengthMismatch,
  kBadRange,
  kOddDim,
  kConfigMismatch,
  kIndexOutOfRange,
  kBadConfig,
  kEmptyBatch,
  kDigestMismatch,
  kLineCountMismatch,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace slab
