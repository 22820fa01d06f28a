#include "slab/error.hpp"

namespace slab {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedStory: return "MalformedStory";
    case ErrorKind::kEmptyArticle: return "EmptyArticle";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kNoDocuments: return "NoDocuments";
    case ErrorKind::kBadFractions: return "BadFractions";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kUncleanedDocument: return "UncleanedDocument";
    case ErrorKind::kZeroMaxlen: return "ZeroMaxlen";
    case ErrorKind::kUnknownId: return "UnknownId";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kBadRange: return "BadRange";
    case ErrorKind::kOddDim: return "OddDim";
    case ErrorKind::kConfigMismatch: return "ConfigMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kBadConfig: return "BadConfig";
    case ErrorKind::kEmptyBatch: return "EmptyBatch";
    case ErrorKind::kDigestMismatch: return "DigestMismatch";
    case ErrorKind::kLineCountMismatch: return "LineCountMismatch";
  }
  return "Unknown";
}

}  // namespace slab
