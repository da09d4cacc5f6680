#include "hypercsa/errors.hpp"

namespace hypercsa {

const char* to_string(LoadErrorKind kind) noexcept {
  switch (kind) {
    case LoadErrorKind::kBadMagic: return "bad magic";
    case LoadErrorKind::kUnsupportedVersion: return "unsupported version";
    case LoadErrorKind::kTruncated: return "truncated";
    case LoadErrorKind::kChecksumMismatch: return "checksum mismatch";
    case LoadErrorKind::kMalformed: return "malformed";
  }
  return "unknown";
}

}  // namespace hypercsa
