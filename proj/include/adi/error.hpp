#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adi {

enum class ErrorCode {
  // data errors
  MalformedRow,
  DuplicateId,
  InvalidEncoding,
  EmptyCorpus,
  UnlabeledDocument,
  LabelMismatch,
  EmptyVocabulary,
  SingleSign,
  SingleClass,
  MissingClass,
  DimensionMismatch,
  LengthMismatch,
  IndexOutOfRange,
  MissingStoplist,
  VersionMismatch,
  CorruptFile,
  IoError,
  // usage / config errors
  UnknownKey,
  InvalidValue,
  SchemaViolation,
  EmptyGrid,
  EmptyResults,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the whole library. `position` carries the
// 1-based line number for row-level ingestion errors, the byte offset for
// CorruptFile, and the class index for MissingClass.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::int64_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::int64_t> position() const noexcept { return position_; }
  // Message without the code-name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::int64_t> position_;
};

// Process exit code for the CLI: 1 usage/config, 2 data.
int exit_code_for(ErrorCode code);

}  // namespace adi
