#pragma once

#include <stdexcept>
#include <string>

namespace rlap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// core
struct ActionNotInSpace : Error { using Error::Error; };
struct EmptyActionSpace : Error { using Error::Error; };

// environments
struct EmptyCandidates : Error { using Error::Error; };
struct MissingTemplate : Error { using Error::Error; };

// executor / embedding clients
struct ExecutorTimeout : Error { using Error::Error; };
struct ExecutorTransport : Error { using Error::Error; };
struct ExecutorMalformed : Error { using Error::Error; };
struct EmbeddingTransport : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// training
struct BufferTooSmall : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };

// metrics
struct LengthMismatch : Error { using Error::Error; };
struct NotAPermutation : Error { using Error::Error; };

// ingestion / config
struct TooShortContext : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct SchemaError : Error {
  SchemaError(long line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
  explicit SchemaError(const std::string& reason) : Error(reason), line(0) {}
  long line;
};

}  // namespace rlap
