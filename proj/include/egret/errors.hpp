#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egret {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateDocumentError : Error {
  explicit DuplicateDocumentError(const std::string& doc_id)
      : Error("document already ingested: " + doc_id), doc_id(doc_id) {}
  std::string doc_id;
};

struct EmptyRecordError : Error {
  EmptyRecordError(const std::string& doc_id, std::size_t index)
      : Error("empty record at index " + std::to_string(index) + " in document " + doc_id),
        index(index) {}
  std::size_t index;
};

struct DimensionMismatchError : Error {
  DimensionMismatchError(std::size_t expected, std::size_t got)
      : Error("vector dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

struct RemoteUnavailableError : Error {
  explicit RemoteUnavailableError(const std::string& msg)
      : Error("embedding service unavailable: " + msg) {}
};

struct ProtocolError : Error {
  explicit ProtocolError(const std::string& msg) : Error("protocol error: " + msg) {}
};

struct GeneratorUnavailableError : Error {
  explicit GeneratorUnavailableError(const std::string& msg)
      : Error("generator unavailable: " + msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

struct VersionMismatchError : Error {
  VersionMismatchError(unsigned expected, unsigned got)
      : Error("index version mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

struct ChecksumMismatchError : Error {
  explicit ChecksumMismatchError(const std::string& msg)
      : Error("index checksum mismatch: " + msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

}  // namespace egret
