#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpdna {

enum class ErrorKind {
  invalid_argument,
  io,
  config,
  parse,      // malformed strand / FASTA / manifest
  integrity,  // checksum mismatch
  capacity,   // assembled strand does not fit the cap
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  Error(ErrorKind kind, std::string msg, std::vector<std::uint64_t> indices)
      : std::runtime_error(std::move(msg)), kind_(kind), indices_(std::move(indices)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Offending strand indices, when the failure is attributable.
  const std::vector<std::uint64_t>& strand_indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::uint64_t> indices_;
};

const char* error_kind_name(ErrorKind k);

}  // namespace dpdna
