#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eawg {

enum class ErrorKind {
  MissingEmptySet,
  MissingSingleton,
  RankOutOfRange,
  IndexOutOfRange,
  InvalidPermutation,
  SyntaxError,
  DuplicateMember,
  KeyMismatch,
  TooLarge,
  DimensionMismatch,
  InvalidRoot,
  NotRadical,
  NotInV,
  RankMismatch,
  NotCentral,
  NotNested,
  RankTooLarge,
  IoError,
  Overflow,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MissingEmptySet: return "MissingEmptySet";
    case ErrorKind::MissingSingleton: return "MissingSingleton";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateMember: return "DuplicateMember";
    case ErrorKind::KeyMismatch: return "KeyMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidRoot: return "InvalidRoot";
    case ErrorKind::NotRadical: return "NotRadical";
    case ErrorKind::NotInV: return "NotInV";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Library-wide exception. `kind()` identifies the failure; `what()` carries
/// the human-readable detail (including a character position for syntax
/// errors, see `position()`).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::int64_t position = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::int64_t position_;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer subtraction overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer multiplication overflow");
  return r;
}

}  // namespace detail
}  // namespace eawg
