#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adelic {

/// Every failure the library reports carries one of these kinds so callers
/// (the certifier, the CLI) can map it to a verdict or an exit code.
enum class ErrorKind {
  NotPrime,
  ReducibleModulus,
  DegreeTooLarge,
  EvenModulus,
  OddModulus,
  NotInvertible,
  Reducible,
  NonSquarefreeDiscriminant,
  WrongSignature,
  RamifiedUnsupported,
  ZeroElement,
  SingularModel,
  MinimalityUnknown,
  BadReduction,
  FieldTooLarge,
  HasseViolation,
  CapExceeded,
  EvidenceMismatch,
  NotSemistable,
  MissingFieldHypotheses,
  PrimeTooSmall,
  MissingPrerequisite,
  DuplicateDegreeOnePrime,
  UnknownPlace,
  NoSamplePlaces,
  InconsistentCharacter,
  Overflow,
  Config,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adelic
