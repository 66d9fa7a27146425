#include "adelic/error.hpp"

namespace adelic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::EvenModulus: return "EvenModulus";
    case ErrorKind::OddModulus: return "OddModulus";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::NonSquarefreeDiscriminant: return "NonSquarefreeDiscriminant";
    case ErrorKind::WrongSignature: return "WrongSignature";
    case ErrorKind::RamifiedUnsupported: return "RamifiedUnsupported";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::SingularModel: return "SingularModel";
    case ErrorKind::MinimalityUnknown: return "MinimalityUnknown";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::HasseViolation: return "HasseViolation";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EvidenceMismatch: return "EvidenceMismatch";
    case ErrorKind::NotSemistable: return "NotSemistable";
    case ErrorKind::MissingFieldHypotheses: return "MissingFieldHypotheses";
    case ErrorKind::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorKind::MissingPrerequisite: return "MissingPrerequisite";
    case ErrorKind::DuplicateDegreeOnePrime: return "DuplicateDegreeOnePrime";
    case ErrorKind::UnknownPlace: return "UnknownPlace";
    case ErrorKind::NoSamplePlaces: return "NoSamplePlaces";
    case ErrorKind::InconsistentCharacter: return "InconsistentCharacter";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace adelic
