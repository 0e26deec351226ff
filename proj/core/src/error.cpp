#include "ocs/error.hpp"

namespace ocs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyStack: return "EmptyStack";
    case ErrorCode::FormMismatch: return "FormMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::DuplicateQuality: return "DuplicateQuality";
    case ErrorCode::QualityNotPresent: return "QualityNotPresent";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::CyclicParent: return "CyclicParent";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DuplicatePrimaryName: return "DuplicatePrimaryName";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NotUnderCardAction: return "NotUnderCardAction";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::UnknownCard: return "UnknownCard";
    case ErrorCode::CardNotAvailable: return "CardNotAvailable";
    case ErrorCode::DuplicateStartCard: return "DuplicateStartCard";
    case ErrorCode::CyclicList: return "CyclicList";
    case ErrorCode::MalformedTerminal: return "MalformedTerminal";
    case ErrorCode::MultipleHeads: return "MultipleHeads";
    case ErrorCode::DanglingLink: return "DanglingLink";
    case ErrorCode::NodeNotInList: return "NodeNotInList";
    case ErrorCode::NotImplemented: return "NotImplemented";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::EmptyStartState: return "EmptyStartState";
    case ErrorCode::ParticipantMismatch: return "ParticipantMismatch";
    case ErrorCode::UnknownCardInAssertion: return "UnknownCardInAssertion";
    case ErrorCode::NameTooShort: return "NameTooShort";
    case ErrorCode::EmptyNameSet: return "EmptyNameSet";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::CatalogInvalid: return "CatalogInvalid";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ocs
