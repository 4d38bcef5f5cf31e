#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pomodel {

/// Base class for every error the library raises. `kind()` is a stable
/// identifier that the CLI and the JSON reports surface verbatim.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define POMODEL_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &message) : Error(#Name, message) {}       \
  }

POMODEL_DEFINE_ERROR(CycleError);
POMODEL_DEFINE_ERROR(UnknownElement);
POMODEL_DEFINE_ERROR(DuplicateElement);
POMODEL_DEFINE_ERROR(OracleBoundExceeded);
POMODEL_DEFINE_ERROR(BadChainIndex);
POMODEL_DEFINE_ERROR(InvalidChainPartition);
POMODEL_DEFINE_ERROR(NotTotallyOrdered);
POMODEL_DEFINE_ERROR(IndexGap);
POMODEL_DEFINE_ERROR(EmptyProcess);
POMODEL_DEFINE_ERROR(InvalidLabel);
POMODEL_DEFINE_ERROR(NotConsistent);
POMODEL_DEFINE_ERROR(NotWidthAntichain);
POMODEL_DEFINE_ERROR(BadMarking);
POMODEL_DEFINE_ERROR(InternalConsistencyError);
POMODEL_DEFINE_ERROR(ParseError);
POMODEL_DEFINE_ERROR(SchemaError);
POMODEL_DEFINE_ERROR(KindMismatch);
POMODEL_DEFINE_ERROR(PredicateError);

#undef POMODEL_DEFINE_ERROR

/// Raised when an operation needs a width-extensible poset. Carries the
/// size-at-most-two antichain that cannot be extended.
class NotWidthExtensible : public Error {
public:
  NotWidthExtensible(const std::string &message,
                     std::vector<std::string> witness)
      : Error("NotWidthExtensible", message), witness_(std::move(witness)) {}

  const std::vector<std::string> &witness() const noexcept { return witness_; }

private:
  std::vector<std::string> witness_;
};

} // namespace pomodel
