#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "admg/node_set.hpp"

namespace admg {

enum class ErrorKind {
  // graph validation
  SelfEdge,
  DirectedCycle,
  DoubleArrow,
  LineBiarrowMix,
  DoubleEdgeBothDirectedOrSame,
  NodeOutOfRange,
  // queries and generators
  MalformedQuery,
  UnsupportedDialect,
  InconsistentOrdering,
  NodeNotInSet,
  NotAnAmpCg,
  // sem
  ErrorNodeInZ,
  SingularSubmatrix,
  InvalidSem,
  // docalc
  OverlappingSets,
  MalformedScript,
  // learner
  ProblemTooLarge,
  NoFeasibleModel,
  InvalidProblem,
  // text formats
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. `kind()` identifies the
/// failure; `witness()` carries a node sequence where one is meaningful
/// (the cycle for DirectedCycle).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<NodeId> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<NodeId>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<NodeId> witness_;
};

}  // namespace admg
