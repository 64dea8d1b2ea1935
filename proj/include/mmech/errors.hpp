#pragma once

#include <stdexcept>
#include <string>

namespace mmech {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance violates its own invariants (owner range, ids, node indices...).
struct InvalidInstance : Error {
  using Error::Error;
};

/// Solution references edge ids that do not exist in the instance.
struct MalformedSolution : Error {
  using Error::Error;
};

struct NoFeasibleSolution : Error {
  using Error::Error;
};

/// Brute-force oracle refused an instance larger than its enumeration budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// Input is not a CHAIN / EXPANDEDCHAIN block structure.
struct StructureError : Error {
  using Error::Error;
};

/// Removing every edge of `agent` leaves no feasible solution.
struct PivotalInfeasible : Error {
  explicit PivotalInfeasible(int agent)
      : Error("agent " + std::to_string(agent) + " is pivotal-infeasible"), agent(agent) {}
  int agent;
};

/// An allocation algorithm under test returned an infeasible solution.
struct FeasibilityError : Error {
  using Error::Error;
};

/// A stability perturbation could not be made strict on every edge.
struct NonStrictPerturbation : Error {
  using Error::Error;
};

/// Instance / report parse failure; `field` names the offending JSON path.
struct ParseError : Error {
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field(std::move(field)) {}
  std::string field;
};

}  // namespace mmech
