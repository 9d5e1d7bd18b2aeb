#include "geamkit/error.hpp"

#include <sstream>

namespace geamkit {

PositivityError::PositivityError(int frame, int element, double min_eigenvalue)
    : Error([&] {
        std::ostringstream os;
        os << "effect P[" << frame << "][" << element
           << "] is not positive semidefinite: min eigenvalue " << min_eigenvalue;
        return os.str();
      }()),
      frame_(frame),
      element_(element),
      min_eigenvalue_(min_eigenvalue) {}

std::string Violation::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << relation;
  if (!indices.empty()) {
    os << " at (";
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
    os << ")";
  }
  os << ": measured " << measured << ", expected " << expected;
  return os.str();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
        std::ostringstream os;
        os << violations.size() << " relation(s) violated";
        if (!violations.empty()) os << "; first: " << violations.front().describe();
        return os.str();
      }()),
      violations_(std::move(violations)) {}

}  // namespace geamkit
