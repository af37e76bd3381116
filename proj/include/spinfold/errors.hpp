#pragma once

#include <stdexcept>
#include <string>

namespace spinfold {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a phase is requested for (nearly) orthogonal states.
class UndefinedPhaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BranchError : public std::runtime_error {
 public:
  BranchError(const std::string& what, double sample_time)
      : std::runtime_error(what), sample_time_(sample_time) {}
  double sample_time() const { return sample_time_; }

 private:
  double sample_time_;
};

class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinfold
