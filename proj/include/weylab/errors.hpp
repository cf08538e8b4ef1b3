#pragma once

#include <stdexcept>
#include <string>

namespace weylab {

// Input outside an operation's mathematical domain (negative mass, Re(w) <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure could not reach its documented accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The guidance field was queried at (or integrated into) a node of psi.
class NodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection endpoints carry the same label.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weylab
