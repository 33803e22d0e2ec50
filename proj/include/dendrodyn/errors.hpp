#pragma once

#include <stdexcept>
#include <string>

namespace dendrodyn {

// Malformed trees, points, subtrees or maps.
class StructuralError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Piece-count or period caps exceeded.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A bounded search ran out before the question was settled.
class InconclusiveError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A mathematical invariant that must hold was observed to fail.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace dendrodyn
