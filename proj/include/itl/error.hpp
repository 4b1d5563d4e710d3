#pragma once

#include <stdexcept>
#include <string>

namespace itl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A representation descriptor violates its type invariants.
class MalformedSpec : public Error {
 public:
  explicit MalformedSpec(const std::string& what) : Error("malformed spec: " + what) {}
};

/// A generated stream exceeded its evaluation budget or the representable range.
class ProgramDivergence : public Error {
 public:
  explicit ProgramDivergence(const std::string& what) : Error("program divergence: " + what) {}
};

/// The operation is exact only on ultimately periodic inputs.
class FragmentUnsupported : public Error {
 public:
  explicit FragmentUnsupported(const std::string& what) : Error("fragment unsupported: " + what) {}
};

class UnknownId : public Error {
 public:
  explicit UnknownId(const std::string& id) : Error("unknown id: " + id) {}
};

class BadParams : public Error {
 public:
  explicit BadParams(const std::string& what) : Error("bad params: " + what) {}
};

class TypeMismatch : public Error {
 public:
  explicit TypeMismatch(const std::string& what) : Error("type mismatch: " + what) {}
};

}  // namespace itl
