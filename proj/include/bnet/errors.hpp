#pragma once

#include <stdexcept>
#include <string>

namespace bnet {

enum class Errc {
  DivisionByZero,
  MalformedInput,
  Disconnected,
  UnknownEdge,
  OutOfDomain,
  InvalidCdf,
  EmptySketch,
  AdjacentAtoms,
  InterpolationNotMonotone,
  NotATree,
  NotALine,
  MultipleCaptive,
  NonGeneric,
  NonUnitSpokes,
  ConstructionBroken,
  EmptySubset,
  PreconditionViolated,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace bnet
