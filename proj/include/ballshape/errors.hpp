#ifndef BALLSHAPE_ERRORS_HPP
#define BALLSHAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ballshape {

// Base class for all toolkit errors. Subclasses split into two families
// used by the CLI exit-code mapping: I/O and parse failures (exit 2)
// versus domain failures on well-formed inputs (exit 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- exit code 2: bad input files ---------------------------------------

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

// --- exit code 1: domain errors ------------------------------------------

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg)
      : Error("domain error: " + msg) {}
};

class TopologyError : public Error {
 public:
  explicit TopologyError(const std::string& msg)
      : Error("topology error: " + msg) {}
};

class DegenerateFaceError : public Error {
 public:
  explicit DegenerateFaceError(const std::string& msg)
      : Error("degenerate face: " + msg) {}
};

class ZeroNormalError : public Error {
 public:
  explicit ZeroNormalError(const std::string& msg)
      : Error("zero normal: " + msg) {}
};

class InsufficientNeighborsError : public Error {
 public:
  explicit InsufficientNeighborsError(const std::string& msg)
      : Error("insufficient neighbors: " + msg) {}
};

class IllConditionedFitError : public Error {
 public:
  explicit IllConditionedFitError(const std::string& msg)
      : Error("ill-conditioned fit: " + msg) {}
};

class NonSpdError : public Error {
 public:
  explicit NonSpdError(const std::string& msg)
      : Error("first fundamental form not SPD: " + msg) {}
};

class TangentDegenerateError : public Error {
 public:
  explicit TangentDegenerateError(const std::string& msg)
      : Error("tangent degenerate: " + msg) {}
};

class RayMissError : public Error {
 public:
  explicit RayMissError(const std::string& msg) : Error("ray miss: " + msg) {}
};

class InsideTestAmbiguousError : public Error {
 public:
  explicit InsideTestAmbiguousError(const std::string& msg)
      : Error("inside test ambiguous: " + msg) {}
};

class ExpressionError : public Error {
 public:
  explicit ExpressionError(const std::string& msg)
      : Error("expression error: " + msg) {}
};

class NoCertifiableEpsilonError : public Error {
 public:
  explicit NoCertifiableEpsilonError(const std::string& msg)
      : Error("no certifiable epsilon: " + msg) {}
};

class InfeasibleConstraintsError : public Error {
 public:
  explicit InfeasibleConstraintsError(const std::string& msg)
      : Error("infeasible constraints: " + msg) {}
};

class InitialMeshNotCertifiedError : public Error {
 public:
  explicit InitialMeshNotCertifiedError(const std::string& msg)
      : Error("initial mesh not certified: " + msg) {}
};

class StalledError : public Error {
 public:
  explicit StalledError(const std::string& msg) : Error("stalled: " + msg) {}
};

class ElementNotCertifiedError : public Error {
 public:
  explicit ElementNotCertifiedError(const std::string& msg)
      : Error("sequence element not certified: " + msg) {}
};

}  // namespace ballshape

#endif  // BALLSHAPE_ERRORS_HPP
