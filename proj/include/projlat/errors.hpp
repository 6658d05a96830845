#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace projlat {

class Projection;

/// Base class of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  NotInvertible(std::size_t block, double sigma_min)
      : Error("element is not invertible: block " + std::to_string(block) +
              " has smallest singular value " + std::to_string(sigma_min)),
        block_(block),
        sigma_min_(sigma_min) {}

  std::size_t block() const { return block_; }
  double sigma_min() const { return sigma_min_; }

 private:
  std::size_t block_;
  double sigma_min_;
};

class NotAProjection : public Error {
 public:
  using Error::Error;
};

class NotComplementary : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotLSOrthogonal : public Error {
 public:
  using Error::Error;
};

class NotAGraphProjection : public Error {
 public:
  using Error::Error;
};

class NotAFrame : public Error {
 public:
  using Error::Error;
};

class NotOrderThree : public Error {
 public:
  using Error::Error;
};

class FrameAssemblyFailed : public Error {
 public:
  using Error::Error;
};

class SlotMismatch : public Error {
 public:
  using Error::Error;
};

class IntertwiningFailure : public Error {
 public:
  IntertwiningFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NotRingIso : public Error {
 public:
  using Error::Error;
};

class NotRealLinear : public Error {
 public:
  using Error::Error;
};

class DegenerateWitness : public Error {
 public:
  using Error::Error;
};

/// Carries the witness pair (p, q) on which pq = 0 ⇔ Φ(p)Φ(q) = 0 fails.
class OrthogonalityNotPreserved : public Error {
 public:
  OrthogonalityNotPreserved(const std::string& what, std::shared_ptr<const Projection> p,
                            std::shared_ptr<const Projection> q)
      : Error(what), p_(std::move(p)), q_(std::move(q)) {}
  const Projection& witness_p() const { return *p_; }
  const Projection& witness_q() const { return *q_; }

 private:
  std::shared_ptr<const Projection> p_;
  std::shared_ptr<const Projection> q_;
};

class NotInvertibleProvenance : public Error {
 public:
  using Error::Error;
};

class BadSplit : public Error {
 public:
  using Error::Error;
};

/// Raised when a numerical step produces internally inconsistent ranks.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace projlat
