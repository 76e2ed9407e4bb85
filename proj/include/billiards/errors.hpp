#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

enum class Side { left, right };

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Billiard map singularities. Orbits through these are reported, never perturbed.
class TangentialCollision : public Error {
 public:
  using Error::Error;
};

class CornerHit : public Error {
 public:
  using Error::Error;
};

/// The ray left the tracked boundary pieces through one of the untracked gaps.
class NoCollision : public Error {
 public:
  NoCollision(const std::string& what, Side side) : Error(what), side_(side) {}

  Side side() const { return side_; }

 private:
  Side side_;
};

class NoMarker : public Error {
 public:
  using Error::Error;
};

class BlockTooLong : public Error {
 public:
  using Error::Error;
};

class UntrackedCollision : public Error {
 public:
  using Error::Error;
};

class TargetUnreachable : public Error {
 public:
  using Error::Error;
};

class BisectionStall : public Error {
 public:
  BisectionStall(const std::string& what, int block) : Error(what), block_(block) {}

  /// Index of the itinerary block whose refinement stalled (-1 if unknown).
  int block() const { return block_; }

 private:
  int block_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class ShapeUnsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace billiards
