#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace assouad {

/// Base of every error raised by the library. The CLI maps these to exit
/// code 3 (input or computation rejected) unless they are usage errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Metric validation

class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  NonFiniteEntry(std::size_t i, std::size_t j)
      : Error("non-finite distance at (" + std::to_string(i) + "," + std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

class NonZeroDiagonal : public Error {
 public:
  explicit NonZeroDiagonal(std::size_t i)
      : Error("non-zero diagonal entry at (" + std::to_string(i) + "," + std::to_string(i) + ")"),
        i(i) {}
  std::size_t i;
};

class NegativeDistance : public Error {
 public:
  NegativeDistance(std::size_t i, std::size_t j)
      : Error("negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

class ZeroOffDiagonal : public Error {
 public:
  ZeroOffDiagonal(std::size_t i, std::size_t j)
      : Error("zero distance between distinct points (" + std::to_string(i) + "," +
              std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

class AsymmetryError : public Error {
 public:
  AsymmetryError(std::size_t i, std::size_t j)
      : Error("asymmetric distances at (" + std::to_string(i) + "," + std::to_string(j) + ")"),
        i(i), j(j) {}
  std::size_t i, j;
};

/// d[i][k] > d[i][j] + d[j][k] + tol; `deficit` is d[i][k] - d[i][j] - d[j][k].
class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k, double deficit)
      : Error("triangle inequality violated: d(" + std::to_string(i) + "," + std::to_string(k) +
              ") > d(" + std::to_string(i) + "," + std::to_string(j) + ") + d(" +
              std::to_string(j) + "," + std::to_string(k) + "), deficit " +
              std::to_string(deficit)),
        i(i), j(j), k(k), deficit(deficit) {}
  std::size_t i, j, k;
  double deficit;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonPositiveScale : public InvalidArgument {
 public:
  explicit NonPositiveScale(double h)
      : InvalidArgument("scale factor must be positive, got " + std::to_string(h)) {}
};

class EmptySubset : public InvalidArgument {
 public:
  EmptySubset() : InvalidArgument("subset is empty") {}
};

class DifferentBaseSpace : public InvalidArgument {
 public:
  DifferentBaseSpace() : InvalidArgument("subsets belong to different base spaces") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Computation limits and failed certificates

class ExactLimitExceeded : public Error {
 public:
  ExactLimitExceeded(std::size_t card, std::size_t limit)
      : Error("exact computation limited to " + std::to_string(limit) + " points, got " +
              std::to_string(card)),
        card(card), limit(limit) {}
  std::size_t card, limit;
};

class NotSurjective : public Error {
 public:
  explicit NotSurjective(char side)
      : Error(std::string("relation does not cover every point of ") + side), side(side) {}
  char side;  // 'X' or 'Y'
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(int condition, std::size_t a, std::size_t b)
      : Error("approximation condition " + std::to_string(condition) + " fails at (" +
              std::to_string(a) + "," + std::to_string(b) + ")"),
        condition(condition), a(a), b(b) {}
  int condition;
  std::size_t a, b;
};

class NoEligibleSubset : public Error {
 public:
  NoEligibleSubset() : Error("no subset in the pool reaches the minimum diameter/separation ratio") {}
};

class NoEligibleScalePair : public Error {
 public:
  NoEligibleScalePair() : Error("no (ball, scale) pair reaches the minimum ratio") {}
};

class DiameterBoundViolated : public Error {
 public:
  explicit DiameterBoundViolated(std::size_t i)
      : Error("telescope component " + std::to_string(i) + " has diameter above 2^-" +
              std::to_string(i)),
        index(i) {}
  std::size_t index;
};

class LevelTooLarge : public Error {
 public:
  explicit LevelTooLarge(int level)
      : Error("Cantor level " + std::to_string(level) + " exceeds the supported maximum 14"),
        level(level) {}
  int level;
};

class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph() : Error("graph is not connected") {}
};

class BasePointMissing : public Error {
 public:
  BasePointMissing() : Error("subset does not contain the base point") {}
};

class SingletonSubset : public Error {
 public:
  SingletonSubset() : Error("subset has fewer than two points") {}
};

class BucketUnrealizable : public Error {
 public:
  explicit BucketUnrealizable(std::size_t i)
      : Error("no dictionary set realizes the bucket of block " + std::to_string(i)), index(i) {}
  std::size_t index;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

class TruncationTooLarge : public Error {
 public:
  using Error::Error;
};

class PrerequisiteNotMet : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::size_t i, std::size_t k)
      : Error("ball-approximation hypothesis violated at i=" + std::to_string(i) +
              ", k=" + std::to_string(k)),
        i(i), k(k) {}
  std::size_t i, k;
};

}  // namespace assouad
