#pragma once

#include <stdexcept>
#include <string>

namespace oscnet {

// Input/config problems: bad files, bad parameters, violated preconditions.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Edge-list / JSON parse failures; message carries the line number.
class ParseError : public ValidationError {
 public:
  explicit ParseError(const std::string& what) : ValidationError(what) {}
};

// Laplacian spectrum has eigenvalues with significant imaginary parts.
class NonRealSpectrumError : public std::runtime_error {
 public:
  explicit NonRealSpectrumError(const std::string& what)
      : std::runtime_error(what) {}
};

// P * diag(lambda) * P^-1 fails to reconstruct the input within tolerance.
class IllConditionedBasisError : public std::runtime_error {
 public:
  explicit IllConditionedBasisError(const std::string& what)
      : std::runtime_error(what) {}
};

// An eigenvalue is negative beyond tolerance where semi-positivity is required.
class NegativeEigenvalueError : public std::runtime_error {
 public:
  explicit NegativeEigenvalueError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace oscnet
