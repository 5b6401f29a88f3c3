#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

/// Division by an octonion whose norm is below tolerance.
struct ZeroDivisor : std::domain_error {
  using std::domain_error::domain_error;
};

/// One of the algebra's inner-product identities failed beyond tolerance.
/// Signals a broken multiplication table, never expected in practice.
struct IdentityViolation : std::runtime_error {
  IdentityViolation(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
  double residual;
};

struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotOrthogonal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroVector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotUnit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotOnLine : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotOrthonormalBasis : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The cQ factorization certificate failed. The underlying statement is a
/// theorem, so this signals an implementation bug.
struct LemmaViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadStructure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadIndex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConstraintViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Commutation certificates absent: the eigenvalue parity argument does not
/// apply to the given frame.
struct CertificatesAbsent : std::runtime_error {
  CertificatesAbsent(const std::string& what, double c1, double c2)
      : std::runtime_error(what), commutator1(c1), commutator2(c2) {}
  double commutator1;
  double commutator2;
};

struct DegenerateGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeEigenvalue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cayley
