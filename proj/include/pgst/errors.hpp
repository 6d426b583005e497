#pragma once

#include <stdexcept>
#include <string>

namespace pgst {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed shapes: non-square or asymmetric matrices, bad indices, bad partitions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotLinearInParam : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotCospectral : public DomainError {
 public:
  using DomainError::DomainError;
};

// 0 is an eigenvalue of G \ {u,v}; plain path gluing cannot separate the spectra.
class ZeroEigenvalueObstruction : public DomainError {
 public:
  using DomainError::DomainError;
};

// A consistency check between two exact computations failed. Always a bug upstream.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgst
