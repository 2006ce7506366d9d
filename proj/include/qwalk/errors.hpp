#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonOrthonormalInput : public Error {
 public:
  NonOrthonormalInput(int first, int second, double inner_product);
  int first() const { return first_; }
  int second() const { return second_; }
  double inner_product() const { return inner_product_; }

 private:
  int first_;
  int second_;
  double inner_product_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfGrid : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InconsistentAmplitudes : public Error {
 public:
  using Error::Error;
};

class NotPowerOfTwo : public Error {
 public:
  using Error::Error;
};

class NotBipartite : public Error {
 public:
  using Error::Error;
};

class NonFrontierBlock : public Error {
 public:
  using Error::Error;
};

class NonUnitaryBlock : public Error {
 public:
  using Error::Error;
};

/// Malformed or semantically invalid input file / parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace qwalk
