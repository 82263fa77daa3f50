#pragma once

#include <stdexcept>
#include <string>

namespace manifold_splines {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments, points off the manifold, unsupported combinations.
class invalid_input : public error {
 public:
  using error::error;
};

// Centers not unisolvent for the auxiliary space.
class assembly_error : public error {
 public:
  assembly_error(const std::string& what, int rank, int dim)
      : error(what), rank_(rank), dim_(dim) {}

  int rank() const { return rank_; }
  int dim() const { return dim_; }

 private:
  int rank_;
  int dim_;
};

class cpd_violation : public error {
 public:
  using error::error;
};

class spectrum_violation : public error {
 public:
  spectrum_violation(const std::string& what, int ell) : error(what), ell_(ell) {}

  int ell() const { return ell_; }

 private:
  int ell_;
};

class numerical_error : public error {
 public:
  numerical_error(const std::string& what, double condition)
      : error(what), condition_(condition) {}

  double condition() const { return condition_; }

 private:
  double condition_;
};

class insufficient_data : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace manifold_splines
