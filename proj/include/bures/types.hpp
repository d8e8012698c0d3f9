#ifndef BURES_TYPES_HPP
#define BURES_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bures {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

// One rank/clipping policy shared by every operation.  Rank decisions use
// rel_rank_cutoff * (largest singular value), falling back to abs_floor when
// the matrix is near zero; the PSD clipping window mirrors the rank cutoff.
struct TolerancePolicy {
  double rel_rank_cutoff = 1e-10;
  double abs_floor = 1e-14;

  double cutoff(double scale) const {
    double c = rel_rank_cutoff * scale;
    return c > abs_floor ? c : abs_floor;
  }
};

// Exit-code contract: 2 = parse/usage, 3 = math domain, 4 = internal
// inconsistency.  Every library error carries its class.
enum class ErrorClass { parse = 2, domain = 3, inconsistent = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

#define BURES_DEFINE_ERROR(NAME, CLASS)                      \
  class NAME : public Error {                                \
   public:                                                   \
    explicit NAME(const std::string& msg)                    \
        : Error(ErrorClass::CLASS, std::string(#NAME ": ") + msg) {} \
  }

BURES_DEFINE_ERROR(ParseError, parse);
BURES_DEFINE_ERROR(UnknownSuite, parse);
BURES_DEFINE_ERROR(NonHermitianInput, domain);
BURES_DEFINE_ERROR(NotPositive, domain);
BURES_DEFINE_ERROR(NotProjection, domain);
BURES_DEFINE_ERROR(NotFaithful, domain);
BURES_DEFINE_ERROR(AlgebraMismatch, domain);
BURES_DEFINE_ERROR(SingularOmega, domain);
BURES_DEFINE_ERROR(SingularDensity, domain);
BURES_DEFINE_ERROR(BadIsometry, domain);
BURES_DEFINE_ERROR(DomainError, domain);
BURES_DEFINE_ERROR(InconsistentCriteria, inconsistent);
BURES_DEFINE_ERROR(InternalInconsistency, inconsistent);

#undef BURES_DEFINE_ERROR

}  // namespace bures

#endif  // BURES_TYPES_HPP
