#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace nuctrace {

// Neumaier variant of Kahan summation. Adding terms in a fixed order gives
// bit-identical results run to run.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double term) {
    add(term);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> term) {
    re_.add(term.real());
    im_.add(term.imag());
  }
  CompensatedComplexSum& operator+=(std::complex<double> term) {
    add(term);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline double compensated_sum(std::span<const double> terms) {
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

inline std::complex<double> compensated_sum(std::span<const std::complex<double>> terms) {
  CompensatedComplexSum s;
  for (auto t : terms) s.add(t);
  return s.value();
}

}  // namespace nuctrace
