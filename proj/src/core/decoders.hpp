#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/framework.hpp"

namespace gre {

using BigInt = boost::multiprecision::cpp_int;

// Running sum with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// sum_n b_n beta^{-n}, accumulated in increasing n. Throws
/// std::invalid_argument unless beta > 1.
double decode_partial_sum(std::span<const Bit> bits, double beta);
double decode_partial_sum(const BitStream& bits, double beta);

// Element N-1 is the N-term decode, for N = 1..bits.size().
std::vector<double> partial_sum_sequence(std::span<const Bit> bits, double beta);

struct DecodeResult {
  double value = 0.0;
  Scheme scheme = Scheme::Gre;
  bool bias_corrected = false;
  // The constant offset is exact only for exact Q_1 streams (alpha = 1,
  // nu1 = nu2 = 1, no noise); otherwise it is applied as a heuristic.
  bool heuristic = false;
};

// Mean of the N-term error of exact Q_1 encoding over x ~ U[0,1]:
// phi^{-N} (1 + phi) / 2 = phi^{-N+2} / 2.
double bias_term(std::size_t n_bits);

DecodeResult decode_bias_corrected(const BitStream& bits);

// phi^{-N} (u_N + phi u_{N+1})
double error_formula(double u_n, double u_n1, std::size_t n);

/// Signed fixed-point number mantissa * 2^{-frac_bits}.
struct FixedPointValue {
  int frac_bits = 0;
  BigInt mantissa;

  double to_double() const;
  // "<integer part in base 2>.<frac_bits binary digits>"
  std::string to_base2() const;
};

// floor(sqrt(n)) by Newton iteration on integers.
BigInt isqrt(const BigInt& n);

// phi_0 .. phi_{count-1} at `frac_bits` fractional bits:
// phi_0 = 2^B, phi_1 = floor(2^B / phi), phi_n = phi_{n-2} - phi_{n-1}.
std::vector<BigInt> golden_power_table(int frac_bits, std::size_t count);

// Smallest admissible output width for an N-bit stream: ceil(N log2 phi) + 8.
int min_requantize_bits(std::size_t n_bits);

struct RequantizeOptions {
  // Extra working bits below the output LSB. Negative selects
  // ceil(N log2 phi) + 8, which absorbs the phi^n growth of the rounding
  // error in the phi_n recursion. Zero runs the recursion at exactly B bits.
  int guard_bits = -1;
};

/// Digital requantization of a golden-ratio bitstream into base 2 using only
/// integer additions: x_N = sum_{n<N} b_n phi_n, truncated to B fractional
/// bits. Throws std::invalid_argument if B < min_requantize_bits(N).
FixedPointValue requantize(const BitStream& bits, int frac_bits, RequantizeOptions options = {});

}  // namespace gre
