#include "core/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"

namespace gre {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

void require_base(double beta) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("decoding base must satisfy beta > 1");
  }
}

}  // namespace

double decode_partial_sum(std::span<const Bit> bits, double beta) {
  require_base(beta);
  CompensatedSum acc;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    if (bits[n]) acc.add(std::pow(beta, -static_cast<double>(n)));
  }
  return acc.value();
}

double decode_partial_sum(const BitStream& bits, double beta) {
  return decode_partial_sum(std::span<const Bit>(bits.bits), beta);
}

std::vector<double> partial_sum_sequence(std::span<const Bit> bits, double beta) {
  require_base(beta);
  std::vector<double> out;
  out.reserve(bits.size());
  CompensatedSum acc;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    if (bits[n]) acc.add(std::pow(beta, -static_cast<double>(n)));
    out.push_back(acc.value());
  }
  return out;
}

double bias_term(std::size_t n_bits) {
  return 0.5 * std::pow(kPhi, 2.0 - static_cast<double>(n_bits));
}

DecodeResult decode_bias_corrected(const BitStream& bits) {
  const ParamVector& p = bits.params;
  const bool exact_q1 = bits.scheme == Scheme::Gre && p.get_or("alpha", 0.0) == 1.0 &&
                        p.get_or("nu1", 0.0) == 1.0 && p.get_or("nu2", 0.0) == 1.0 &&
                        p.get_or("noise_amp", 0.0) == 0.0 && !p.has_per_cycle();
  DecodeResult r;
  r.scheme = bits.scheme;
  r.bias_corrected = true;
  r.heuristic = !exact_q1;
  r.value = decode_partial_sum(bits, kPhi) + bias_term(bits.size());
  return r;
}

double error_formula(double u_n, double u_n1, std::size_t n) {
  return std::pow(kPhi, -static_cast<double>(n)) * (u_n + kPhi * u_n1);
}

double FixedPointValue::to_double() const {
  return std::ldexp(mantissa.convert_to<double>(), -frac_bits);
}

std::string FixedPointValue::to_base2() const {
  const bool negative = mantissa < 0;
  const BigInt mag = negative ? BigInt(-mantissa) : mantissa;
  const BigInt integer = mag >> frac_bits;
  const BigInt frac = mag - (integer << frac_bits);

  std::string int_digits;
  if (integer == 0) {
    int_digits = "0";
  } else {
    for (BigInt i = integer; i > 0; i >>= 1) int_digits.push_back(bit_test(i, 0) ? '1' : '0');
    std::reverse(int_digits.begin(), int_digits.end());
  }
  std::string out = negative ? "-" : "";
  out += int_digits;
  out += '.';
  for (int k = frac_bits - 1; k >= 0; --k) {
    out.push_back(bit_test(frac, static_cast<unsigned>(k)) ? '1' : '0');
  }
  return out;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative number");
  if (n < 2) return n;
  // Start above the root; the iteration then decreases monotonically.
  BigInt x = BigInt(1) << (msb(n) / 2 + 1);
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

std::vector<BigInt> golden_power_table(int frac_bits, std::size_t count) {
  if (frac_bits < 1) throw std::invalid_argument("golden_power_table needs frac_bits >= 1");
  std::vector<BigInt> table;
  table.reserve(count);
  const BigInt one = BigInt(1) << frac_bits;
  if (count > 0) table.push_back(one);
  if (count > 1) {
    // floor(2^B (sqrt5 - 1) / 2) = (floor(sqrt(5 * 4^B)) - 2^B) >> 1
    const BigInt root5 = isqrt(BigInt(5) << (2 * frac_bits));
    table.push_back((root5 - one) >> 1);
  }
  for (std::size_t n = 2; n < count; ++n) table.push_back(table[n - 2] - table[n - 1]);
  return table;
}

int min_requantize_bits(std::size_t n_bits) {
  const double digits = static_cast<double>(n_bits) * std::log2(kPhi);
  return std::max(8, static_cast<int>(std::ceil(digits)) + 8);
}

FixedPointValue requantize(const BitStream& bits, int frac_bits, RequantizeOptions options) {
  const std::size_t n = bits.size();
  if (frac_bits < min_requantize_bits(n)) {
    throw std::invalid_argument("requantize: B=" + std::to_string(frac_bits) + " below minimum " +
                                std::to_string(min_requantize_bits(n)) + " for N=" +
                                std::to_string(n));
  }
  const int guard = options.guard_bits >= 0 ? options.guard_bits : min_requantize_bits(n);
  const auto powers = golden_power_table(frac_bits + guard, n);

  BigInt acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (bits[k]) acc += powers[k];
  }
  return FixedPointValue{frac_bits, acc >> guard};
}

}  // namespace gre
