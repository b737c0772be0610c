#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/quantizers.hpp"

namespace gre {

enum class Scheme { Pcm, Beta, SigmaDelta1, SigmaDeltaK, Gre, Polynacci };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Aggregate parameter vector of an encoder, plus optional per-cycle
/// overrides for encoders whose components drift from one clock cycle to the
/// next.
class ParamVector {
 public:
  ParamVector() = default;
  ParamVector(std::initializer_list<std::pair<const std::string, double>> values)
      : values_(values) {}

  void set(const std::string& name, double value) { values_[name] = value; }
  bool has(std::string_view name) const;
  double get(std::string_view name) const;  // throws std::out_of_range
  double get_or(std::string_view name, double fallback) const;

  // Value in effect at `cycle`: the per-cycle entry when one exists.
  double at_cycle(std::string_view name, std::size_t cycle) const;

  void set_per_cycle(const std::string& name, std::vector<double> values);
  bool has_per_cycle() const noexcept { return !per_cycle_.empty(); }
  const std::vector<double>* per_cycle(std::string_view name) const;

  // Every per-cycle sequence must cover exactly n_bits cycles.
  void check_cycles(std::size_t n_bits) const;

  const std::map<std::string, double, std::less<>>& values() const noexcept { return values_; }
  const std::map<std::string, std::vector<double>, std::less<>>& per_cycle_values() const noexcept {
    return per_cycle_;
  }

  bool operator==(const ParamVector&) const = default;

 private:
  std::map<std::string, double, std::less<>> values_;
  std::map<std::string, std::vector<double>, std::less<>> per_cycle_;
};

/// First N output bits of an encoder together with what produced them.
struct BitStream {
  Scheme scheme = Scheme::Gre;
  ParamVector params;
  std::vector<Bit> bits;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return bits.size(); }
  Bit operator[](std::size_t n) const { return bits[n]; }
  bool has_warning(std::string_view w) const;
};

struct EscapePolicy {
  double bound = 100.0;
  bool stop_early = false;
};

/// State history of a scalar recursion of order k. State n is the window
/// (u_n, ..., u_{n+k-1}); a run of N cycles stores N + k scalars and N + 1
/// states.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::size_t order) : order_(order) {}

  std::size_t order() const noexcept { return order_; }
  std::size_t state_count() const noexcept {
    return scalars_.size() >= order_ ? scalars_.size() - order_ + 1 : 0;
  }
  std::span<const double> state(std::size_t n) const {
    return std::span<const double>(scalars_).subspan(n, order_);
  }
  const std::vector<double>& scalars() const noexcept { return scalars_; }
  double max_abs() const noexcept;

  bool escaped() const noexcept { return escape_index_.has_value(); }
  // Index n of the first scalar u_n with |u_n| above the escape bound.
  std::optional<std::size_t> escape_index() const noexcept { return escape_index_; }
  // Set when the run stopped early; value is the number of cycles executed.
  std::optional<std::size_t> truncated_at() const noexcept { return truncated_at_; }

  void push(double u, double bound);
  void mark_truncated(std::size_t cycles) { truncated_at_ = cycles; }
  void reserve(std::size_t n) { scalars_.reserve(n); }

 private:
  std::size_t order_ = 1;
  std::vector<double> scalars_;
  std::optional<std::size_t> escape_index_;
  std::optional<std::size_t> truncated_at_;
};

struct Encoding {
  BitStream bits;
  Trajectory trajectory;
};

struct StepOutput {
  Bit bit;
  double next;  // u_{n+k}
};

/// Runs the algorithmic encoder b_n = Q(x, u_n), u_{n+1} = F(x, u_n) for
/// scalar recursions of order k. `step(window, n)` sees the current window
/// (u_n..u_{n+k-1}) and returns b_n and u_{n+k}.
template <class Step>
Encoding run_recursion(Scheme scheme, ParamVector params, std::span<const double> initial,
                       std::size_t n_bits, const EscapePolicy& escape, Step&& step) {
  Encoding out;
  out.bits.scheme = scheme;
  out.bits.params = std::move(params);
  out.bits.bits.reserve(n_bits);
  Trajectory traj(initial.size());
  traj.reserve(n_bits + initial.size());
  for (double u : initial) traj.push(u, escape.bound);

  std::vector<double> window(initial.begin(), initial.end());
  const std::size_t k = window.size();
  for (std::size_t n = 0; n < n_bits; ++n) {
    if (escape.stop_early && traj.escaped()) {
      traj.mark_truncated(n);
      break;
    }
    const StepOutput s = step(std::span<const double>(window), n);
    out.bits.bits.push_back(s.bit);
    for (std::size_t i = 0; i + 1 < k; ++i) window[i] = window[i + 1];
    window[k - 1] = s.next;
    traj.push(s.next, escape.bound);
  }
  out.trajectory = std::move(traj);
  return out;
}

// `count` equally spaced points covering [lo, hi] (both ends included).
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

// Throws std::out_of_range naming the scheme's admissible input interval.
void require_input_range(double x, double lo, double hi, bool hi_open, std::string_view scheme);

}  // namespace gre
