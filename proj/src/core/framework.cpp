#include "core/framework.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace gre {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 6> kSchemeNames{{
    {Scheme::Pcm, "pcm"},
    {Scheme::Beta, "beta"},
    {Scheme::SigmaDelta1, "sd1"},
    {Scheme::SigmaDeltaK, "sdk"},
    {Scheme::Gre, "gre"},
    {Scheme::Polynacci, "poly"},
}};

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  for (const auto& [s, name] : kSchemeNames) {
    if (s == scheme) return name;
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (const auto& [s, n] : kSchemeNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

bool ParamVector::has(std::string_view name) const { return values_.find(name) != values_.end(); }

double ParamVector::get(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw std::out_of_range("missing parameter '" + std::string(name) + "'");
  return it->second;
}

double ParamVector::get_or(std::string_view name, double fallback) const {
  auto it = values_.find(name);
  return it == values_.end() ? fallback : it->second;
}

double ParamVector::at_cycle(std::string_view name, std::size_t cycle) const {
  if (auto it = per_cycle_.find(name); it != per_cycle_.end()) {
    return it->second.at(cycle);
  }
  return get(name);
}

void ParamVector::set_per_cycle(const std::string& name, std::vector<double> values) {
  per_cycle_[name] = std::move(values);
}

const std::vector<double>* ParamVector::per_cycle(std::string_view name) const {
  auto it = per_cycle_.find(name);
  return it == per_cycle_.end() ? nullptr : &it->second;
}

void ParamVector::check_cycles(std::size_t n_bits) const {
  for (const auto& [name, seq] : per_cycle_) {
    if (seq.size() != n_bits) {
      throw std::invalid_argument("per-cycle sequence '" + name + "' has " +
                                  std::to_string(seq.size()) + " entries, expected " +
                                  std::to_string(n_bits));
    }
  }
}

bool BitStream::has_warning(std::string_view w) const {
  return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

double Trajectory::max_abs() const noexcept {
  double m = 0.0;
  for (double u : scalars_) m = std::max(m, std::abs(u));
  return m;
}

void Trajectory::push(double u, double bound) {
  if (!escape_index_ && !(std::abs(u) <= bound)) escape_index_ = scalars_.size();
  scalars_.push_back(u);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

void require_input_range(double x, double lo, double hi, bool hi_open, std::string_view scheme) {
  const bool ok = x >= lo && (hi_open ? x < hi : x <= hi);
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << scheme << ": input x=" << x << " outside [" << lo << ", " << hi << (hi_open ? ")" : "]");
    throw std::out_of_range(msg.str());
  }
}

}  // namespace gre
