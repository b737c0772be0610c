#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "core/framework.hpp"
#include "core/invariant_set.hpp"
#include "core/workbench.hpp"

namespace gre {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {scheme, params, n_bits, bits: "0101...", warnings[, per_cycle]}
nlohmann::json to_json(const BitStream& bits);
BitStream bitstream_from_json(const nlohmann::json& j);  // throws ParseError
BitStream bitstream_from_string(std::string_view text);  // throws ParseError

// Header "n,u_n", one row per scalar state u_n.
std::string trajectory_csv(const Trajectory& trajectory);

nlohmann::json to_json(const InvariantRect& rect);

// With alpha: bounds plus nu_min/nu_max at alpha (and the robustness margin
// when alpha is interior). Without: the bounds and a table of `samples`
// alpha values spanning [alpha_min, alpha_max].
nlohmann::json region_json(const ParamRegion& region, std::optional<double> alpha,
                           std::size_t samples = 41);

nlohmann::json to_json(const InvarianceReport& report);

// 12 significant digits, header row.
std::string table_csv(const ExperimentTable& table);
nlohmann::json to_json(const ExperimentTable& table);

}  // namespace gre
