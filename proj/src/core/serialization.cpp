#include "core/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gre {

using nlohmann::json;

json to_json(const BitStream& bits) {
  json params = json::object();
  for (const auto& [name, value] : bits.params.values()) params[name] = value;
  std::string digits;
  digits.reserve(bits.size());
  for (Bit b : bits.bits) digits.push_back(b ? '1' : '0');
  json j{{"scheme", std::string(scheme_name(bits.scheme))},
         {"params", std::move(params)},
         {"n_bits", bits.size()},
         {"bits", std::move(digits)},
         {"warnings", bits.warnings}};
  if (bits.params.has_per_cycle()) {
    json pc = json::object();
    for (const auto& [name, seq] : bits.params.per_cycle_values()) pc[name] = seq;
    j["per_cycle"] = std::move(pc);
  }
  return j;
}

BitStream bitstream_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("bitstream JSON must be an object");
    BitStream out;
    const auto scheme = parse_scheme(j.at("scheme").get<std::string>());
    if (!scheme) throw ParseError("unknown scheme '" + j.at("scheme").get<std::string>() + "'");
    out.scheme = *scheme;

    const std::string digits = j.at("bits").get<std::string>();
    out.bits.reserve(digits.size());
    for (char c : digits) {
      if (c != '0' && c != '1') throw ParseError("bits must contain only '0' and '1'");
      out.bits.push_back(c == '1');
    }
    if (j.contains("n_bits") && j.at("n_bits").get<std::size_t>() != out.bits.size()) {
      throw ParseError("n_bits does not match the length of bits");
    }
    if (j.contains("params")) {
      for (const auto& [name, value] : j.at("params").items()) {
        out.params.set(name, value.get<double>());
      }
    }
    if (j.contains("per_cycle")) {
      for (const auto& [name, seq] : j.at("per_cycle").items()) {
        out.params.set_per_cycle(name, seq.get<std::vector<double>>());
      }
      out.params.check_cycles(out.bits.size());
    }
    if (j.contains("warnings")) out.warnings = j.at("warnings").get<std::vector<std::string>>();
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed bitstream JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

BitStream bitstream_from_string(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return bitstream_from_json(j);
}

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json point(Point p) { return json{{"u", p.u}, {"v", p.v}}; }

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "n,u_n\n";
  const auto& u = trajectory.scalars();
  for (std::size_t n = 0; n < u.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += fmt12(u[n]);
    out += '\n';
  }
  return out;
}

json to_json(const InvariantRect& r) {
  return json{{"mu", r.mu},
              {"lengths",
               {{"r1", r.r1}, {"l1", r.l1}, {"r2", r.r2}, {"l2", r.l2}, {"h", r.h},
                {"d1", r.d1}, {"d2", r.d2}}},
              {"s", {r.s_min, r.s_max}},
              {"t", {r.t_min, r.t_max}},
              {"corners",
               {{"A1#", point(r.a1_sharp)},
                {"B2", point(r.b2)},
                {"C2#", point(r.c2_sharp)},
                {"D1", point(r.d1_corner)}}},
              {"error_constant", r.error_constant()}};
}

json region_json(const ParamRegion& region, std::optional<double> alpha, std::size_t samples) {
  json j{{"mu", region.mu()},
         {"alpha_min", region.alpha_min()},
         {"alpha_max", region.alpha_max()},
         {"rect", to_json(invariant_rect(region.mu()))}};
  if (alpha) {
    const double a = *alpha;
    j["alpha"] = a;
    j["nu_min"] = region.nu_min(a);
    j["nu_max"] = region.nu_max(a);
    j["alpha_in_range"] = a >= region.alpha_min() && a <= region.alpha_max();
    if (a > region.alpha_min() && a < region.alpha_max()) {
      const RobustnessMargin m = robustness_margin(a, region.mu());
      j["margin"] = {{"eta", m.eta},
                     {"nu1", m.nu1},
                     {"nu2", m.nu2},
                     {"alpha_lower", m.alpha_lower},
                     {"alpha_upper", m.alpha_upper},
                     {"alpha_upper_star", m.alpha_upper_star}};
    }
    return j;
  }
  json rows = json::array();
  for (double a : uniform_grid(region.alpha_min(), region.alpha_max(), std::max<std::size_t>(samples, 2))) {
    rows.push_back({{"alpha", a}, {"nu_min", region.nu_min(a)}, {"nu_max", region.nu_max(a)}});
  }
  j["table"] = std::move(rows);
  return j;
}

json to_json(const InvarianceReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"point", point(x.point)}, {"bit", x.bit}, {"image", point(x.image)},
                 {"depth", x.depth}});
  }
  return json{{"mu", r.mu},
              {"alpha", r.alpha},
              {"nu1", r.nu1},
              {"nu2", r.nu2},
              {"domain", r.domain == InvarianceDomain::Rect ? "rect" : "unit_square"},
              {"parameters_admissible", r.parameters_admissible},
              {"grid", r.grid},
              {"points_checked", r.points_checked},
              {"images_checked", r.images_checked},
              {"violation_count", r.violation_count},
              {"min_image_depth", r.min_image_depth},
              {"ok", r.ok()},
              {"violations", std::move(v)}};
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt12(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  return std::get<std::string>(c);
}

}  // namespace

std::string table_csv(const ExperimentTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  return out.str();
}

json to_json(const ExperimentTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { r[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(r));
  }
  return json{{"experiment", table.name}, {"columns", table.columns}, {"rows", std::move(rows)}};
}

}  // namespace gre
