#pragma once

// JSON encodings shared by manifests, configs and reports. Infinite
// endpoints are written as the strings "inf" / "-inf".

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "brw/error.hpp"
#include "brw/offspring.hpp"
#include "brw/point_sample.hpp"
#include "brw/steps.hpp"

namespace brw {

using Json = nlohmann::json;

inline Json real_to_json(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

inline double real_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw config_error("expected a number or \"inf\"/\"-inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw config_error("expected a number, got " + j.dump());
  return j.get<double>();
}

inline Json to_json(const Interval& iv) { return Json::array({real_to_json(iv.lo), real_to_json(iv.hi)}); }

inline Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw config_error("interval must be [lo, hi]");
  return {real_from_json(j[0]), real_from_json(j[1])};
}

inline Json to_json(const StepFunction& g) {
  Json out = Json::array();
  for (const auto& c : g.cells) out.push_back(Json::array({to_json(c.set), c.value == kInf ? Json("inf") : Json(c.value)}));
  return out;
}

inline StepFunction step_function_from_json(const Json& j) {
  if (!j.is_array()) throw config_error("step function must be a list of [[lo, hi], value]");
  StepFunction g;
  for (const auto& cell : j) {
    if (!cell.is_array() || cell.size() != 2) throw config_error("step cell must be [[lo, hi], value]");
    g.cells.push_back({interval_from_json(cell[0]), real_from_json(cell[1])});
  }
  return g;
}

inline Json to_json(const OffspringDistribution& d) {
  switch (d.kind()) {
    case OffspringKind::geometric: return {{"kind", "geometric"}, {"b", d.geometric_b()}};
    case OffspringKind::regular: return {{"kind", "regular"}, {"d", d.regular_d()}};
    case OffspringKind::finite: {
      Json pmf = Json::array();
      for (const auto& e : d.finite_pmf()) pmf.push_back(Json::array({e.value, e.prob}));
      return {{"kind", "finite"}, {"pmf", pmf}};
    }
  }
  return {};
}

inline OffspringDistribution offspring_from_json(const Json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "geometric") return OffspringDistribution::geometric(j.at("b").get<double>());
    if (kind == "regular") return OffspringDistribution::regular(j.at("d").get<std::uint64_t>());
    if (kind == "finite") {
      std::vector<PmfEntry> pmf;
      for (const auto& e : j.at("pmf")) pmf.push_back({e.at(0).get<std::uint64_t>(), e.at(1).get<double>()});
      return OffspringDistribution::finite(std::move(pmf));
    }
    throw config_error("unknown offspring kind \"" + kind + "\"");
  } catch (const Json::exception& e) {
    throw config_error(std::string("offspring: ") + e.what());
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
}

inline Json to_json(const StepDistribution& s) {
  return {{"alpha", s.alpha()}, {"p", s.p()}, {"q", s.q()}, {"x_m", s.x_m()}, {"beta", s.beta()}};
}

inline StepDistribution step_from_json(const Json& j) {
  try {
    const double p = j.at("p").get<double>();
    if (j.contains("q") && std::fabs(j.at("q").get<double>() - (1.0 - p)) > 1e-12)
      throw config_error("step: p + q must equal 1");
    return StepDistribution(j.at("alpha").get<double>(), p, j.value("x_m", 1.0), j.value("beta", 0.0));
  } catch (const Json::exception& e) {
    throw config_error(std::string("step: ") + e.what());
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
}

/// FNV-1a over the canonical dump; identifies configs in every output file.
inline std::string config_hash(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xF];
  return out;
}

}  // namespace brw
