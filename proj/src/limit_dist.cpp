#include "locallim/limit_dist.hpp"

#include <algorithm>
#include <vector>

#include <nlohmann/json.hpp>

#include "locallim/errors.hpp"

namespace locallim {

double LimitDist::total() const {
  double sum = leftover;
  for (const auto& [code, p] : mass) sum += p;
  return sum;
}

double LimitDist::at(const BallCode& code) const {
  auto it = mass.find(code);
  return it == mass.end() ? 0.0 : it->second;
}

const char* origin_name(DistOrigin::Kind kind) {
  switch (kind) {
    case DistOrigin::Kind::analytic:
      return "analytic";
    case DistOrigin::Kind::monte_carlo:
      return "monte-carlo";
    case DistOrigin::Kind::mixture:
      return "mixture";
  }
  return "analytic";
}

std::string to_json(const LimitDist& d) {
  using nlohmann::ordered_json;
  std::vector<std::pair<const BallCode*, double>> entries;
  for (const auto& [code, p] : d.mass) entries.emplace_back(&code, p);
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  ordered_json origin;
  origin["kind"] = origin_name(d.origin.kind);
  if (d.origin.kind == DistOrigin::Kind::monte_carlo) {
    origin["samples"] = d.origin.samples;
    origin["seed"] = d.origin.seed;
  }
  origin["description"] = d.origin.description;
  ordered_json j;
  j["origin"] = origin;
  j["leftover"] = d.leftover;
  ordered_json arr = ordered_json::array();
  for (const auto& [code, p] : entries) arr.push_back({{"code", code->hex()}, {"prob", p}});
  j["entries"] = std::move(arr);
  return j.dump(2);
}

LimitDist limit_dist_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  LimitDist d;
  d.leftover = j.at("leftover").get<double>();
  const auto& origin = j.at("origin");
  auto kind = origin.at("kind").get<std::string>();
  if (kind == "analytic") {
    d.origin.kind = DistOrigin::Kind::analytic;
  } else if (kind == "monte-carlo") {
    d.origin.kind = DistOrigin::Kind::monte_carlo;
    d.origin.samples = origin.value("samples", std::int64_t{0});
    d.origin.seed = origin.value("seed", std::uint64_t{0});
  } else if (kind == "mixture") {
    d.origin.kind = DistOrigin::Kind::mixture;
  } else {
    throw ContractViolation("unknown distribution origin \"" + kind + "\"");
  }
  d.origin.description = origin.value("description", std::string{});
  for (const auto& e : j.at("entries"))
    d.mass[BallCode::from_hex(e.at("code").get<std::string>())] = e.at("prob").get<double>();
  return d;
}

}  // namespace locallim
