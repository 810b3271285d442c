#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../geometry.hpp"

namespace slicecalc::cli {

// Bad flags or a config that cannot describe a valid run. Maps to exit code 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

enum class Command { verify, converge, hodge, kernel_dump };
enum class Format { json, csv };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::converge: return "converge";
    case Command::hodge: return "hodge";
    case Command::kernel_dump: return "kernel-dump";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::verify;
  int m = 2;
  std::string profile_spec = "kind=disk,u0=0,v0=2,R=0.5";
  ProfileRegion profile = ProfileRegion::disk(0.0, 2.0, 0.5, 64);
  std::vector<int> resolutions{64};
  int sphere_order = 16;
  std::vector<std::string> functions{"identity", "conjugate", "exp"};
  double p = 4.0;
  unsigned seed = 7;
  int trials = 20;
  int degree = 6;
  int probes = 8;
  std::string points;  // kernel-dump input
  std::string out;     // empty: stdout
  Format format = Format::json;

  int finest() const { return resolutions.back(); }
  ProfileRegion profile_at(int n) const { return profile.with_resolution(n); }
};

// "kind=disk,u0=0,v0=2,R=0.5"; also kind=rectangle (u_min,u_max,v_min,v_max) and
// kind=annulus (u0,v0,r1,r2,t1,t2). Every parameter of the kind must be given.
inline ProfileRegion parse_profile(const std::string& spec) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("profile entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    if (kv.count(key)) throw UsageError("profile key '" + key + "' given twice");
    kv[key] = item.substr(eq + 1);
  }
  const auto kind = kv.find("kind");
  if (kind == kv.end()) throw UsageError("profile needs kind=disk|rectangle|annulus");

  std::vector<std::string> keys;
  if (kind->second == "disk") keys = {"u0", "v0", "R"};
  else if (kind->second == "rectangle") keys = {"u_min", "u_max", "v_min", "v_max"};
  else if (kind->second == "annulus") keys = {"u0", "v0", "r1", "r2", "t1", "t2"};
  else throw UsageError("unknown profile kind '" + kind->second + "'");

  std::vector<double> x;
  for (const auto& k : keys) {
    const auto it = kv.find(k);
    if (it == kv.end()) throw UsageError("profile kind=" + kind->second + " needs " + k);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it->second.size()) throw UsageError("profile " + k + "='" + it->second + "' is not a number");
    x.push_back(value);
    kv.erase(it);
  }
  kv.erase("kind");
  if (!kv.empty()) throw UsageError("unknown profile key '" + kv.begin()->first + "'");

  ProfileRegion p;
  if (kind->second == "disk") p = ProfileRegion::disk(x[0], x[1], x[2], 32);
  else if (kind->second == "rectangle") p = ProfileRegion::rectangle(x[0], x[1], x[2], x[3], 32);
  else p = ProfileRegion::annulus_sector(x[0], x[1], x[2], x[3], x[4], x[5], 32);
  try {
    p.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("invalid profile: ") + e.what());
  }
  return p;
}

inline void validate(RunConfig& cfg) {
  if (cfg.m < 1 || cfg.m > 6) throw UsageError("--m must be between 1 and 6");
  cfg.profile = parse_profile(cfg.profile_spec);
  if (cfg.resolutions.empty()) throw UsageError("--resolutions is empty");
  for (std::size_t i = 0; i < cfg.resolutions.size(); ++i) {
    if (cfg.resolutions[i] < 4) throw UsageError("resolutions must be at least 4");
    if (i > 0 && cfg.resolutions[i] <= cfg.resolutions[i - 1]) throw UsageError("--resolutions must be strictly increasing");
  }
  if ((cfg.command == Command::converge || cfg.command == Command::hodge) && cfg.resolutions.size() < 2)
    throw UsageError(to_string(cfg.command) + " needs at least two resolutions");
  if (cfg.sphere_order < 1) throw UsageError("--sphere-order must be positive");
  if (cfg.command != Command::kernel_dump && cfg.functions.empty()) throw UsageError("--functions is empty");
  if (cfg.command == Command::kernel_dump && cfg.points.empty()) throw UsageError("kernel-dump needs --points");
  if (cfg.command == Command::converge && !(cfg.p > std::max(cfg.m, 2)))
    throw UsageError("hypothesis violation: the boundedness probe needs p > max(m, 2), got p = " +
                     std::to_string(cfg.p));
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  if (cfg.probes < 1) throw UsageError("--probes must be positive");
  if (cfg.degree < 0) throw UsageError("--degree must be nonnegative");
}

}  // namespace slicecalc::cli
