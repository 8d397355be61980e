#include "eb/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eb {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse number for '" + key + "': " + s);
  }
}

std::vector<double> to_double_list(const std::string& s, const std::string& key) {
  std::string body = trim(s);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ConfigError("config: expected [a, b, ...] for '" + key + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(item, key));
  }
  return out;
}

std::vector<std::string> to_string_list(const std::string& s, const std::string& key) {
  std::string body = trim(s);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ConfigError("config: expected [\"a\", ...] for '" + key + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip_quotes(trim(item));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "gaussian") return ProfileKind::gaussian;
  if (s == "sech") return ProfileKind::sech;
  if (s == "custom_samples") return ProfileKind::custom_samples;
  throw ConfigError("config: unknown profile kind '" + s + "'");
}

CoordinateMode coordinate_mode_from_string(const std::string& s) {
  if (s == "x" || s == "x_based") return CoordinateMode::x_based;
  if (s == "y" || s == "y_based") return CoordinateMode::y_based;
  throw ConfigError("config: unknown coordinate mode '" + s + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.config_hash = fnv1a_hex(text);

  std::istringstream is(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    const std::string val = strip_quotes(raw);

    auto unknown = [&]() {
      throw ConfigError("config: unknown key '" + section + "." + key + "'");
    };

    if (section == "profile") {
      if (key == "kind") cfg.profile.kind = val;
      else if (key == "amp") cfg.profile.amp = to_double(val, key);
      else if (key == "width") cfg.profile.width = to_double(val, key);
      else if (key == "x_min") cfg.profile.x_min = to_double(val, key);
      else if (key == "x_max") cfg.profile.x_max = to_double(val, key);
      else if (key == "n") cfg.profile.n = static_cast<std::size_t>(to_double(val, key));
      else if (key == "tail_tol") cfg.profile.tail_tol = to_double(val, key);
      else if (key == "samples_csv") cfg.profile.samples_csv = val;
      else unknown();
    } else if (section == "scattering") {
      if (key == "lambda_max") cfg.scattering.lambda_max = to_double(val, key);
      else if (key == "n_lambda") cfg.scattering.n_lambda = static_cast<std::size_t>(to_double(val, key));
      else if (key == "unitarity_tol") cfg.scattering.unitarity_tol = to_double(val, key);
      else if (key == "a_floor") cfg.scattering.a_floor = to_double(val, key);
      else unknown();
    } else if (section == "asymptotics") {
      if (key == "coordinate_mode") cfg.asymptotics.coordinate_mode = val;
      else if (key == "n_sim") cfg.asymptotics.n_sim = to_double(val, key);
      else unknown();
    } else if (section == "pde") {
      if (key == "x_min") cfg.pde.x_min = to_double(val, key);
      else if (key == "x_max") cfg.pde.x_max = to_double(val, key);
      else if (key == "n") cfg.pde.n = static_cast<std::size_t>(to_double(val, key));
      else if (key == "ode_tol") cfg.pde.ode_tol = to_double(val, key);
      else if (key == "wake_tol") cfg.pde.wake_tol = to_double(val, key);
      else if (key == "snapshot_times") cfg.pde.snapshot_times = to_double_list(raw, key);
      else unknown();
    } else if (section == "compare") {
      if (key == "window_ratio_min") cfg.compare.window_ratio_min = to_double(val, key);
      else if (key == "window_ratio_max") cfg.compare.window_ratio_max = to_double(val, key);
      else unknown();
    } else if (section == "output") {
      if (key == "directory") cfg.output.directory = val;
      else if (key == "formats") cfg.output.formats = to_string_list(raw, key);
      else unknown();
    } else {
      throw ConfigError("config: unknown section '" + section + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return parse_config_text(os.str());
}

void RunConfig::validate() const {
  profile_kind_from_string(profile.kind);
  coordinate_mode_from_string(asymptotics.coordinate_mode);
  if (!(profile.x_min < profile.x_max)) throw ConfigError("config: profile.x_min must be < x_max");
  if (profile.n < 16) throw ConfigError("config: profile.n too small");
  if (!(profile.tail_tol > 0.0)) throw ConfigError("config: tail_tol must be positive");
  if (!(scattering.lambda_max > 1.0)) throw ConfigError("config: lambda_max must exceed 1");
  if (scattering.n_lambda < 8) throw ConfigError("config: n_lambda too small");
  if (!(scattering.unitarity_tol > 0.0)) throw ConfigError("config: unitarity_tol must be positive");
  if (!(scattering.a_floor > 0.0)) throw ConfigError("config: a_floor must be positive");
  if (!(asymptotics.n_sim > 0.0)) throw ConfigError("config: n_sim must be positive");
  if (!(pde.x_min < pde.x_max)) throw ConfigError("config: pde.x_min must be < x_max");
  if (!(pde.ode_tol > 0.0) || !(pde.wake_tol > 0.0)) throw ConfigError("config: pde tolerances must be positive");
  if (!std::is_sorted(pde.snapshot_times.begin(), pde.snapshot_times.end()) ||
      std::adjacent_find(pde.snapshot_times.begin(), pde.snapshot_times.end()) !=
          pde.snapshot_times.end())
    throw ConfigError("config: snapshot_times must be strictly increasing");
  for (double t : pde.snapshot_times)
    if (!(t > 0.0)) throw ConfigError("config: snapshot_times must be positive");
  if (!(compare.window_ratio_min > 0.0) || !(compare.window_ratio_max > compare.window_ratio_min))
    throw ConfigError("config: bad compare window");
}

}  // namespace eb
