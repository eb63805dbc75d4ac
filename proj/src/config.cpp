#include "symest/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "symest/error.hpp"
#include "symest/format.hpp"

namespace symest {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a nonnegative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view key, std::string_view text) {
  try {
    return parse_real(std::string(text));
  } catch (const IoError&) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(text) + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (n == 0) throw ConfigError("n must be positive");
  if (m == 0 || m > n) throw ConfigError("m must satisfy 1 <= m <= n");
  if (levels == 0) throw ConfigError("levels must be positive");
  if (anchor_threshold == 0) throw ConfigError("anchor_threshold must be positive");
  if (workers == 0) throw ConfigError("workers must be positive");
  if (polish_sites > n) throw ConfigError("polish_sites must not exceed n");
  grid.validate();
  gibbs.validate();
  if (!(polish.sigma > 0.0)) throw ConfigError("polish sigma must be positive");
  if (!(polish.epsilon > 0.0)) throw ConfigError("polish epsilon must be positive");
  if (polish.trace_stride == 0) throw ConfigError("polish trace_stride must be positive");
  if (polish.burn_in && polish.sweeps > 0 && *polish.burn_in >= polish.sweeps) {
    throw ConfigError("polish burn_in must be below polish sweeps");
  }
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "true_theta") c.true_theta = parse_double(key, value);
  else if (key == "true_y0") c.true_y0 = parse_double(key, value);
  else if (key == "n") c.n = parse_unsigned<std::size_t>(key, value);
  else if (key == "m") c.m = parse_unsigned<std::size_t>(key, value);
  else if (key == "grid_start") c.grid.start = parse_double(key, value);
  else if (key == "grid_step") c.grid.step = parse_double(key, value);
  else if (key == "grid_points") c.grid.points = parse_unsigned<std::size_t>(key, value);
  else if (key == "levels") c.levels = parse_unsigned<std::size_t>(key, value);
  else if (key == "gibbs_sigma") c.gibbs.sigma = parse_double(key, value);
  else if (key == "gibbs_burn_in") c.gibbs.burn_in = parse_unsigned<std::size_t>(key, value);
  else if (key == "gibbs_sweeps") c.gibbs.total_sweeps = parse_unsigned<std::size_t>(key, value);
  else if (key == "gibbs_ces_stride") c.gibbs.ces_stride = parse_unsigned<std::size_t>(key, value);
  else if (key == "polish_sigma") c.polish.sigma = parse_double(key, value);
  else if (key == "polish_epsilon") c.polish.epsilon = parse_double(key, value);
  else if (key == "polish_sweeps") c.polish.sweeps = parse_unsigned<std::size_t>(key, value);
  else if (key == "polish_burn_in") {
    if (value == "auto") c.polish.burn_in.reset();
    else c.polish.burn_in = parse_unsigned<std::size_t>(key, value);
  }
  else if (key == "polish_trace_stride") c.polish.trace_stride = parse_unsigned<std::size_t>(key, value);
  else if (key == "polish_sites") c.polish_sites = parse_unsigned<std::size_t>(key, value);
  else if (key == "anchor_threshold") c.anchor_threshold = parse_unsigned<std::size_t>(key, value);
  else if (key == "seed") c.seed = parse_unsigned<std::uint64_t>(key, value);
  else if (key == "workers") c.workers = parse_unsigned<std::size_t>(key, value);
  else if (key == "output_dir") c.output_dir = std::string(value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::istream& is) {
  RunConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse_config(in);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "true_theta = " << format_real(c.true_theta) << '\n'
     << "true_y0 = " << format_real(c.true_y0) << '\n'
     << "n = " << c.n << '\n'
     << "m = " << c.m << '\n'
     << "grid_start = " << format_real(c.grid.start) << '\n'
     << "grid_step = " << format_real(c.grid.step) << '\n'
     << "grid_points = " << c.grid.points << '\n'
     << "levels = " << c.levels << '\n'
     << "gibbs_sigma = " << format_real(c.gibbs.sigma) << '\n'
     << "gibbs_burn_in = " << c.gibbs.burn_in << '\n'
     << "gibbs_sweeps = " << c.gibbs.total_sweeps << '\n'
     << "gibbs_ces_stride = " << c.gibbs.ces_stride << '\n'
     << "polish_sigma = " << format_real(c.polish.sigma) << '\n'
     << "polish_epsilon = " << format_real(c.polish.epsilon) << '\n'
     << "polish_sweeps = " << c.polish.sweeps << '\n'
     << "polish_burn_in = "
     << (c.polish.burn_in ? std::to_string(*c.polish.burn_in) : std::string("auto")) << '\n'
     << "polish_trace_stride = " << c.polish.trace_stride << '\n'
     << "polish_sites = " << c.polish_sites << '\n'
     << "anchor_threshold = " << c.anchor_threshold << '\n'
     << "seed = " << c.seed << '\n'
     << "workers = " << c.workers << '\n'
     << "output_dir = " << c.output_dir << '\n';
  return os.str();
}

}  // namespace symest
