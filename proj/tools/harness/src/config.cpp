#include "fracvisco/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracvisco/errors.hpp"

namespace fracvisco::harness {

SchemeChoice parse_scheme_choice(std::string_view text) {
  if (text == "fast") return SchemeChoice::Fast;
  if (text == "direct") return SchemeChoice::Direct;
  if (text == "both") return SchemeChoice::Both;
  throw ConfigError("scheme must be fast, direct or both (got '" + std::string(text) + "')");
}

std::string_view to_string(SchemeChoice choice) {
  switch (choice) {
    case SchemeChoice::Fast: return "fast";
    case SchemeChoice::Direct: return "direct";
    case SchemeChoice::Both: return "both";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view text, const std::string& what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(what + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view text, const std::string& what) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(what + ": not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

EpsRule EpsRule::parse(std::string_view text) {
  text = trim(text);
  if (text == "dt-over-10") return {};
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    const double v = to_double(text.substr(prefix.size()), "eps-rule");
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("eps-rule: fixed value must lie in (0, 1)");
    return {true, v};
  }
  throw ConfigError("eps-rule must be dt-over-10 or fixed:F (got '" + std::string(text) + "')");
}

std::string EpsRule::str() const {
  if (!fixed) return "dt-over-10";
  std::ostringstream os;
  os << "fixed:" << value;
  return os.str();
}

Material RunConfig::material_for(double alpha) const {
  Material m = material;
  m.alpha = alpha;
  return m;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(to_double(item, "list"));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split_list(text)) out.push_back(to_int(item, "list"));
  return out;
}

void load_config_text(std::string_view text, RunConfig& cfg) {
  // ini_parser only knows ';' comments.
  std::string cleaned;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    const auto t = trim(line);
    if (!t.empty() && t.front() == '#') continue;
    cleaned += line;
    cleaned += '\n';
  }
  boost::property_tree::ptree tree;
  try {
    std::istringstream is(cleaned);
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  using Setter = void (*)(RunConfig&, const std::string&);
  static const std::map<std::string, Setter> setters = {
      {"problem.name", [](RunConfig& c, const std::string& v) {
         try {
           c.problem = parse_problem(trim(v));
         } catch (const InvalidArgument& e) {
           throw ConfigError(e.what());
         }
       }},
      {"problem.mesh", [](RunConfig& c, const std::string& v) {
         try {
           c.mesh = parse_mesh_kind(trim(v));
         } catch (const InvalidArgument& e) {
           throw ConfigError(e.what());
         }
       }},
      {"problem.final_time",
       [](RunConfig& c, const std::string& v) { c.final_time = to_double(v, "final_time"); }},
      {"material.alpha",
       [](RunConfig& c, const std::string& v) { c.alphas = parse_double_list(v); }},
      {"material.rho",
       [](RunConfig& c, const std::string& v) { c.material.rho = to_double(v, "rho"); }},
      {"material.tau_sigma",
       [](RunConfig& c, const std::string& v) { c.material.tau_sigma = to_double(v, "tau_sigma"); }},
      {"material.tau_eps",
       [](RunConfig& c, const std::string& v) { c.material.tau_eps = to_double(v, "tau_eps"); }},
      {"material.mu_c",
       [](RunConfig& c, const std::string& v) { c.material.mu_c = to_double(v, "mu_c"); }},
      {"material.lambda_c",
       [](RunConfig& c, const std::string& v) { c.material.lambda_c = to_double(v, "lambda_c"); }},
      {"material.mu_d",
       [](RunConfig& c, const std::string& v) { c.material.mu_d = to_double(v, "mu_d"); }},
      {"material.lambda_d",
       [](RunConfig& c, const std::string& v) { c.material.lambda_d = to_double(v, "lambda_d"); }},
      {"soe.q", [](RunConfig& c, const std::string& v) { c.q = to_double(v, "q"); }},
      {"soe.eps_rule", [](RunConfig& c, const std::string& v) { c.eps_rule = EpsRule::parse(v); }},
      {"space.levels",
       [](RunConfig& c, const std::string& v) { c.space_levels = parse_int_list(v); }},
      {"time.n", [](RunConfig& c, const std::string& v) { c.time_mesh_n = to_int(v, "time.n"); }},
      {"time.steps", [](RunConfig& c, const std::string& v) { c.time_steps = parse_int_list(v); }},
      {"bench.n", [](RunConfig& c, const std::string& v) { c.bench_mesh_n = to_int(v, "bench.n"); }},
      {"bench.steps",
       [](RunConfig& c, const std::string& v) { c.bench_steps = parse_int_list(v); }},
      {"bench.warmup",
       [](RunConfig& c, const std::string& v) { c.bench_warmup = to_int(v, "bench.warmup"); }},
      {"run.scheme",
       [](RunConfig& c, const std::string& v) { c.scheme = parse_scheme_choice(trim(v)); }},
      {"run.n", [](RunConfig& c, const std::string& v) { c.run_n = to_int(v, "run.n"); }},
      {"run.steps", [](RunConfig& c, const std::string& v) { c.run_steps = to_int(v, "run.steps"); }},
      {"run.jobs", [](RunConfig& c, const std::string& v) { c.jobs = to_int(v, "run.jobs"); }},
      {"output.dir",
       [](RunConfig& c, const std::string& v) { c.out_dir = std::string(trim(v)); }},
  };

  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("config: key '" + section + "' outside of a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      const auto it = setters.find(full);
      if (it == setters.end()) throw ConfigError("config: unknown key '" + full + "'");
      it->second(cfg, value.get_value<std::string>());
    }
  }
}

void load_config_file(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_config_text(buffer.str(), cfg);
}

void validate(const RunConfig& cfg) {
  auto positive_levels = [](const std::vector<int>& v, const char* what) {
    if (v.empty()) throw ConfigError(std::string(what) + ": empty list");
    for (int x : v) {
      if (x < 1) throw ConfigError(std::string(what) + ": entries must be >= 1");
    }
  };
  if (cfg.alphas.empty()) throw ConfigError("alpha: empty list");
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  }
  if (!(cfg.final_time > 0.0)) throw ConfigError("final_time must be > 0");
  if (!(cfg.q > 1.0)) throw ConfigError("q must be > 1");
  positive_levels(cfg.space_levels, "space.levels");
  for (int n : cfg.space_levels) {
    if (n < 2) throw ConfigError("space.levels: meshes need at least 2 cells per side");
  }
  positive_levels(cfg.time_steps, "time.steps");
  positive_levels(cfg.bench_steps, "bench.steps");
  if (cfg.time_mesh_n < 2 || cfg.bench_mesh_n < 2 || cfg.run_n < 2) {
    throw ConfigError("meshes need at least 2 cells per side");
  }
  if (cfg.run_steps < 0) throw ConfigError("run.steps must be >= 0");
  if (cfg.bench_warmup < 0) throw ConfigError("bench.warmup must be >= 0");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  try {
    cfg.material_for(cfg.alphas.front()).validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace fracvisco::harness
