#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "tetra/contraction.hpp"
#include "tetra/error.hpp"
#include "tetra/json_io.hpp"

namespace tetra {

enum class OutputFormat { json, text };

/**
 * @brief Settings shared by every subcommand.
 *
 * The master seed is resolved with increasing priority from the config
 * file, the TETRA_SEED environment variable and the --seed flag. Equal
 * seeds and flags give byte-identical JSON.
 */
struct ToolConfig {
  Tolerances tol{};
  std::size_t samples = 2000;
  std::size_t trials = 200;
  unsigned degree = 3;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::json;

  void validate() const {
    if (!(tol.algebraic > 0.0) || !(tol.optimization > 0.0) || !(tol.rank > 0.0)) {
      throw error(error_kind::invalid_argument, "tolerances must be positive");
    }
    if (samples == 0) throw error(error_kind::invalid_argument, "samples must be positive");
  }
};

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "text") return OutputFormat::text;
  throw error(error_kind::invalid_argument, "unknown format '" + s + "'");
}

inline std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw error(error_kind::invalid_argument, "seed must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ToolConfig config_from_json(const io::json& j) {
  if (!j.is_object()) throw error(error_kind::parse_error, "config must be an object");
  ToolConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "tolerances") {
        for (const auto& [tk, tv] : value.items()) {
          if (tk == "algebraic") c.tol.algebraic = tv.get<double>();
          else if (tk == "optimization") c.tol.optimization = tv.get<double>();
          else if (tk == "rank") c.tol.rank = tv.get<double>();
          else throw error(error_kind::parse_error, "unknown tolerance '" + tk + "'");
        }
      } else if (key == "samples") {
        c.samples = value.get<std::size_t>();
      } else if (key == "trials") {
        c.trials = value.get<std::size_t>();
      } else if (key == "degree") {
        c.degree = value.get<unsigned>();
      } else if (key == "seed") {
        c.seed = value.is_string() ? parse_seed(value.get<std::string>()) : value.get<std::uint64_t>();
      } else if (key == "format") {
        c.format = parse_format(value.get<std::string>());
      } else {
        throw error(error_kind::parse_error, "unknown config key '" + key + "'");
      }
    }
  } catch (const io::json::exception& ex) {
    throw error(error_kind::parse_error, ex.what());
  }
  c.validate();
  return c;
}

inline io::json config_to_json(const ToolConfig& c) {
  return {{"tolerances", {{"algebraic", c.tol.algebraic}, {"optimization", c.tol.optimization}, {"rank", c.tol.rank}}},
          {"samples", c.samples},
          {"trials", c.trials},
          {"degree", c.degree},
          {"seed", c.seed},
          {"format", c.format == OutputFormat::json ? "json" : "text"}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(error_kind::invalid_argument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::json read_json_file(const std::string& path) { return io::parse(read_file(path)); }

/// Config file, then TETRA_SEED, then an explicit seed flag.
inline ToolConfig resolve_config(const std::optional<std::string>& config_path,
                                 const std::optional<std::string>& seed_flag) {
  ToolConfig c = config_path ? config_from_json(read_json_file(*config_path)) : ToolConfig{};
  if (const char* env = std::getenv("TETRA_SEED"); env != nullptr && *env != '\0') c.seed = parse_seed(env);
  if (seed_flag) c.seed = parse_seed(*seed_flag);
  return c;
}

}  // namespace tetra
