#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "padicstab/bounds.hpp"
#include "padicstab/control.hpp"
#include "padicstab/poly_map.hpp"

namespace padicstab {

/// Invalid experiment configuration; `path` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Mode {
  theorem_additive,
  theorem_cubic,
  theorem_decompose,
  counterexample_additive,
  counterexample_cubic,
  axioms,
  hypotheses,
};

inline const std::map<std::string, Mode>& mode_names() {
  static const std::map<std::string, Mode> names{
      {"theorem-additive", Mode::theorem_additive},
      {"theorem-cubic", Mode::theorem_cubic},
      {"theorem-decompose", Mode::theorem_decompose},
      {"counterexample-additive", Mode::counterexample_additive},
      {"counterexample-cubic", Mode::counterexample_cubic},
      {"axioms", Mode::axioms},
      {"hypotheses", Mode::hypotheses},
  };
  return names;
}

inline std::string to_string(Mode m) {
  for (const auto& [name, mode] : mode_names()) {
    if (mode == m) return name;
  }
  return "?";
}

using AnyMap = std::variant<PolyMap, PerturbedMap>;

struct ExperimentConfig {
  Mode mode = Mode::axioms;
  std::uint64_t prime = 2;
  BigRational beta{1};
  std::size_t n = 1;
  std::size_t d = 1;
  std::vector<TargetVector> slots;
  std::map<std::string, BigRational> params;
  std::optional<AnyMap> map;
  std::optional<SigmaFunction> sigma;
  bool sigma_is_power_family = false;
  PsiFunction psi;
  bool psi_defaulted = true;
  std::vector<BigRational> u_grid;
  std::vector<BigRational> v_grid;
  std::size_t horizon = 30;
  std::size_t uniqueness_horizon = 30;
  CauchyPolicy cauchy;
  DecayPolicy decay;
  SigmaBarOptions sigma_bar;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  HypothesisStatus expect = HypothesisStatus::satisfied;
  nlohmann::ordered_json echo;

  PrimeContext prime_context() const { return PrimeContext(prime, beta); }
  NBetaContext nbeta_context() const { return NBetaContext(prime_context(), n, d); }
};

namespace detail {

inline BigRational config_rational(const nlohmann::ordered_json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return BigRational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected an integer or a rational string such as \"1/2\"");
}

inline std::uint64_t config_unsigned(const nlohmann::ordered_json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::vector<BigRational> config_grid(const nlohmann::ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  if (j.empty()) throw ConfigError(path, "grid must be nonempty");
  std::vector<BigRational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(config_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> config_texts(const nlohmann::ordered_json& j, const std::string& path) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a DSL string or a nonempty array of strings");
  std::vector<std::string> out;
  for (const auto& t : j) {
    if (!t.is_string()) throw ConfigError(path, "expected strings");
    out.push_back(t.get<std::string>());
  }
  return out;
}

inline void check_keys(const nlohmann::ordered_json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

template <class Fn>
auto with_dsl_errors(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ConfigError(path, std::string("syntax error at ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  } catch (const UsageError& e) {
    throw ConfigError(path, e.what());
  }
}

inline PolyMap builtin_map(const std::string& name) {
  if (name == "zero") return PolyMap::scalar({});
  if (name == "identity") return PolyMap::scalar({BigRational(0), BigRational(1)});
  if (name == "square") return PolyMap::scalar({BigRational(0), BigRational(0), BigRational(1)});
  if (name == "cube") return PolyMap::scalar({BigRational(0), BigRational(0), BigRational(0), BigRational(1)});
  throw ConfigError("map.builtin", "unknown builtin '" + name + "' (zero, identity, square, cube)");
}

}  // namespace detail

/// Validates a JSON experiment document. Unknown keys are errors.
inline ExperimentConfig parse_config(const nlohmann::ordered_json& doc) {
  using detail::check_keys;
  check_keys(doc, "",
             {"mode", "prime", "beta", "n", "d", "slots", "params", "map", "sigma", "psi", "u_grid", "v_grid",
              "horizon", "uniqueness_horizon", "window", "threshold_exponent", "decay_threshold_exponent",
              "sigma_bar_padic_multipliers", "trials", "seed", "expect"});

  ExperimentConfig cfg;
  cfg.echo = doc;

  if (!doc.contains("mode") || !doc["mode"].is_string()) throw ConfigError("mode", "required string");
  const auto mode_it = mode_names().find(doc["mode"].get<std::string>());
  if (mode_it == mode_names().end()) throw ConfigError("mode", "unknown mode '" + doc["mode"].get<std::string>() + "'");
  cfg.mode = mode_it->second;

  if (!doc.contains("prime")) throw ConfigError("prime", "required");
  cfg.prime = detail::config_unsigned(doc["prime"], "prime");
  if (doc.contains("beta")) cfg.beta = detail::config_rational(doc["beta"], "beta");
  try {
    (void)cfg.prime_context();
  } catch (const UsageError& e) {
    throw ConfigError("prime/beta", e.what());
  }

  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw ConfigError("params", "expected an object of name: rational");
    for (const auto& [name, value] : doc["params"].items()) {
      cfg.params[name] = detail::config_rational(value, "params." + name);
    }
  }

  auto size_key = [&](const char* key, std::size_t fallback) {
    return doc.contains(key) ? static_cast<std::size_t>(detail::config_unsigned(doc[key], key)) : fallback;
  };
  cfg.horizon = size_key("horizon", 30);
  cfg.uniqueness_horizon = size_key("uniqueness_horizon", 30);
  cfg.cauchy.window = size_key("window", 5);
  cfg.decay.window = cfg.cauchy.window;
  if (cfg.cauchy.window < 1) throw ConfigError("window", "must be at least 1");
  if (cfg.horizon < cfg.cauchy.window) throw ConfigError("horizon", "must be at least the decision window");
  if (cfg.uniqueness_horizon < cfg.cauchy.window) {
    throw ConfigError("uniqueness_horizon", "must be at least the decision window");
  }
  cfg.cauchy.threshold_exponent = static_cast<std::int64_t>(size_key("threshold_exponent", 40));
  cfg.decay.relative_threshold_exponent = static_cast<std::int64_t>(size_key("decay_threshold_exponent", 20));
  cfg.trials = size_key("trials", 10000);
  cfg.seed = doc.contains("seed") ? detail::config_unsigned(doc["seed"], "seed") : 1;
  if (doc.contains("sigma_bar_padic_multipliers")) {
    if (!doc["sigma_bar_padic_multipliers"].is_boolean()) throw ConfigError("sigma_bar_padic_multipliers", "expected a boolean");
    cfg.sigma_bar.padic_multipliers = doc["sigma_bar_padic_multipliers"].get<bool>();
  }
  if (doc.contains("expect")) {
    const auto& e = doc["expect"];
    if (e == "satisfied") {
      cfg.expect = HypothesisStatus::satisfied;
    } else if (e == "violated") {
      cfg.expect = HypothesisStatus::violated;
    } else {
      throw ConfigError("expect", "expected \"satisfied\" or \"violated\"");
    }
  }

  // target space
  if (doc.contains("slots")) {
    const auto& s = doc["slots"];
    if (!s.is_array() || s.empty()) throw ConfigError("slots", "expected a nonempty array of vectors");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string path = "slots[" + std::to_string(i) + "]";
      if (!s[i].is_array() || s[i].empty()) throw ConfigError(path, "expected a nonempty array of rationals");
      std::vector<BigRational> coords;
      for (std::size_t k = 0; k < s[i].size(); ++k) coords.push_back(detail::config_rational(s[i][k], path));
      cfg.slots.emplace_back(std::move(coords));
      if (cfg.slots.back().dimension() != cfg.slots.front().dimension()) throw ConfigError(path, "dimension mismatch");
    }
    cfg.n = cfg.slots.size() + 1;
    cfg.d = cfg.slots.front().dimension();
  }
  if (doc.contains("n")) {
    const auto n = size_key("n", 1);
    if (!cfg.slots.empty() && n != cfg.n) throw ConfigError("n", "must equal the number of slot vectors plus one");
    cfg.n = n;
  }

  const bool needs_map = cfg.mode == Mode::theorem_additive || cfg.mode == Mode::theorem_cubic ||
                         cfg.mode == Mode::theorem_decompose;
  const bool needs_sigma = needs_map || cfg.mode == Mode::hypotheses;
  const bool needs_grid = cfg.mode != Mode::axioms;

  if (doc.contains("map")) {
    const auto& m = doc["map"];
    std::optional<PolyMap> base;
    std::optional<nlohmann::ordered_json> perturbation;
    if (m.is_object()) {
      check_keys(m, "map", {"coords", "builtin", "perturbation"});
      if (m.contains("coords") == m.contains("builtin")) throw ConfigError("map", "give exactly one of coords, builtin");
      if (m.contains("builtin")) {
        base = detail::builtin_map(m["builtin"].get<std::string>());
      } else {
        const auto texts = detail::config_texts(m["coords"], "map.coords");
        base = detail::with_dsl_errors("map.coords", [&] { return parse_map(texts, cfg.params); });
      }
      if (m.contains("perturbation")) perturbation = m["perturbation"];
    } else {
      const auto texts = detail::config_texts(m, "map");
      base = detail::with_dsl_errors("map", [&] { return parse_map(texts, cfg.params); });
    }
    if (perturbation) {
      check_keys(*perturbation, "map.perturbation", {"seed", "cap_exponent"});
      if (!perturbation->contains("cap_exponent")) throw ConfigError("map.perturbation.cap_exponent", "required");
      const auto seed = perturbation->contains("seed")
                            ? detail::config_unsigned((*perturbation)["seed"], "map.perturbation.seed")
                            : std::uint64_t{0};
      const auto cap = detail::config_unsigned((*perturbation)["cap_exponent"], "map.perturbation.cap_exponent");
      cfg.map = PerturbedMap(*base, seed, static_cast<std::int64_t>(cap), cfg.prime);
    } else {
      cfg.map = *base;
    }
    const std::size_t dim = std::visit([](const auto& f) { return f.dimension(); }, *cfg.map);
    if (cfg.slots.empty() && !doc.contains("d")) cfg.d = dim;
    if (dim != cfg.d) {
      throw ConfigError("map", "map has dimension " + std::to_string(dim) + " but the target space has d = " +
                                   std::to_string(cfg.d));
    }
  } else if (needs_map) {
    throw ConfigError("map", "required for mode " + to_string(cfg.mode));
  }
  if (doc.contains("d")) {
    const auto d = size_key("d", 1);
    if ((!cfg.slots.empty() || cfg.map) && d != cfg.d) throw ConfigError("d", "inconsistent with slots or map");
    cfg.d = d;
  }
  if (cfg.mode == Mode::axioms && (!doc.contains("n") || !doc.contains("d"))) {
    throw ConfigError("n/d", "required for mode axioms");
  }
  try {
    (void)cfg.nbeta_context();
  } catch (const UsageError& e) {
    throw ConfigError("n/d", e.what());
  }
  if (cfg.mode == Mode::axioms && cfg.trials < 1) throw ConfigError("trials", "must be at least 1");
  if (needs_map && cfg.slots.size() + 1 != cfg.n) {
    throw ConfigError("slots", "theorem modes need n - 1 = " + std::to_string(cfg.n - 1) + " slot vectors");
  }

  if (doc.contains("sigma")) {
    const auto& s = doc["sigma"];
    if (s.is_string()) {
      cfg.sigma = detail::with_dsl_errors("sigma", [&] { return SigmaFunction::parse(s.get<std::string>(), cfg.params); });
    } else {
      check_keys(s, "sigma", {"expr", "family", "rho", "x", "y"});
      if (s.contains("expr")) {
        if (s.contains("family")) throw ConfigError("sigma", "give either expr or family");
        cfg.sigma =
            detail::with_dsl_errors("sigma.expr", [&] { return SigmaFunction::parse(s["expr"].get<std::string>(), cfg.params); });
      } else {
        if (!s.contains("family") || s["family"] != "power") throw ConfigError("sigma.family", "expected \"power\"");
        for (const char* key : {"rho", "x", "y"}) {
          if (!s.contains(key)) throw ConfigError(std::string("sigma.") + key, "required for the power family");
        }
        const BigRational rho = detail::config_rational(s["rho"], "sigma.rho");
        const BigRational x = detail::config_rational(s["x"], "sigma.x");
        const BigRational y = detail::config_rational(s["y"], "sigma.y");
        if (rho < 0 || x < 0 || y < 0) throw ConfigError("sigma", "rho, x, y must be nonnegative");
        cfg.sigma = SigmaFunction::power_family(rho, x, y);
        cfg.sigma_is_power_family = true;
      }
    }
  } else if (needs_sigma) {
    throw ConfigError("sigma", "required for mode " + to_string(cfg.mode));
  }

  if (doc.contains("psi")) {
    if (!doc["psi"].is_string()) throw ConfigError("psi", "expected a DSL string");
    cfg.psi = detail::with_dsl_errors("psi", [&] { return PsiFunction::parse(doc["psi"].get<std::string>(), cfg.params); });
    cfg.psi_defaulted = false;
    try {
      (void)cfg.psi(cfg.slots, cfg.prime_context());
    } catch (const UsageError& e) {
      throw ConfigError("psi", e.what());
    }
  }

  if (needs_grid) {
    cfg.u_grid = doc.contains("u_grid")
                     ? detail::config_grid(doc["u_grid"], "u_grid")
                     : std::vector<BigRational>{BigRational(1), BigRational(2), BigRational(3), BigRational(1, 2),
                                                BigRational(5, 3)};
    cfg.v_grid = doc.contains("v_grid") ? detail::config_grid(doc["v_grid"], "v_grid") : cfg.u_grid;
  }
  if (cfg.mode == Mode::counterexample_additive || cfg.mode == Mode::counterexample_cubic) {
    if (cfg.prime == 2) throw ConfigError("prime", "counterexample modes need an odd prime");
    for (const auto& u : cfg.u_grid) {
      if (u == 0) throw ConfigError("u_grid", "counterexample grid points must be nonzero");
    }
  }
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  return parse_config(doc);
}

}  // namespace padicstab
