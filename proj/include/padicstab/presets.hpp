#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padicstab/config.hpp"

namespace padicstab {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view json;
};

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      {"counterexample-additive", "F(u) = u^2 at p = 5: the additive sequence has constant difference norm",
       R"({"mode": "counterexample-additive", "prime": 5, "u_grid": [1, 5], "horizon": 30})"},
      {"counterexample-additive-p7", "F(u) = u^2 at p = 7, additive scaling",
       R"({"mode": "counterexample-additive", "prime": 7, "u_grid": [1, 5], "horizon": 30})"},
      {"counterexample-cubic", "F(u) = u^2 at p = 7: the cubic sequence has constant difference norm",
       R"({"mode": "counterexample-cubic", "prime": 7, "u_grid": [1, 5], "horizon": 30})"},
      {"counterexample-cubic-p5", "F(u) = u^2 at p = 5, cubic scaling",
       R"({"mode": "counterexample-cubic", "prime": 5, "u_grid": [1, 5], "horizon": 30})"},
      {"decompose-roundtrip", "F(u) = 3u + 5u^3 splits exactly into A(u) = 3u and C(u) = 5u^3",
       R"({"mode": "theorem-decompose", "prime": 2, "beta": 1, "map": "3*u + 5*u^3", "sigma": "16",
           "u_grid": [1, 2, "1/2", "5/3"], "v_grid": [1, 2], "horizon": 30})"},
      {"norm-axioms", "axiom suite for the (2,1/2)-norm on Q_2^3",
       R"({"mode": "axioms", "prime": 2, "n": 2, "d": 3, "beta": "1/2", "trials": 10000, "seed": 1})"},
      {"norm-axioms-p5", "axiom suite for the (2,1)-norm on Q_5^2",
       R"({"mode": "axioms", "prime": 5, "n": 2, "d": 2, "beta": 1, "trials": 10000, "seed": 2})"},
      {"norm-axioms-p3", "axiom suite for the (3,1/3)-norm on Q_3^3",
       R"({"mode": "axioms", "prime": 3, "n": 3, "d": 3, "beta": "1/3", "trials": 10000, "seed": 3})"},
      {"corollary-regime", "power-family control with x + y = 2 at p = 5 violates the decay hypotheses",
       R"({"mode": "hypotheses", "prime": 5, "beta": 1, "sigma": {"family": "power", "rho": 1, "x": 1, "y": 1},
           "u_grid": [1, 2, 5], "v_grid": [1, 3], "horizon": 30, "expect": "violated"})"},
      {"constant-sigma", "constant control 1/4 at p = 2 satisfies the decay hypotheses",
       R"({"mode": "hypotheses", "prime": 2, "beta": 1, "sigma": "1/4", "u_grid": [1, 2, 3], "v_grid": [1, 2],
           "horizon": 30, "expect": "satisfied"})"},
      {"perturbed-additive", "8u plus a seeded perturbation capped at 2^-4, additive construction",
       R"({"mode": "theorem-additive", "prime": 2, "beta": 1, "slots": [[0, 1]],
           "map": {"coords": ["8*u", "0"], "perturbation": {"seed": 7, "cap_exponent": 4}},
           "sigma": "1/4", "psi": "1", "u_grid": [1, 2, 3], "v_grid": [1, 2], "horizon": 40})"},
      {"perturbed-cubic", "5u^3 plus a seeded perturbation capped at 2^-4, cubic construction",
       R"({"mode": "theorem-cubic", "prime": 2, "beta": 1,
           "map": {"coords": ["5*u^3"], "perturbation": {"seed": 11, "cap_exponent": 4}},
           "sigma": "2", "u_grid": [1, 2, 3], "v_grid": [1, 2, 3], "horizon": 30})"},
  };
  return all;
}

inline const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace padicstab
