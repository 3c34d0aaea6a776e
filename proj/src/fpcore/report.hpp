#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algebra.hpp"

namespace fp {

struct DegreeRow {
  int k = 0;
  int dim = 0;
  std::vector<std::string> representatives;
};

// Uniform command result. JSON schema:
// { "algebra": {name, dim, field}, "command": str,
//   "degrees": [ {k, dim, representatives[]} ],
//   "checks": [ {name, pass, witness?} ] }
struct Report {
  std::string algebra_name;
  int algebra_dim = 0;
  std::string field;
  std::string command;
  std::vector<DegreeRow> degrees;
  std::vector<CheckRow> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  int exit_code() const { return ok() ? 0 : 1; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["algebra"] = {{"name", algebra_name}, {"dim", algebra_dim}, {"field", field}};
    j["command"] = command;
    j["degrees"] = nlohmann::json::array();
    for (const auto& d : degrees) {
      nlohmann::json row;
      row["k"] = d.k;
      row["dim"] = d.dim;
      row["representatives"] = d.representatives;
      j["degrees"].push_back(row);
    }
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json row;
      row["name"] = c.name;
      row["pass"] = c.pass;
      if (!c.witness.empty()) row["witness"] = c.witness;
      j["checks"].push_back(row);
    }
    return j;
  }

  std::string to_text() const {
    std::string out;
    out += "algebra " + algebra_name + " (dim " + std::to_string(algebra_dim) + ", field " + field + ")\n";
    out += "command " + command + "\n";
    if (!degrees.empty()) {
      out += "k    dim  representatives\n";
      for (const auto& d : degrees) {
        std::string reps;
        for (std::size_t i = 0; i < d.representatives.size(); ++i) {
          if (i) reps += " | ";
          reps += d.representatives[i];
        }
        std::string k = std::to_string(d.k);
        std::string dim = std::to_string(d.dim);
        out += k + std::string(k.size() < 5 ? 5 - k.size() : 1, ' ') + dim +
               std::string(dim.size() < 5 ? 5 - dim.size() : 1, ' ') + reps + "\n";
      }
    }
    for (const auto& c : checks) {
      out += std::string(c.pass ? "[pass] " : "[FAIL] ") + c.name;
      if (!c.witness.empty()) out += ": " + c.witness;
      out += "\n";
    }
    return out;
  }
};

}  // namespace fp
