#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "golodlab/field.hpp"

namespace golodlab::app {

using json = nlohmann::json;

const std::vector<std::string>& command_names();

struct ModuleSpec {
  std::string type = "residue-field";  // residue-field | regular | ideal | presentation
  int shift = 0;
  std::vector<std::string> generators;
  std::vector<int> degrees;
  std::vector<std::vector<std::string>> relations;
};

struct ConstructionSpec {
  std::string type;  // trivial-extension | fibre | iterated-fibre | fibre-over-field
  std::vector<std::string> ideal;
  int n = 2;
  std::vector<std::string> second_ideal;
};

struct MasseySpec {
  std::string mode = "module";
  int order = 3;
  std::size_t tuple_limit = 20000;
  std::size_t budget = 10000;
  std::vector<std::array<int, 3>> classes;  // (l, d, index) of a basis class
};

struct ProblemSpec {
  json raw;
  std::string command;
  FieldSpec field;
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::vector<std::string> ideal;
  std::optional<ModuleSpec> module;
  std::optional<ConstructionSpec> construction;
  int h_cap = 6;
  std::optional<int> d_cap;
  bool certify = true;
  MasseySpec massey;
  std::string theorem;
  std::vector<int> theorem_ns{2, 3};
};

/// Validates the document; InputError messages start with the offending field path.
ProblemSpec parse_spec(const json& doc);

struct RunOptions {
  std::optional<std::string> command;
  std::optional<int> max_h, max_d;
  std::optional<std::string> field;
  bool timing = false;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

/// Executes one command. Library errors propagate as exceptions.
RunResult run(const ProblemSpec& spec, const RunOptions& options);

std::string emit_text(const json& report);

/// Maps an exception to the documented exit status (2 input, 3 cap, 4 internal).
int exit_code_for(const std::exception& e);

}  // namespace golodlab::app
