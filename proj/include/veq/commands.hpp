#pragma once

// Command dispatch for the veq tool. Each command yields one record with
// the fields verb, status, payload and, for series commands, precision.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "veq/error.hpp"
#include "veq/workspace.hpp"

namespace veq {

struct CommandOptions {
  std::size_t budget = 10000;
  std::optional<std::size_t> prec;
  std::size_t kmax = 0;  // 0: |B|
  std::size_t depth = 2;
  std::size_t vars = 2;
};

struct CommandRecord {
  std::string verb;
  std::string status;
  nlohmann::json payload = nlohmann::json::object();
  std::optional<std::size_t> precision;
  bool negative = false;  // a domain-level "no"
};

const std::vector<std::string>& command_verbs();

/// Throws veq::Error for bad arguments or failed invariants.
CommandRecord run_command(const Workspace& ws, const std::string& verb, const std::vector<std::string>& args,
                          const CommandOptions& opts);

/// One line, keys sorted.
std::string render_json(const CommandRecord& r);
std::string render_human(const CommandRecord& r);
std::string render_error_json(const std::string& verb, const Error& e);

/// 0 success, 1 domain-level negative.
int exit_code(const CommandRecord& r);
/// 2 for input errors, 3 for broken invariants. Load-time errors are always 2.
int exit_code(const Error& e, bool at_load);

}  // namespace veq
