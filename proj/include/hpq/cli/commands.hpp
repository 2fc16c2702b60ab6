#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "hpq/cli/config.hpp"
#include "hpq/hermite_pade.hpp"

namespace hpq::cli {

enum class Command { hp, equilibrium, converge, figures, verify };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command c);

using Json = nlohmann::ordered_json;

Json system_to_json(const NikishinSystem& sys);
NikishinSystem system_from_json(const Json& j);

/// Coefficients as decimal strings together with the system they belong to.
Json triple_to_json(const NikishinSystem& sys, const hp::HPTriple& t);
/// Reloads the coefficients of an hp_<n>.json document at its stored
/// precision and re-expands Q0 + Q1 f1 + Q2 f2 to recompute the order.
int reexpand_residual_order(const Json& j);

/// Runs one command. Artifacts go to cfg.output_dir; progress lines go to
/// `log`. Returns the process exit status; on failure the output directory
/// keeps whatever was written plus a `.failed` marker.
int run(Command c, const RunConfig& cfg, std::ostream& log);

}  // namespace hpq::cli
