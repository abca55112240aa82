#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polyadic/padic.hpp"
#include "polyadic/padic_ring.hpp"
#include "polyadic/residue.hpp"

namespace polyadic::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;

// Seed used for randomized sampling unless POLYADIC_SEED is set.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

// Runs the CLI with argv-style arguments (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Evaluates an expression of integer literals joined by +, -, * (with unary
// minus and parentheses) directly in Z/p^N. Throws std::invalid_argument on
// malformed input.
PAdicInt evaluate_expression(std::string_view expr, Prime p, std::size_t precision);

// {p, m, n, v, modulus, admissible, free_from}
nlohmann::ordered_json lift_solution_json(const LiftSolution& solution);

}  // namespace polyadic::cli
