#pragma once

#include <string>

#include <json.hpp>

#include "berezin/inequalities.hpp"

namespace berezin {

/**
 * Operand documents map names to models:
 *   {"S": {"kind": "matrix", "entries": [[[1, 0.2], [0, 0]], [[0, 0], [2, 0.5]]]},
 *    "T": {"kind": "dphi", "rho": 0.5, "shift": [0.41, 0]}}
 * Complex scalars are [re, im] pairs. Unknown keys are rejected.
 */
Operands parse_operands(const nlohmann::ordered_json& doc);
Operands parse_operands_text(const std::string& text);
Operands load_operands(const std::string& path);

OperatorModel parse_operand(const nlohmann::ordered_json& spec);

/// Inverse of parse_operand for leaf models, optionally shifted by a multiple of I.
/// Other expression trees are materialized when the space is finite and rejected otherwise.
nlohmann::ordered_json operand_to_json(const OperatorModel& op);
nlohmann::ordered_json operands_to_json(const Operands& ops);

}  // namespace berezin
