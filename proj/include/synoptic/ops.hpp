#pragma once

#include <optional>
#include <string>

namespace synoptic {

// The fixed operator set shared by dataflow connections, action
// assignments and the core expression language.
enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Le, And, Or };

inline std::string op_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
  }
  return "?";
}

inline std::optional<BinOp> op_from_symbol(const std::string& s) {
  if (s == "+") return BinOp::Add;
  if (s == "-") return BinOp::Sub;
  if (s == "*") return BinOp::Mul;
  if (s == "=") return BinOp::Eq;
  if (s == "!=") return BinOp::Ne;
  if (s == "<") return BinOp::Lt;
  if (s == "<=") return BinOp::Le;
  if (s == "and") return BinOp::And;
  if (s == "or") return BinOp::Or;
  return std::nullopt;
}

}  // namespace synoptic
