#pragma once

// Statement-level control-flow graphs: one node per simple statement or
// condition, with short-circuit && / || expanded into nested conditions.

#include <string>
#include <vector>

#include "ctllint/ast.hpp"
#include "ctllint/sema.hpp"

namespace ctllint {

using NodeId = int;

enum class NodeKind { Entry, Exit, Stmt, Cond };
enum class EdgeLabel { Unconditional, True, False };

struct CfgNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Stmt;
  const ast::Stmt* stmt = nullptr;  // Stmt nodes
  const ast::Expr* cond = nullptr;  // Cond nodes; null means the constant-true
                                    // condition of `for (;;)`
  SourceLocation loc;
  bool reachable = true;
};

struct CfgEdge {
  NodeId from = 0;
  NodeId to = 0;
  EdgeLabel label = EdgeLabel::Unconditional;
};

struct Cfg {
  std::string function;
  const ast::FunctionDef* def = nullptr;
  std::vector<CfgNode> nodes;
  std::vector<CfgEdge> edges;
  NodeId entry = 0;
  NodeId exit = 0;
  FunctionSymbols symbols;

  // Edge indices, in insertion order.
  std::vector<std::vector<int>> out_edges;
  std::vector<std::vector<int>> in_edges;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<NodeId> successors(NodeId n) const;
  std::vector<NodeId> predecessors(NodeId n) const;
  // Target of the outgoing edge of `n` with the given label, or -1.
  NodeId successor(NodeId n, EdgeLabel label) const;
  // Label of an edge from `from` to `to` (first match), if any.
  const CfgEdge* edge_between(NodeId from, NodeId to) const;
};

// Precondition: `f` belongs to `tu` and `tu` is well formed.
Cfg build_cfg(const ast::TranslationUnit& tu, const ast::FunctionDef& f);

// Graphviz rendering for --dump-cfg.
std::string to_dot(const Cfg& cfg);

// Short human-readable text of a node ("x = (y + 1)", "if (p != 0)", "entry").
std::string describe(const CfgNode& node);

}  // namespace ctllint
