#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocs/error.hpp"

namespace ocs {

using NodeId = std::size_t;

/// An instruction list stored as an arena of nodes linked by index.
///
/// A well-formed list starts at `head`, every content node names its
/// successor, and the chain ends at one empty node with no content and no
/// successor. The arena can also hold malformed shapes (cycles, orphans,
/// content-carrying terminals) so that parsers can keep what they read and
/// leave judgement to the checker.
template <class T>
struct NodeList {
  struct Node {
    std::optional<T> content;
    std::optional<NodeId> next;

    bool is_empty() const noexcept { return !content && !next; }
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;
  NodeId head = 0;

  friend bool operator==(const NodeList&, const NodeList&) = default;
};

template <class T>
NodeList<T> to_linked(std::span<const T> items) {
  NodeList<T> list;
  list.nodes.reserve(items.size() + 1);
  for (std::size_t i = 0; i < items.size(); ++i) list.nodes.push_back({items[i], i + 1});
  list.nodes.push_back({std::nullopt, std::nullopt});
  list.head = 0;
  return list;
}

template <class T>
NodeList<T> to_linked(const std::vector<T>& items) {
  return to_linked(std::span<const T>(items));
}

/// The node ids reached from the head, in order, ending with the terminal.
/// Throws CyclicList, MalformedTerminal, DanglingLink.
template <class T>
std::vector<NodeId> chain_of(const NodeList<T>& list) {
  std::vector<NodeId> chain;
  std::vector<bool> seen(list.nodes.size(), false);
  NodeId cur = list.head;
  while (true) {
    if (cur >= list.nodes.size()) {
      throw Error(ErrorCode::DanglingLink, "link to node " + std::to_string(cur) + " outside the list");
    }
    if (seen[cur]) throw Error(ErrorCode::CyclicList, "node " + std::to_string(cur) + " is revisited");
    seen[cur] = true;
    chain.push_back(cur);
    const auto& node = list.nodes[cur];
    if (!node.next) {
      if (node.content) {
        throw Error(ErrorCode::MalformedTerminal, "terminal node " + std::to_string(cur) + " carries content");
      }
      return chain;
    }
    if (!node.content) {
      throw Error(ErrorCode::MalformedTerminal,
                  "empty node " + std::to_string(cur) + " has a successor");
    }
    cur = *node.next;
  }
}

/// Inverse of to_linked. Throws as chain_of.
template <class T>
std::vector<T> from_linked(const NodeList<T>& list) {
  std::vector<T> out;
  for (auto id : chain_of(list)) {
    if (list.nodes[id].content) out.push_back(*list.nodes[id].content);
  }
  return out;
}

/// Strict order along the chain: true iff `a` occurs before `b`. Throws
/// NodeNotInList when either is unreachable from the head.
template <class T>
bool precedes(const NodeList<T>& list, NodeId a, NodeId b) {
  auto chain = chain_of(list);
  std::optional<std::size_t> ia, ib;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == a) ia = i;
    if (chain[i] == b) ib = i;
  }
  if (!ia || !ib) {
    throw Error(ErrorCode::NodeNotInList, "node " + std::to_string(ia ? b : a) + " is not reachable from the head");
  }
  return *ia < *ib;
}

/// Structural faults of an arena, without throwing.
struct ListDiagnostics {
  std::vector<NodeId> extra_heads;          // nodes besides the head with no predecessor
  std::vector<NodeId> cycle_nodes;          // nodes lying on a cycle
  std::vector<NodeId> content_terminals;    // no successor but carries content
  std::vector<NodeId> linked_empty_nodes;   // no content but has a successor
  std::vector<NodeId> dangling;             // successor index outside the arena
  bool head_missing = false;

  bool clean() const noexcept {
    return extra_heads.empty() && cycle_nodes.empty() && content_terminals.empty() &&
           linked_empty_nodes.empty() && dangling.empty() && !head_missing;
  }
};

template <class T>
ListDiagnostics diagnose(const NodeList<T>& list) {
  ListDiagnostics d;
  const auto n = list.nodes.size();
  if (list.head >= n) d.head_missing = true;
  std::vector<std::size_t> indegree(n, 0);
  for (NodeId i = 0; i < n; ++i) {
    const auto& node = list.nodes[i];
    if (node.next) {
      if (*node.next >= n) {
        d.dangling.push_back(i);
      } else {
        ++indegree[*node.next];
      }
      if (!node.content) d.linked_empty_nodes.push_back(i);
    } else if (node.content) {
      d.content_terminals.push_back(i);
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    if (i != list.head && indegree[i] == 0) d.extra_heads.push_back(i);
  }
  // Each node has at most one successor, so walking from every node with a
  // three-colour marking finds every cycle.
  enum : unsigned char { White, Grey, Black };
  std::vector<unsigned char> colour(n, White);
  std::vector<bool> on_cycle(n, false);
  for (NodeId start = 0; start < n; ++start) {
    std::vector<NodeId> path;
    NodeId cur = start;
    bool ended = false;
    while (cur < n && colour[cur] == White) {
      colour[cur] = Grey;
      path.push_back(cur);
      if (!list.nodes[cur].next) {
        ended = true;
        break;
      }
      cur = *list.nodes[cur].next;
    }
    if (!ended && cur < n && colour[cur] == Grey) {
      bool in = false;
      for (auto p : path) {
        if (p == cur) in = true;
        if (in) on_cycle[p] = true;
      }
    }
    for (auto p : path) colour[p] = Black;
  }
  for (NodeId i = 0; i < n; ++i) {
    if (on_cycle[i]) d.cycle_nodes.push_back(i);
  }
  return d;
}

}  // namespace ocs
