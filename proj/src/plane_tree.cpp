#include "locallim/plane_tree.hpp"

#include <charconv>

#include "locallim/errors.hpp"

namespace locallim {

PlaneTree PlaneTree::from_child_counts(std::vector<int> counts, int radius) {
  if (radius < 0) throw ContractViolation("plane tree radius must be non-negative");
  // Walk the BFS levels: `level` vertices at the current depth, each of
  // which must have a count while depth < radius.
  std::size_t pos = 0;
  long long level = 1, size = 1;
  for (int depth = 0; depth < radius && level > 0; ++depth) {
    long long next = 0;
    for (long long i = 0; i < level; ++i) {
      if (pos >= counts.size())
        throw ContractViolation("plane tree child-count list too short");
      if (counts[pos] < 0) throw ContractViolation("negative child count");
      next += counts[pos++];
    }
    size += next;
    level = next;
  }
  if (pos != counts.size()) throw ContractViolation("plane tree child-count list too long");
  PlaneTree t;
  t.child_counts = std::move(counts);
  t.size = static_cast<int>(size);
  t.radius = radius;
  return t;
}

std::vector<int> PlaneTree::parents() const {
  std::vector<int> parent{-1};
  parent.reserve(static_cast<std::size_t>(size));
  for (std::size_t i = 0; i < child_counts.size(); ++i)
    for (int c = 0; c < child_counts[i]; ++c) parent.push_back(static_cast<int>(i));
  return parent;
}

std::vector<int> PlaneTree::depths() const {
  auto parent = parents();
  std::vector<int> depth(parent.size(), 0);
  for (std::size_t i = 1; i < parent.size(); ++i) depth[i] = depth[parent[i]] + 1;
  return depth;
}

std::string PlaneTree::to_string() const {
  std::string out = std::to_string(radius) + ":";
  for (std::size_t i = 0; i < child_counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(child_counts[i]);
  }
  return out;
}

PlaneTree PlaneTree::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ContractViolation("plane tree must look like \"radius:d1,d2,...\"");
  auto to_int = [](std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw ContractViolation("bad integer in plane tree: \"" + std::string(s) + "\"");
    return value;
  };
  int radius = to_int(text.substr(0, colon));
  std::vector<int> counts;
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    counts.push_back(to_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return from_child_counts(std::move(counts), radius);
}

}  // namespace locallim
