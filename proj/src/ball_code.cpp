#include "locallim/ball_code.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>

#include "locallim/errors.hpp"

namespace locallim {

namespace {

constexpr std::int64_t kMaxSearchLeaves = 2'000'000;

std::string join_sorted(std::vector<std::string>& parts) {
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ')';
  return out;
}

// AHU codes bottom-up; `order` lists vertices so that parents precede
// children.
std::string ahu(const std::vector<int>& parent, const std::vector<int>& order) {
  std::vector<std::vector<std::string>> child_codes(parent.size());
  std::string root_code;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    std::string code = join_sorted(child_codes[v]);
    child_codes[v].clear();
    child_codes[v].shrink_to_fit();
    if (parent[v] < 0) {
      root_code = std::move(code);
    } else {
      child_codes[parent[v]].push_back(std::move(code));
    }
  }
  return root_code;
}

// Canonical form of a rooted graph with cycles: pendant trees are folded
// into vertex colours, then the remaining vertices are canonically ordered
// by colour refinement plus individualisation, keeping the lexicographically
// smallest serialisation over all search leaves.
class CyclicCoder {
 public:
  explicit CyclicCoder(const RootedBall& b) : b_(b) {}

  std::string run() {
    fold_pendant_trees();
    std::vector<int> initial(keys_.size());
    {
      std::vector<std::string> sorted_keys = keys_;
      std::sort(sorted_keys.begin(), sorted_keys.end());
      sorted_keys.erase(std::unique(sorted_keys.begin(), sorted_keys.end()), sorted_keys.end());
      for (std::size_t i = 0; i < keys_.size(); ++i)
        initial[i] = static_cast<int>(
            std::lower_bound(sorted_keys.begin(), sorted_keys.end(), keys_[i]) -
            sorted_keys.begin());
    }
    std::vector<int> prefix;
    search(std::move(initial), prefix);
    return "G" + best_;
  }

 private:
  void fold_pendant_trees() {
    const auto& g = b_.graph;
    const int n = g.n();
    std::vector<int> deg(static_cast<std::size_t>(n) + 1);
    std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
    std::vector<std::vector<std::string>> hanging(static_cast<std::size_t>(n) + 1);
    std::vector<int> stack;
    for (int v = 1; v <= n; ++v) {
      deg[v] = g.degree(v);
      if (deg[v] == 1 && v != b_.root) stack.push_back(v);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      alive[v] = 0;
      std::string code = join_sorted(hanging[v]);
      for (int w : g.neighbors(v)) {
        if (!alive[w]) continue;
        hanging[w].push_back(std::move(code));
        if (--deg[w] == 1 && w != b_.root) stack.push_back(w);
        break;
      }
    }
    std::vector<int> index(static_cast<std::size_t>(n) + 1, -1);
    for (int v = 1; v <= n; ++v) {
      if (!alive[v]) continue;
      index[v] = static_cast<int>(vertices_.size());
      vertices_.push_back(v);
      keys_.push_back(std::to_string(b_.depth[v]) + "|" + join_sorted(hanging[v]));
    }
    adj_.resize(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (int w : g.neighbors(vertices_[i]))
        if (index[w] >= 0) adj_[i].push_back(index[w]);
  }

  static int distinct(const std::vector<int>& color) {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  // Rank-normalised equitable refinement. Ranks depend only on the
  // signatures, so the result is invariant under relabelling.
  std::vector<int> refine(std::vector<int> color) const {
    const std::size_t r = color.size();
    int cells = distinct(color);
    while (true) {
      std::vector<std::pair<int, std::vector<int>>> sig(r);
      for (std::size_t v = 0; v < r; ++v) {
        sig[v].first = color[v];
        for (int w : adj_[v]) sig[v].second.push_back(color[w]);
        std::sort(sig[v].second.begin(), sig[v].second.end());
      }
      auto sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<int> next(r);
      for (std::size_t v = 0; v < r; ++v)
        next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) -
                                   sorted.begin());
      int next_cells = static_cast<int>(sorted.size());
      color = std::move(next);
      if (next_cells == cells) return color;
      cells = next_cells;
    }
  }

  // Individualisation-refinement search. A leaf whose certificate equals
  // the first leaf's yields an automorphism; the search then unwinds to the
  // level where that leaf left the first path, and at every node cell
  // members in the orbit of an explored one (under automorphisms fixing the
  // prefix) are skipped. Returns the depth to unwind to.
  std::size_t search(std::vector<int> color, std::vector<int>& prefix) {
    color = refine(std::move(color));
    const int r = static_cast<int>(color.size());
    const std::size_t depth = prefix.size();
    if (distinct(color) == r) {
      if (++leaves_ > kMaxSearchLeaves)
        throw OversizeError("ball_code: canonical search exceeded its leaf budget");
      return leaf(color, prefix);
    }
    // First (smallest colour) non-singleton cell.
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < r; ++v) cells[color[v]].push_back(v);
    std::vector<int> target;
    for (auto& [c, members] : cells) {
      if (members.size() > 1) {
        target = std::move(members);
        break;
      }
    }
    std::vector<int> explored;
    for (int v : target) {
      if (!explored.empty() && same_orbit(v, explored, prefix)) continue;
      explored.push_back(v);
      std::vector<int> split(static_cast<std::size_t>(r));
      for (int w = 0; w < r; ++w) split[w] = 2 * color[w] + 1;
      split[v] = 2 * color[v];
      prefix.push_back(v);
      std::size_t unwind = search(std::move(split), prefix);
      prefix.pop_back();
      if (unwind < depth) return unwind;
    }
    return depth;
  }

  bool same_orbit(int v, const std::vector<int>& explored, const std::vector<int>& prefix) {
    const int r = static_cast<int>(keys_.size());
    std::vector<int> root(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) root[i] = i;
    auto find = [&root](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return gamma[p] == p; });
      if (!fixes) continue;
      for (int i = 0; i < r; ++i) root[find(i)] = find(gamma[i]);
    }
    for (int u : explored)
      if (find(u) == find(v)) return true;
    return false;
  }

  std::size_t leaf(const std::vector<int>& color, const std::vector<int>& prefix) {
    const int r = static_cast<int>(color.size());
    std::vector<int> order(static_cast<std::size_t>(r));
    for (int v = 0; v < r; ++v) order[color[v]] = v;
    std::string s = std::to_string(r) + ";";
    for (int pos = 0; pos < r; ++pos) s += keys_[order[pos]] + ";";
    for (int pos = 0; pos < r; ++pos) {
      std::vector<int> nb;
      for (int w : adj_[order[pos]]) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      for (int x : nb) s += std::to_string(x) + ",";
      s += ";";
    }
    if (first_order_.empty()) {
      first_order_ = order;
      first_prefix_ = prefix;
      first_cert_ = s;
      best_ = std::move(s);
      return prefix.size();
    }
    if (s < best_) best_ = s;
    if (s != first_cert_) return prefix.size();
    std::vector<int> gamma(static_cast<std::size_t>(r));
    for (int pos = 0; pos < r; ++pos) gamma[first_order_[pos]] = order[pos];
    automorphisms_.push_back(std::move(gamma));
    std::size_t level = 0;
    while (level < prefix.size() && level < first_prefix_.size() &&
           prefix[level] == first_prefix_[level])
      ++level;
    return level;
  }

  const RootedBall& b_;
  std::vector<int> vertices_;
  std::vector<std::string> keys_;
  std::vector<std::vector<int>> adj_;
  std::string best_;
  std::string first_cert_;
  std::vector<int> first_order_;
  std::vector<int> first_prefix_;
  std::vector<std::vector<int>> automorphisms_;
  std::int64_t leaves_ = 0;
};

}  // namespace

std::string BallCode::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

BallCode BallCode::from_hex(std::string_view hex) {
  if (hex.size() % 2) throw ContractViolation("odd-length hex ball code");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ContractViolation("bad hex digit in ball code");
  };
  BallCode code;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    code.bytes += static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1]));
  code.is_tree = !code.bytes.empty() && code.bytes[0] == 'T';
  return code;
}

BallCode tree_code_from_parents(const std::vector<int>& parent) {
  std::vector<std::vector<int>> children(parent.size());
  int root = -1;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) {
      root = static_cast<int>(v);
    } else {
      children[parent[v]].push_back(static_cast<int>(v));
    }
  }
  std::vector<int> order{root};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int c : children[order[head]]) order.push_back(c);
  return {"T" + ahu(parent, order), true};
}

BallCode tree_code(const PlaneTree& t) { return tree_code_from_parents(t.parents()); }

BallCode ball_code(const RootedBall& b, int limit) {
  const auto& g = b.graph;
  if (b.is_tree()) {
    // BFS from the root gives parents before children.
    std::vector<int> parent(static_cast<std::size_t>(g.n()) + 1, -2);
    std::vector<int> order{b.root};
    parent[b.root] = -1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (int w : g.neighbors(v)) {
        if (parent[w] == -2) {
          parent[w] = v;
          order.push_back(w);
        }
      }
    }
    return {"T" + ahu(parent, order), true};
  }
  if (g.n() > limit)
    throw OversizeError("ball_code: ball with " + std::to_string(g.n()) +
                        " vertices exceeds the limit of " + std::to_string(limit));
  return {CyclicCoder(b).run(), false};
}

}  // namespace locallim
