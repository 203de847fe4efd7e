#include "wsnacc/clustering.hpp"

#include "wsnacc/error.hpp"
#include "wsnacc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace wsnacc {

namespace {

void check_radius(double radius) {
  if (!(radius >= 0.0))
    throw DomainError("radius must be >= 0");
}

// Group of `center` over `candidates`, which must be sorted by id.
Group group_of(const Field &field, double radius, NodeId center,
               std::span<const NodeId> candidates) {
  Group g{center, {}, 0.0};
  const Node &c = field.node(center);
  for (NodeId j : candidates) {
    if (j == center)
      continue;
    const double d = euclidean_distance(c, field.node(j));
    if (d <= radius) {
      g.members.push_back(j);
      g.max_distance = std::max(g.max_distance, d);
    }
  }
  return g;
}

// True if `a` should be chosen over `b`.
bool preferred(const Group &a, const Group &b) {
  if (a.members.size() != b.members.size())
    return a.members.size() > b.members.size();
  if (a.max_distance != b.max_distance)
    return a.max_distance < b.max_distance;
  return a.center < b.center;
}

} // namespace

GroupMap compute_groups(const Field &field, double radius,
                        std::span<const NodeId> candidates) {
  check_radius(radius);
  std::vector<NodeId> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("compute_groups: duplicate candidate id");
  for (NodeId id : sorted)
    if (!field.contains(id))
      throw DomainError("compute_groups: unknown node id " +
                        std::to_string(id));
  GroupMap groups;
  for (NodeId i : sorted)
    groups.emplace(i, group_of(field, radius, i, sorted));
  return groups;
}

Cluster select_next_cluster(const GroupMap &groups) {
  if (groups.empty())
    throw DomainError("select_next_cluster: no candidate groups");
  const Group *best = nullptr;
  for (const auto &[id, g] : groups)
    if (best == nullptr || preferred(g, *best))
      best = &g;
  return Cluster{best->center, best->members};
}

Clustering cluster_field(const Field &field, double radius) {
  check_radius(radius);
  const auto nodes = field.nodes();
  const std::size_t m = nodes.size();

  // Work on positions in id order with a precomputed distance table; the
  // selection rule is the same as compute_groups + select_next_cluster.
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k)
    order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a].id < nodes[b].id;
  });
  std::vector<double> dist(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      dist[a * m + b] =
          euclidean_distance(nodes[order[a]], nodes[order[b]]);

  std::vector<char> unclustered(m, 1);
  std::size_t remaining = m;
  Clustering result;
  result.radius = radius;
  while (remaining > 0) {
    Group best;
    std::size_t best_pos = m;
    std::vector<std::size_t> best_members;
    for (std::size_t i = 0; i < m; ++i) {
      if (!unclustered[i])
        continue;
      Group g{nodes[order[i]].id, {}, 0.0};
      std::vector<std::size_t> positions;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i || !unclustered[j])
          continue;
        const double d = dist[i * m + j];
        if (d <= radius) {
          g.members.push_back(nodes[order[j]].id);
          positions.push_back(j);
          g.max_distance = std::max(g.max_distance, d);
        }
      }
      if (best_pos == m || preferred(g, best)) {
        best = std::move(g);
        best_pos = i;
        best_members = std::move(positions);
      }
    }
    unclustered[best_pos] = 0;
    for (std::size_t j : best_members)
      unclustered[j] = 0;
    remaining -= 1 + best_members.size();
    result.clusters.push_back(Cluster{best.center, std::move(best.members)});
  }
  return result;
}

double average_cluster_count(std::size_t m, double width, double height,
                             double radius, std::size_t trials,
                             std::uint64_t seed) {
  if (trials == 0)
    throw DomainError("average_cluster_count: trials must be >= 1");
  std::size_t total = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Field field = deploy_random(m, width, height, mix_seed(seed, t));
    total += cluster_field(field, radius).clusters.size();
  }
  return static_cast<double>(total) / static_cast<double>(trials);
}

std::string check_partition(const Field &field, const Clustering &clustering) {
  std::unordered_map<NodeId, int> seen;
  for (NodeId id : field.ids())
    seen[id] = 0;
  auto visit = [&](NodeId id) -> std::string {
    auto it = seen.find(id);
    if (it == seen.end())
      return "node " + std::to_string(id) + " is not in the field";
    if (++it->second > 1)
      return "node " + std::to_string(id) + " appears in more than one cluster";
    return {};
  };
  for (const auto &c : clustering.clusters) {
    if (auto err = visit(c.head); !err.empty())
      return err;
    for (NodeId j : c.members) {
      if (j == c.head)
        return "head " + std::to_string(j) + " listed as its own member";
      if (auto err = visit(j); !err.empty())
        return err;
      const double d = euclidean_distance(field.node(c.head), field.node(j));
      if (d > clustering.radius)
        return "member " + std::to_string(j) + " is " + std::to_string(d) +
               " from head " + std::to_string(c.head) + ", beyond radius";
    }
  }
  for (const auto &[id, count] : seen)
    if (count == 0)
      return "node " + std::to_string(id) + " is in no cluster";
  return {};
}

void write_clustering(std::ostream &out, const Clustering &clustering) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", clustering.radius);
  out << "# wsnacc clustering: " << clustering.clusters.size()
      << " clusters\n";
  out << "radius " << buf << '\n';
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    const auto &c = clustering.clusters[k];
    out << "cluster " << k + 1 << " head " << c.head << " members";
    if (c.members.empty())
      out << " -";
    for (NodeId j : c.members)
      out << ' ' << j;
    out << '\n';
  }
}

Clustering read_clustering(std::istream &in, const std::string &source) {
  Clustering result;
  bool have_radius = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &msg) {
    throw ParseError(source, line_no, 0, msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key))
      continue;
    if (key == "radius") {
      if (!(ls >> result.radius) || have_radius)
        fail("bad or duplicate radius record");
      have_radius = true;
    } else if (key == "cluster") {
      std::size_t order = 0;
      std::string head_kw, members_kw;
      Cluster c;
      if (!(ls >> order >> head_kw >> c.head >> members_kw) ||
          head_kw != "head" || members_kw != "members")
        fail("expected 'cluster <n> head <id> members <ids>'");
      if (order != result.clusters.size() + 1)
        fail("cluster records out of order");
      std::string tok;
      while (ls >> tok) {
        if (tok == "-")
          continue;
        try {
          std::size_t used = 0;
          const auto v = std::stoul(tok, &used);
          if (used != tok.size())
            fail("bad member id '" + tok + "'");
          c.members.push_back(static_cast<NodeId>(v));
        } catch (const std::logic_error &) {
          fail("bad member id '" + tok + "'");
        }
      }
      result.clusters.push_back(std::move(c));
    } else {
      fail("unknown record '" + key + "'");
    }
  }
  if (!have_radius)
    fail("missing radius record");
  return result;
}

} // namespace wsnacc
