#pragma once

#include "wsnacc/field.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace wsnacc {

/// Candidate cluster around `center`: every other candidate node within the
/// correlation radius. Members are sorted by id.
struct Group {
  NodeId center = 0;
  std::vector<NodeId> members;
  /// Distance from the centre to its farthest member; 0 for an empty group.
  double max_distance = 0.0;

  friend bool operator==(const Group &, const Group &) = default;
};

struct Cluster {
  NodeId head = 0;
  std::vector<NodeId> members; // sorted, never contains head

  std::size_t size() const noexcept { return members.size() + 1; }

  friend bool operator==(const Cluster &, const Cluster &) = default;
};

/// Non-overlapping partition of a field, clusters in formation order.
struct Clustering {
  std::vector<Cluster> clusters;
  double radius = 0.0;

  friend bool operator==(const Clustering &, const Clustering &) = default;
};

using GroupMap = std::map<NodeId, Group>;

/// Group of every candidate over the candidate set only (nodes that already
/// belong to a cluster are not passed in). The boundary is inclusive.
/// Throws DomainError for ids missing from the field or a negative radius.
GroupMap compute_groups(const Field &field, double radius,
                        std::span<const NodeId> candidates);

/// Picks the next cluster: largest group first, then the smallest
/// farthest-member distance among equally large groups, then the lowest
/// centre id. Throws DomainError on an empty map.
Cluster select_next_cluster(const GroupMap &groups);

/// Repeatedly recomputes groups over the still-unclustered nodes and removes
/// the selected cluster until every node is assigned.
Clustering cluster_field(const Field &field, double radius);

/// Mean cluster count over `trials` random deployments; trial t uses the
/// deployment seed mix_seed(seed, t).
double average_cluster_count(std::size_t m, double width, double height,
                             double radius, std::size_t trials,
                             std::uint64_t seed);

/// Empty string when `clustering` partitions `field` with every member within
/// the radius of its head; otherwise a description of the first violation.
std::string check_partition(const Field &field, const Clustering &clustering);

// Text serialization:
//
//   radius <real>
//   cluster <order> head <id> members <id>...   ("-" when empty)

void write_clustering(std::ostream &out, const Clustering &clustering);
Clustering read_clustering(std::istream &in,
                           const std::string &source = "<clustering>");

} // namespace wsnacc
