#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsnacc {

using NodeId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point &, const Point &) = default;
};

struct Node {
  NodeId id = 0;
  Point position;

  friend bool operator==(const Node &, const Node &) = default;
};

using TracingPoint = Point;

double euclidean_distance(const Point &a, const Point &b);
inline double euclidean_distance(const Node &a, const Node &b) {
  return euclidean_distance(a.position, b.position);
}
inline double euclidean_distance(const Node &a, const Point &b) {
  return euclidean_distance(a.position, b);
}

enum class Corner { BottomLeft, BottomRight, TopLeft, TopRight };

/// A 2-D sensor field: nodes, tracing points and the shared signal/noise
/// variances. Node ids are unique but need not be contiguous.
class Field {
public:
  /// Validates the invariants (at least one node, distinct ids, finite
  /// coordinates, at least one tracing point, sigma_s2 > 0, sigma_n2 >= 0)
  /// and throws DomainError otherwise.
  Field(std::vector<Node> nodes, std::vector<TracingPoint> tracing_points,
        double sigma_s2, double sigma_n2,
        std::optional<NodeId> designated_head = std::nullopt);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const TracingPoint> tracing_points() const noexcept {
    return tracing_points_;
  }
  double sigma_s2() const noexcept { return sigma_s2_; }
  double sigma_n2() const noexcept { return sigma_n2_; }
  /// Noise-to-signal ratio sigma_n2 / sigma_s2.
  double gamma() const noexcept { return sigma_n2_ / sigma_s2_; }
  std::optional<NodeId> designated_head() const noexcept { return head_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  bool contains(NodeId id) const noexcept;
  /// Throws DomainError for unknown ids.
  const Node &node(NodeId id) const;
  std::vector<NodeId> ids() const;

  Field with_variances(double sigma_s2, double sigma_n2) const;
  Field with_tracing_points(std::vector<TracingPoint> points) const;

  friend bool operator==(const Field &, const Field &) = default;

private:
  std::vector<Node> nodes_;
  std::vector<TracingPoint> tracing_points_;
  double sigma_s2_;
  double sigma_n2_;
  std::optional<NodeId> head_;
};

/// rows x cols lattice, ids assigned row-major from the origin. The node at
/// `head_corner` is recorded as the designated cluster head and the single
/// tracing point sits at the lattice centre.
Field deploy_grid(std::size_t rows, std::size_t cols, double spacing,
                  Corner head_corner = Corner::BottomLeft,
                  double sigma_s2 = 1.0, double sigma_n2 = 0.1);

/// m nodes uniform on [0, width] x [0, height], drawn from Rng(seed) as
/// x then y per node. The tracing point is the rectangle centre.
Field deploy_random(std::size_t m, double width, double height,
                    std::uint64_t seed, double sigma_s2 = 1.0,
                    double sigma_n2 = 0.1);

/// m nodes equally spaced on a circle about `center`, node 0 at angle 0 and
/// proceeding counterclockwise. The tracing point is the centre.
Field deploy_circular(std::size_t m, double radius, Point center,
                      double sigma_s2 = 1.0, double sigma_n2 = 0.1);

// Text serialization. One record per line, '#' starts a comment:
//
//   sigma_s2 <real>
//   sigma_n2 <real>
//   head <id>            (optional)
//   node <id> <x> <y>    (one per node)
//   tracing <x> <y>      (one or more)
//
// Reals are written with 17 significant digits so a write/read cycle is
// lossless.

Field read_field(std::istream &in, const std::string &source = "<field>");
Field read_field_file(const std::string &path);
void write_field(std::ostream &out, const Field &field);

} // namespace wsnacc
