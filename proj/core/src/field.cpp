#include "wsnacc/field.hpp"

#include "wsnacc/error.hpp"
#include "wsnacc/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace wsnacc {

double euclidean_distance(const Point &a, const Point &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

bool finite(const Point &p) { return std::isfinite(p.x) && std::isfinite(p.y); }

} // namespace

Field::Field(std::vector<Node> nodes, std::vector<TracingPoint> tracing_points,
             double sigma_s2, double sigma_n2,
             std::optional<NodeId> designated_head)
    : nodes_(std::move(nodes)), tracing_points_(std::move(tracing_points)),
      sigma_s2_(sigma_s2), sigma_n2_(sigma_n2), head_(designated_head) {
  if (nodes_.empty())
    throw DomainError("field needs at least one node");
  if (tracing_points_.empty())
    throw DomainError("field needs at least one tracing point");
  if (!(sigma_s2_ > 0.0) || !std::isfinite(sigma_s2_))
    throw DomainError("sigma_s2 must be > 0");
  if (!(sigma_n2_ >= 0.0) || !std::isfinite(sigma_n2_))
    throw DomainError("sigma_n2 must be >= 0");
  std::unordered_set<NodeId> seen;
  for (const auto &n : nodes_) {
    if (!seen.insert(n.id).second)
      throw DomainError("duplicate node id " + std::to_string(n.id));
    if (!finite(n.position))
      throw DomainError("node " + std::to_string(n.id) +
                        " has non-finite coordinates");
  }
  for (const auto &t : tracing_points_)
    if (!finite(t))
      throw DomainError("tracing point has non-finite coordinates");
  if (head_ && !seen.contains(*head_))
    throw DomainError("designated head " + std::to_string(*head_) +
                      " is not a node of the field");
}

bool Field::contains(NodeId id) const noexcept {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [id](const Node &n) { return n.id == id; });
}

const Node &Field::node(NodeId id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(),
                         [id](const Node &n) { return n.id == id; });
  if (it == nodes_.end())
    throw DomainError("unknown node id " + std::to_string(id));
  return *it;
}

std::vector<NodeId> Field::ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto &n : nodes_)
    out.push_back(n.id);
  return out;
}

Field Field::with_variances(double sigma_s2, double sigma_n2) const {
  return Field(nodes_, tracing_points_, sigma_s2, sigma_n2, head_);
}

Field Field::with_tracing_points(std::vector<TracingPoint> points) const {
  return Field(nodes_, std::move(points), sigma_s2_, sigma_n2_, head_);
}

Field deploy_grid(std::size_t rows, std::size_t cols, double spacing,
                  Corner head_corner, double sigma_s2, double sigma_n2) {
  if (rows == 0 || cols == 0)
    throw DomainError("deploy_grid: rows and cols must be >= 1");
  if (!(spacing > 0.0))
    throw DomainError("deploy_grid: spacing must be > 0");
  std::vector<Node> nodes;
  nodes.reserve(rows * cols);
  for (std::size_t row = 0; row < rows; ++row)
    for (std::size_t col = 0; col < cols; ++col)
      nodes.push_back({static_cast<NodeId>(row * cols + col),
                       {static_cast<double>(col) * spacing,
                        static_cast<double>(row) * spacing}});
  const std::size_t last_row = rows - 1;
  const std::size_t last_col = cols - 1;
  std::size_t head = 0;
  switch (head_corner) {
  case Corner::BottomLeft: head = 0; break;
  case Corner::BottomRight: head = last_col; break;
  case Corner::TopLeft: head = last_row * cols; break;
  case Corner::TopRight: head = last_row * cols + last_col; break;
  }
  const Point centre{static_cast<double>(last_col) * spacing / 2.0,
                     static_cast<double>(last_row) * spacing / 2.0};
  return Field(std::move(nodes), {centre}, sigma_s2, sigma_n2,
               static_cast<NodeId>(head));
}

Field deploy_random(std::size_t m, double width, double height,
                    std::uint64_t seed, double sigma_s2, double sigma_n2) {
  if (m == 0)
    throw DomainError("deploy_random: m must be >= 1");
  if (!(width >= 0.0) || !(height >= 0.0))
    throw DomainError("deploy_random: width and height must be >= 0");
  Rng rng(seed);
  std::vector<Node> nodes;
  nodes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = rng.uniform(0.0, width);
    const double y = rng.uniform(0.0, height);
    nodes.push_back({static_cast<NodeId>(i), {x, y}});
  }
  return Field(std::move(nodes), {{width / 2.0, height / 2.0}}, sigma_s2,
               sigma_n2);
}

Field deploy_circular(std::size_t m, double radius, Point center,
                      double sigma_s2, double sigma_n2) {
  if (m == 0)
    throw DomainError("deploy_circular: m must be >= 1");
  if (!(radius >= 0.0))
    throw DomainError("deploy_circular: radius must be >= 0");
  std::vector<Node> nodes;
  nodes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    // Quarter turns are snapped so axis-aligned nodes land exactly.
    double c = std::cos(angle), s = std::sin(angle);
    if ((4 * i) % m == 0) {
      const std::size_t quarter = (4 * i) / m;
      const double cs[] = {1, 0, -1, 0};
      const double sn[] = {0, 1, 0, -1};
      c = cs[quarter % 4];
      s = sn[quarter % 4];
    }
    nodes.push_back(
        {static_cast<NodeId>(i), {center.x + radius * c, center.y + radius * s}});
  }
  return Field(std::move(nodes), {center}, sigma_s2, sigma_n2);
}

// Serialization -------------------------------------------------------------

void write_field(std::ostream &out, const Field &field) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "# wsnacc field: " << field.size() << " nodes, "
      << field.tracing_points().size() << " tracing points\n";
  out << "sigma_s2 " << field.sigma_s2() << '\n';
  out << "sigma_n2 " << field.sigma_n2() << '\n';
  if (field.designated_head())
    out << "head " << *field.designated_head() << '\n';
  for (const auto &n : field.nodes())
    out << "node " << n.id << ' ' << n.position.x << ' ' << n.position.y
        << '\n';
  for (const auto &t : field.tracing_points())
    out << "tracing " << t.x << ' ' << t.y << '\n';
  out.flags(old_flags);
  out.precision(old_precision);
}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;
};

std::vector<Token> tokenize(const std::string &line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size() || line[i] == '#')
      break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineParser {
public:
  LineParser(const std::string &source, std::size_t line,
             const std::vector<Token> &tokens)
      : source_(source), line_(line), tokens_(tokens) {}

  void expect_count(std::size_t n) const {
    if (tokens_.size() != n)
      throw ParseError(source_, line_,
                       tokens_.size() > n ? tokens_[n].column : 0,
                       "'" + tokens_[0].text + "' expects " +
                           std::to_string(n - 1) + " argument(s)");
  }

  double real(std::size_t k) const {
    const auto &tok = tokens_[k];
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok.text, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.text.size() || !std::isfinite(v))
      throw ParseError(source_, line_, tok.column,
                       "expected a finite number, got '" + tok.text + "'");
    return v;
  }

  NodeId id(std::size_t k) const {
    const auto &tok = tokens_[k];
    unsigned long long v = 0;
    std::size_t used = 0;
    bool ok = !tok.text.empty() && tok.text[0] != '-' && tok.text[0] != '+';
    if (ok) {
      try {
        v = std::stoull(tok.text, &used);
      } catch (const std::exception &) {
        ok = false;
      }
    }
    if (!ok || used != tok.text.size() || v > 0xffffffffULL)
      throw ParseError(source_, line_, tok.column,
                       "expected a node id, got '" + tok.text + "'");
    return static_cast<NodeId>(v);
  }

private:
  const std::string &source_;
  std::size_t line_;
  const std::vector<Token> &tokens_;
};

} // namespace

Field read_field(std::istream &in, const std::string &source) {
  std::vector<Node> nodes;
  std::vector<TracingPoint> tracing;
  std::optional<double> sigma_s2, sigma_n2;
  std::optional<NodeId> head;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty())
      continue;
    LineParser p(source, line_no, tokens);
    const std::string &key = tokens[0].text;
    if (key == "node") {
      p.expect_count(4);
      nodes.push_back({p.id(1), {p.real(2), p.real(3)}});
    } else if (key == "tracing") {
      p.expect_count(3);
      tracing.push_back({p.real(1), p.real(2)});
    } else if (key == "sigma_s2" || key == "sigma_n2") {
      p.expect_count(2);
      auto &slot = key == "sigma_s2" ? sigma_s2 : sigma_n2;
      if (slot)
        throw ParseError(source, line_no, 1, "duplicate '" + key + "'");
      slot = p.real(1);
    } else if (key == "head") {
      p.expect_count(2);
      if (head)
        throw ParseError(source, line_no, 1, "duplicate 'head'");
      head = p.id(1);
    } else {
      throw ParseError(source, line_no, tokens[0].column,
                       "unknown record '" + key + "'");
    }
  }
  if (!sigma_s2)
    throw ParseError(source, line_no, 0, "missing 'sigma_s2'");
  if (!sigma_n2)
    throw ParseError(source, line_no, 0, "missing 'sigma_n2'");
  try {
    return Field(std::move(nodes), std::move(tracing), *sigma_s2, *sigma_n2,
                 head);
  } catch (const DomainError &e) {
    throw ParseError(source, line_no, 0, e.what());
  }
}

Field read_field_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path, 0, 0, "cannot open file");
  return read_field(in, path);
}

} // namespace wsnacc
