#ifndef SAVER_SDF_HPP
#define SAVER_SDF_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saver/common.hpp"
#include "saver/projection.hpp"
#include "saver/sets.hpp"

namespace saver {

// g(y) = ||y - c||_q - r. Exact signed distance in the ball's own norm:
// negative inside, zero on the boundary, positive outside.
inline double eval_norm_ball(const NormBallSpec& spec, const Point& y) {
  if (spec.dimension() != y.size()) {
    throw spec_error("norm ball/point dimension mismatch");
  }
  if (!all_finite(y)) throw input_error("evaluation point must be finite");
  return norm_of(y - spec.center, spec.order) - spec.radius;
}

// Signed Euclidean distance to the polytope boundary. Inside (A y <= b with
// zero slack tolerance) this is minus the distance to the nearest facet
// hyperplane; outside it is the distance to the projection onto the set.
inline double eval_polytope(const PolytopeSpec& spec, const Point& y,
                            const ProjectionOptions& opts = {}) {
  if (spec.dimension() != y.size()) {
    throw spec_error("polytope/point dimension mismatch");
  }
  if (!all_finite(y)) throw input_error("evaluation point must be finite");
  Vector slack = spec.b() - spec.a() * y;
  if ((slack.array() >= 0.0).all()) {
    return -(slack.cwiseQuotient(spec.row_norms())).minCoeff();
  }
  return distance_to_polytope(spec, y, opts);
}

enum class SetKind { norm_ball, polytope, union_, intersection, complement, difference, shifted };

// A constraint set represented by an evaluable signed distance function:
// primitive balls and polytopes, boolean combinations of them, and level
// shifts g - theta. Membership is evaluate(y) <= 0.
//
// Combination values are formed by min/max/negation of the children, which
// preserves the sign (and therefore membership) exactly but makes the
// magnitude a pseudo-distance rather than a true Euclidean distance. The
// level-set family {g <= theta} is still nested in theta, which is all that
// set modification needs.
//
// Immutable value type; cheap to copy and safe to evaluate from any number
// of threads.
class SetSpec {
 public:
  static SetSpec norm_ball(NormBallSpec spec) {
    return SetSpec(std::make_shared<const Node>(Node::make_ball(std::move(spec))));
  }

  static SetSpec norm_ball(Point center, double radius, NormOrder order = NormOrder::two) {
    return norm_ball(NormBallSpec(std::move(center), radius, order));
  }

  static SetSpec polytope(PolytopeSpec spec) {
    return SetSpec(std::make_shared<const Node>(Node::make_poly(std::move(spec))));
  }

  static SetSpec polytope(Matrix a, Vector b) {
    return polytope(PolytopeSpec(std::move(a), std::move(b)));
  }

  static SetSpec union_of(SetSpec lhs, SetSpec rhs) {
    return combine(SetKind::union_, std::move(lhs), std::move(rhs));
  }

  static SetSpec intersection_of(SetSpec lhs, SetSpec rhs) {
    return combine(SetKind::intersection, std::move(lhs), std::move(rhs));
  }

  static SetSpec complement_of(SetSpec inner) {
    auto node = std::make_shared<Node>();
    node->kind = SetKind::complement;
    node->dimension = inner.dimension();
    node->children.push_back(std::move(inner));
    return SetSpec(std::move(node));
  }

  static SetSpec difference_of(SetSpec lhs, SetSpec rhs) {
    return combine(SetKind::difference, std::move(lhs), std::move(rhs));
  }

  // The set {y : g(y) - theta <= 0}: positive theta grows the set, negative
  // theta shrinks it. Stacked shifts merge by summing, and a net shift of
  // zero hands back the unshifted spec.
  SetSpec shift_level(double theta) const {
    SetSpec inner = kind() == SetKind::shifted ? child(0) : *this;
    double total = level_shift() + theta;
    if (total == 0.0) return inner;
    auto node = std::make_shared<Node>();
    node->kind = SetKind::shifted;
    node->dimension = inner.dimension();
    node->theta = total;
    node->children.push_back(std::move(inner));
    return SetSpec(std::move(node));
  }

  SetKind kind() const { return node_->kind; }
  Eigen::Index dimension() const { return node_->dimension; }

  // The shift of a shifted node; 0 for every other kind.
  double level_shift() const { return node_->theta; }

  const NormBallSpec& norm_ball_spec() const {
    if (!node_->ball) throw state_error("spec is not a norm ball");
    return *node_->ball;
  }

  const PolytopeSpec& polytope_spec() const {
    if (!node_->poly) throw state_error("spec is not a polytope");
    return *node_->poly;
  }

  std::size_t child_count() const { return node_->children.size(); }

  const SetSpec& child(std::size_t i) const {
    if (i >= node_->children.size()) throw state_error("child index out of range");
    return node_->children[i];
  }

  double evaluate(const Point& y, const ProjectionOptions& opts = {}) const {
    switch (node_->kind) {
      case SetKind::norm_ball:
        return eval_norm_ball(*node_->ball, y);
      case SetKind::polytope:
        return eval_polytope(*node_->poly, y, opts);
      case SetKind::union_: {
        double value = child(0).evaluate(y, opts);
        for (std::size_t i = 1; i < child_count(); ++i) {
          value = std::min(value, child(i).evaluate(y, opts));
        }
        return value;
      }
      case SetKind::intersection: {
        double value = child(0).evaluate(y, opts);
        for (std::size_t i = 1; i < child_count(); ++i) {
          value = std::max(value, child(i).evaluate(y, opts));
        }
        return value;
      }
      case SetKind::complement:
        return -child(0).evaluate(y, opts);
      case SetKind::difference:
        return std::max(child(0).evaluate(y, opts), -child(1).evaluate(y, opts));
      case SetKind::shifted:
        return child(0).evaluate(y, opts) - node_->theta;
    }
    throw spec_error("unknown set kind");
  }

  bool contains(const Point& y, const ProjectionOptions& opts = {}) const {
    return evaluate(y, opts) <= 0.0;
  }

 private:
  struct Node {
    SetKind kind = SetKind::norm_ball;
    std::optional<NormBallSpec> ball;
    std::optional<PolytopeSpec> poly;
    std::vector<SetSpec> children;
    double theta = 0.0;
    Eigen::Index dimension = 0;

    static Node make_ball(NormBallSpec spec) {
      Node n;
      n.kind = SetKind::norm_ball;
      n.dimension = spec.dimension();
      n.ball.emplace(std::move(spec));
      return n;
    }

    static Node make_poly(PolytopeSpec spec) {
      Node n;
      n.kind = SetKind::polytope;
      n.dimension = spec.dimension();
      n.poly.emplace(std::move(spec));
      return n;
    }
  };

  explicit SetSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static SetSpec combine(SetKind kind, SetSpec lhs, SetSpec rhs) {
    if (lhs.dimension() != rhs.dimension()) {
      throw spec_error("combined sets must share a dimension: " +
                       std::to_string(lhs.dimension()) + " vs " +
                       std::to_string(rhs.dimension()));
    }
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->dimension = lhs.dimension();
    node->children.push_back(std::move(lhs));
    node->children.push_back(std::move(rhs));
    return SetSpec(std::move(node));
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace saver

#endif  // SAVER_SDF_HPP
