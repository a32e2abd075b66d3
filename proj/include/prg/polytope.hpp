#ifndef PRG_POLYTOPE_HPP_
#define PRG_POLYTOPE_HPP_

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "prg/lp.hpp"

namespace prg {

// Halfspace representation {x : H x <= h}. Zero rows means all of R^n.
struct HPolytope {
  Eigen::MatrixXd H;
  Eigen::VectorXd h;

  int rows() const { return static_cast<int>(H.rows()); }
  int dim() const { return static_cast<int>(H.cols()); }
};

bool contains(const HPolytope& P, const Eigen::VectorXd& x, double tol);

// support(P, dir) = maximize(dir, H, h).
lp::Outcome support(const HPolytope& P, const Eigen::VectorXd& dir);

// Screens the candidate rows in order, each against the polytope including
// the rows appended so far; a row is kept iff its support exceeds its rhs
// (relative tolerance) or the support LP is unbounded.
std::pair<HPolytope, int> append_nonredundant(const HPolytope& P,
                                              const Eigen::MatrixXd& rows,
                                              const Eigen::VectorXd& rhs,
                                              double redundancy_tol = 1e-9);

// Mutual inclusion by LP. An unbounded support on one side makes the
// inclusion fail unless the other set is unbounded in that direction too.
bool set_equal(const HPolytope& P, const HPolytope& Q, double tol);

// Extreme points of a bounded 2-D polytope, CCW about the centroid.
// Throws on dim() != 2, unbounded, or empty sets.
std::vector<Eigen::Vector2d> vertices_2d(const HPolytope& P);

std::string polytope_csv(const HPolytope& P);
std::string vertices_csv(const std::vector<Eigen::Vector2d>& verts);
std::string polygon_svg(const std::vector<std::vector<Eigen::Vector2d>>& polys,
                        const std::vector<std::string>& colors);

}  // namespace prg

#endif  // PRG_POLYTOPE_HPP_
