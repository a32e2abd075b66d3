#include "prg/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prg {

bool contains(const HPolytope& P, const Eigen::VectorXd& x, double tol) {
  if (P.rows() > 0 && P.dim() != x.size())
    throw std::invalid_argument("contains: dimension mismatch");
  for (int i = 0; i < P.rows(); ++i)
    if (P.H.row(i).dot(x) > P.h(i) + tol) return false;
  return true;
}

lp::Outcome support(const HPolytope& P, const Eigen::VectorXd& dir) {
  return lp::maximize(dir, P.H, P.h);
}

std::pair<HPolytope, int> append_nonredundant(const HPolytope& P,
                                              const Eigen::MatrixXd& rows,
                                              const Eigen::VectorXd& rhs,
                                              double redundancy_tol) {
  if (rows.rows() != rhs.size())
    throw std::invalid_argument("append_nonredundant: rhs length mismatch");
  HPolytope out = P;
  int appended = 0;
  for (int i = 0; i < rows.rows(); ++i) {
    lp::Outcome s = support(out, rows.row(i).transpose());
    bool keep = s.status == lp::Status::unbounded ||
                (s.status == lp::Status::optimal &&
                 s.value > rhs(i) + redundancy_tol * std::max(1.0, std::abs(rhs(i))));
    if (s.status == lp::Status::infeasible)
      throw std::runtime_error("append_nonredundant: polytope is empty");
    if (keep) {
      out.H.conservativeResize(out.H.rows() + 1, rows.cols());
      out.H.row(out.H.rows() - 1) = rows.row(i);
      out.h.conservativeResize(out.h.size() + 1);
      out.h(out.h.size() - 1) = rhs(i);
      ++appended;
    }
  }
  return {out, appended};
}

namespace {

// Every row of Q holds on all of P.
bool included(const HPolytope& P, const HPolytope& Q, double tol) {
  for (int i = 0; i < Q.rows(); ++i) {
    Eigen::VectorXd dir = Q.H.row(i).transpose();
    lp::Outcome s = support(P, dir);
    if (s.status == lp::Status::unbounded) {
      // P extends to infinity along dir; Q must as well for equality.
      if (support(Q, dir).status != lp::Status::unbounded) return false;
      continue;
    }
    if (s.status != lp::Status::optimal || s.value > Q.h(i) + tol) return false;
  }
  return true;
}

}  // namespace

bool set_equal(const HPolytope& P, const HPolytope& Q, double tol) {
  if (P.dim() != Q.dim() && P.rows() > 0 && Q.rows() > 0)
    throw std::invalid_argument("set_equal: dimension mismatch");
  return included(P, Q, tol) && included(Q, P, tol);
}

std::vector<Eigen::Vector2d> vertices_2d(const HPolytope& P) {
  if (P.dim() != 2) throw std::invalid_argument("vertices_2d: dimension must be 2");
  // Boundedness check via coordinate supports.
  for (int i = 0; i < 2; ++i) {
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(2);
      dir(i) = s;
      lp::Outcome o = support(P, dir);
      if (o.status == lp::Status::unbounded)
        throw std::runtime_error("vertices_2d: polytope is unbounded");
      if (o.status == lp::Status::infeasible)
        throw std::runtime_error("vertices_2d: polytope is empty");
    }
  }
  std::vector<Eigen::Vector2d> verts;
  const int m = P.rows();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Eigen::Matrix2d M;
      M.row(0) = P.H.row(i);
      M.row(1) = P.H.row(j);
      if (std::abs(M.determinant()) < 1e-12) continue;
      Eigen::Vector2d v = M.inverse() * Eigen::Vector2d(P.h(i), P.h(j));
      if (!contains(P, v, 1e-7)) continue;
      bool dup = false;
      for (const auto& w : verts)
        if ((w - v).norm() < 1e-8) { dup = true; break; }
      if (!dup) verts.push_back(v);
    }
  }
  if (verts.empty()) throw std::runtime_error("vertices_2d: no vertices found");
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& v : verts) centroid += v;
  centroid /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(),
            [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
                     std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
            });
  return verts;
}

std::string polytope_csv(const HPolytope& P) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < P.rows(); ++i) {
    for (int j = 0; j < P.dim(); ++j) os << P.H(i, j) << ",";
    os << P.h(i) << "\n";
  }
  return os.str();
}

std::string vertices_csv(const std::vector<Eigen::Vector2d>& verts) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y\n";
  for (const auto& v : verts) os << v.x() << "," << v.y() << "\n";
  return os.str();
}

std::string polygon_svg(const std::vector<std::vector<Eigen::Vector2d>>& polys,
                        const std::vector<std::string>& colors) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& poly : polys) {
    for (const auto& v : poly) {
      xmin = std::min(xmin, v.x());
      xmax = std::max(xmax, v.x());
      ymin = std::min(ymin, v.y());
      ymax = std::max(ymax, v.y());
    }
  }
  if (polys.empty() || xmin > xmax) { xmin = ymin = -1; xmax = ymax = 1; }
  double mx = 0.1 * (xmax - xmin + 1e-9), my = 0.1 * (ymax - ymin + 1e-9);
  xmin -= mx; xmax += mx; ymin -= my; ymax += my;
  const double W = 480, H = 480;
  auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * W; };
  auto sy = [&](double y) { return H - (y - ymin) / (ymax - ymin) * H; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  for (size_t p = 0; p < polys.size(); ++p) {
    const std::string& color = p < colors.size() ? colors[p] : "black";
    os << "<path d=\"";
    for (size_t i = 0; i < polys[p].size(); ++i)
      os << (i == 0 ? "M" : "L") << sx(polys[p][i].x()) << " " << sy(polys[p][i].y());
    os << "Z\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"" << color
       << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace prg
