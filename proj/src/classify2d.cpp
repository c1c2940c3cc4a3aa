#include "lcpatlas/classify2d.hpp"

#include "lcpatlas/analysis.hpp"
#include "lcpatlas/equivalence.hpp"
#include "lcpatlas/lcp_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace lcpatlas {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

double circ_dist(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, kTwoPi - d);
}

// Angular sector spanned by the cone of two rays (the short way around).
struct AngularCone {
  double start = 0.0;
  double width = 0.0;
  bool contains(double a) const { return wrap(a - start) < width; }
};

AngularCone short_sector(double a, double b) {
  const double d = wrap(b - a);
  if (d <= kPi) return {wrap(a), d};
  return {wrap(b), kTwoPi - d};
}

struct Arrangement2D {
  std::array<double, 4> cuts{};       // sorted ray angles
  std::array<double, 4> midpoints{};  // one per cell
  std::array<AngularCone, 4> cones{}; // alpha = {}, {1}, {2}, {1,2}
};

Arrangement2D arrangement_at(double theta1, double theta2) {
  Arrangement2D ar;
  const double a1 = wrap(theta1);
  const double a2 = wrap(theta2 + kHalfPi);
  ar.cuts = {0.0, kHalfPi, a1, a2};
  std::sort(ar.cuts.begin(), ar.cuts.end());
  for (int c = 0; c < 4; ++c) {
    const double hi = c == 3 ? ar.cuts[0] + kTwoPi : ar.cuts[c + 1];
    ar.midpoints[c] = wrap(0.5 * (ar.cuts[c] + hi));
  }
  ar.cones[0] = short_sector(0.0, kHalfPi);
  ar.cones[1] = short_sector(a1, kHalfPi);
  ar.cones[2] = short_sector(0.0, a2);
  ar.cones[3] = short_sector(a1, a2);
  return ar;
}

}  // namespace

std::string unstable_family_name(UnstableFamily2D f) {
  switch (f) {
    case UnstableFamily2D::Column: return "U_COLUMN";
    case UnstableFamily2D::Subspace: return "U_SUBSPACE";
    case UnstableFamily2D::NotRegular: return "U_R0";
  }
  return "?";
}

bool Signature2D::operator==(const Signature2D& o) const {
  return is_p == o.is_p && fingerprint == o.fingerprint && profile == o.profile;
}

bool Signature2D::operator<(const Signature2D& o) const {
  if (fingerprint != o.fingerprint) return fingerprint < o.fingerprint;
  if (profile != o.profile) return profile < o.profile;
  return is_p < o.is_p;
}

std::string Signature2D::to_string() const {
  std::ostringstream os;
  os << (is_p ? "P" : "-") << " counts[";
  for (int i = 0; i < 4; ++i) os << fingerprint[i] << (i < 3 ? "," : "");
  os << "] cones[";
  for (int i = 0; i < 4; ++i) os << profile[i] << (i < 3 ? "," : "");
  os << "]";
  return os.str();
}

Signature2D signature_at(double theta1, double theta2) {
  const Arrangement2D ar = arrangement_at(theta1, theta2);
  Signature2D sig;
  std::array<int, 4> per_cone{};
  for (int c = 0; c < 4; ++c) {
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      if (ar.cones[k].contains(ar.midpoints[c])) {
        ++count;
        ++per_cone[k];
      }
    }
    sig.fingerprint[c] = count;
  }
  std::sort(sig.fingerprint.begin(), sig.fingerprint.end());
  sig.profile = per_cone;
  std::sort(sig.profile.begin(), sig.profile.end());
  const double t1 = wrap(theta1);
  const double t2 = wrap(theta2);
  sig.is_p = t1 > kHalfPi && t1 < 3 * kHalfPi && t2 > kHalfPi && t2 < 3 * kHalfPi &&
             std::cos(t1 - t2) > 0;
  return sig;
}

int degree_at(double theta1, double theta2) {
  const Arrangement2D ar = arrangement_at(theta1, theta2);
  const std::array<int, 4> index = {
      1,
      std::cos(theta1) < 0 ? 1 : -1,
      std::cos(theta2) < 0 ? 1 : -1,
      std::cos(theta1 - theta2) > 0 ? 1 : -1,
  };
  int deg = 0;
  for (int k = 0; k < 4; ++k)
    if (ar.cones[k].contains(ar.midpoints[0])) deg += index[k];
  return deg;
}

double line_proximity_2d(double theta1, double theta2, UnstableFamily2D* nearest) {
  const double t1 = wrap(theta1);
  const double t2 = wrap(theta2);
  const double delta = wrap(t2 - t1);

  const double d_sub = std::min({circ_dist(delta, kHalfPi) / kSqrt2,
                                 circ_dist(t1, 3 * kHalfPi),
                                 circ_dist(t2, kHalfPi)});
  const double d_r0 = std::min({circ_dist(delta, 3 * kHalfPi) / kSqrt2,
                                circ_dist(t1, kHalfPi),
                                circ_dist(t2, 3 * kHalfPi),
                                circ_dist(t1, 0.0),
                                circ_dist(t2, 0.0)});
  if (nearest) *nearest = d_sub <= d_r0 ? UnstableFamily2D::Subspace : UnstableFamily2D::NotRegular;
  return std::min(d_sub, d_r0);
}

std::optional<UnstableFamily2D> unstable_family_2d(const NormalForm2D& nf, double tol) {
  if (nf.r1 * nf.r2 == 0) return UnstableFamily2D::Column;
  UnstableFamily2D fam{};
  if (line_proximity_2d(nf.theta1, nf.theta2, &fam) <= tol) return fam;
  return std::nullopt;
}

const ClassInfo2D* ClassTable2D::find(const Signature2D& sig) const {
  for (const auto& c : classes)
    if (c.signature == sig) return &c;
  return nullptr;
}

ClassTable2D class_table_2d(int resolution) {
  if (resolution < 16 || resolution > 4096)
    throw InputError("class_table_2d: resolution out of range [16, 4096]");
  const int R = resolution;
  const double step = kTwoPi / R;
  auto angle = [&](int i) { return (i + 0.5) * step; };

  // -1 = unstable, -2 = stable unvisited, >= 0 = component id.
  std::vector<int> comp(static_cast<std::size_t>(R) * R, -2);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j)
      if (line_proximity_2d(angle(i), angle(j)) <= 0.5 * step)
        comp[static_cast<std::size_t>(i) * R + j] = -1;

  struct Component {
    Signature2D sig;
    long cells = 0;
    int rep_i = 0, rep_j = 0;
  };
  std::vector<Component> components;
  std::vector<std::pair<int, int>> stack;
  for (int i0 = 0; i0 < R; ++i0) {
    for (int j0 = 0; j0 < R; ++j0) {
      if (comp[static_cast<std::size_t>(i0) * R + j0] != -2) continue;
      const int id = static_cast<int>(components.size());
      Component c;
      c.sig = signature_at(angle(i0), angle(j0));
      c.rep_i = i0;
      c.rep_j = j0;
      stack.clear();
      stack.emplace_back(i0, j0);
      comp[static_cast<std::size_t>(i0) * R + j0] = id;
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        ++c.cells;
        if (!(signature_at(angle(i), angle(j)) == c.sig))
          throw NumericError("class_table_2d: signature changed inside a connected component");
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = i + di[d];
          const int nj = j + dj[d];
          if (ni < 0 || ni >= R || nj < 0 || nj >= R) continue;  // the borders are cut lines
          auto& cell = comp[static_cast<std::size_t>(ni) * R + nj];
          if (cell != -2) continue;
          cell = id;
          stack.emplace_back(ni, nj);
        }
      }
      components.push_back(std::move(c));
    }
  }

  std::map<Signature2D, ClassInfo2D> by_sig;
  for (const auto& c : components) {
    auto& info = by_sig[c.sig];
    if (info.spatial_components == 0) {
      info.signature = c.sig;
      info.rep_theta1 = angle(c.rep_i);
      info.rep_theta2 = angle(c.rep_j);
    }
    info.spatial_components += 1;
    info.cell_count += c.cells;
  }
  if (by_sig.size() != 5) {
    std::ostringstream os;
    os << "class_table_2d: expected 5 merged classes, found " << by_sig.size();
    throw NumericError(os.str());
  }

  ClassTable2D table;
  table.resolution = R;
  table.spatial_components_total = static_cast<int>(components.size());

  const ClassInfo2D* p_class = nullptr;
  const ClassInfo2D* solvable_class = nullptr;
  std::vector<const ClassInfo2D*> rest;
  for (const auto& [sig, info] : by_sig) {
    if (sig.is_p) {
      if (p_class) throw NumericError("class_table_2d: two P signatures");
      p_class = &info;
    } else if (*std::min_element(sig.fingerprint.begin(), sig.fingerprint.end()) >= 1) {
      if (solvable_class) throw NumericError("class_table_2d: two non-P everywhere-solvable signatures");
      solvable_class = &info;
    } else {
      rest.push_back(&info);
    }
  }
  if (!p_class || !solvable_class || rest.size() != 3)
    throw NumericError("class_table_2d: unexpected class layout");
  std::sort(rest.begin(), rest.end(),
            [](const ClassInfo2D* a, const ClassInfo2D* b) { return a->signature < b->signature; });

  table.classes = {*p_class, *rest[0], *solvable_class, *rest[1], *rest[2]};
  for (int i = 0; i < 5; ++i) {
    table.classes[i].name = "C" + std::to_string(i + 1);
    table.classes[i].degree = degree_at(table.classes[i].rep_theta1, table.classes[i].rep_theta2);
  }

  table.grid.assign(comp.size(), 0);
  long unstable = 0;
  for (std::size_t idx = 0; idx < comp.size(); ++idx) {
    if (comp[idx] < 0) {
      ++unstable;
      continue;
    }
    const Signature2D& sig = components[comp[idx]].sig;
    for (int k = 0; k < 5; ++k) {
      if (table.classes[k].signature == sig) {
        table.grid[idx] = static_cast<std::uint8_t>(k + 1);
        break;
      }
    }
  }
  table.unstable_cells = unstable;
  return table;
}

const ClassTable2D& cached_class_table_2d() {
  static const ClassTable2D table = class_table_2d(720);
  return table;
}

MatrixClass2D classify_2d(const Mat& M, const Tolerances& tol, bool with_degree) {
  check_square(M, "M");
  if (M.rows() != 2) throw UnsupportedDimension("classify_2d: n must be 2");

  MatrixClass2D out;
  const NormalForm2D nf = normal_form_2d(M);
  out.theta1 = nf.theta1;
  out.theta2 = nf.theta2;
  if (nf.r1 * nf.r2 == 0) {
    out.label = unstable_family_name(UnstableFamily2D::Column);
    out.nearest_family = out.label;
    out.stable = false;
    out.line_proximity = 0.0;
    out.proximity_warning = true;
    return out;
  }

  UnstableFamily2D fam{};
  out.line_proximity = line_proximity_2d(nf.theta1, nf.theta2, &fam);
  out.nearest_family = unstable_family_name(fam);
  if (unstable_family_2d(nf, 1e-7)) {
    out.label = out.nearest_family;
    out.stable = false;
    out.proximity_warning = true;
    return out;
  }

  out.stable = true;
  out.proximity_warning = out.line_proximity <= 1e-3;
  out.signature = signature_at(nf.theta1, nf.theta2);
  const ClassInfo2D* info = cached_class_table_2d().find(*out.signature);
  if (!info)
    throw NumericError("classify_2d: signature not in the class table: " +
                       out.signature->to_string());
  out.label = info->name;
  if (with_degree) out.degree = degree(M, 12345, tol).degree;
  return out;
}

QRegion2D q_region_2d(const Mat& M, const Tolerances& tol) {
  check_square(M, "M");
  if (M.rows() != 2) throw UnsupportedDimension("q_region_2d: n must be 2");
  const MatrixClass2D cls = classify_2d(M, tol, /*with_degree=*/false);
  if (!cls.stable)
    throw UnstableMatrixError("q_region_2d: matrix is unstable (" + cls.label + ")");

  QRegion2D region;
  for (const Sector2D& sector : cells_2d(M)) {
    QCell2D cell;
    cell.sector = sector;
    const Vec dir = sector.midpoint_dir();
    for_each_subset(2, [&](const IndexSet& alpha) {
      if (cone_membership(complementary_matrix(M, alpha), dir, tol)) {
        ++cell.solution_count;
        cell.index_sum += index_at(M, alpha);
      }
    });
    if (cell.solution_count == 0) ++region.holes;
    region.cells.push_back(cell);
  }
  region.covers_plane = region.holes == 0;
  return region;
}

}  // namespace lcpatlas
