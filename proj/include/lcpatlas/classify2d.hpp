#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcpatlas/cones.hpp"
#include "lcpatlas/equivalence.hpp"
#include "lcpatlas/types.hpp"

namespace lcpatlas {

// Families of 2x2 matrices whose solution structure is not perturbation-proof:
// a vanishing column, a column pair whose image collapses (continua of
// solutions on a subspace of offsets), or failure of the zero-offset
// regularity needed for a well-defined solution degree (folds along the
// coordinate rays included).
enum class UnstableFamily2D { Column, Subspace, NotRegular };
std::string unstable_family_name(UnstableFamily2D f);  // U_COLUMN, U_SUBSPACE, U_R0

// Family owning (theta1, theta2): Column if a column vanishes (r1*r2 = 0),
// else the family of the nearest unstable line if within `tol` radians,
// else nullopt (the matrix is stable).
std::optional<UnstableFamily2D> unstable_family_2d(const NormalForm2D& nf, double tol = 1e-7);

// Perturbation-proof signature of a stable 2x2 matrix: four rays cut the
// offset plane into four sectors; `fingerprint` is the sorted multiset of
// solution counts per sector, `profile` the sorted multiset of sectors each
// complementary cone covers.
struct Signature2D {
  bool is_p = false;
  std::array<int, 4> fingerprint{};
  std::array<int, 4> profile{};
  bool operator==(const Signature2D& o) const;
  bool operator<(const Signature2D& o) const;
  std::string to_string() const;
};

// Requires (theta1, theta2) strictly off the unstable lines.
Signature2D signature_at(double theta1, double theta2);

// Sum of local solution indices for a generic offset, from angles alone.
int degree_at(double theta1, double theta2);

// Torus distance from (theta1, theta2) to the nearest unstable line; the
// family owning that line is written through `nearest` when non-null.
double line_proximity_2d(double theta1, double theta2, UnstableFamily2D* nearest = nullptr);

struct ClassInfo2D {
  std::string name;  // C1..C5
  Signature2D signature;
  int spatial_components = 0;
  long cell_count = 0;
  double rep_theta1 = 0.0;
  double rep_theta2 = 0.0;
  int degree = 0;  // degree at the representative (classes may mix degrees)
};

struct ClassTable2D {
  int resolution = 0;
  std::vector<ClassInfo2D> classes;  // exactly 5, named C1..C5
  int spatial_components_total = 0;
  long unstable_cells = 0;
  std::vector<std::uint8_t> grid;  // row-major (i = theta1 index), 0 = unstable, else class index + 1
  std::uint8_t label_at(int i, int j) const { return grid[static_cast<std::size_t>(i) * resolution + j]; }
  const ClassInfo2D* find(const Signature2D& sig) const;
};

// Sweeps an angle grid (cell centers, spacing 2*pi/resolution), marks cells
// within half a step of an unstable line, flood-fills the rest with
// 4-connectivity, and merges components carrying the same signature.
// C1 is the P class, C3 the other everywhere-solvable class, the rest are
// ordered by (fingerprint, profile).
ClassTable2D class_table_2d(int resolution = 720);
const ClassTable2D& cached_class_table_2d();

struct MatrixClass2D {
  std::string label;  // C1..C5 or U_COLUMN / U_SUBSPACE / U_R0
  bool stable = false;
  double line_proximity = 0.0;           // angular distance to the nearest unstable line
  std::string nearest_family;            // family owning that line
  bool proximity_warning = false;        // within 1e-3 of a line
  std::optional<Signature2D> signature;  // stable only
  std::optional<int> degree;             // stable only, exact (enumeration-backed)
  double theta1 = 0.0;
  double theta2 = 0.0;
};

MatrixClass2D classify_2d(const Mat& M, const Tolerances& tol = {}, bool with_degree = true);

// Solution count and index sum per sector of the offset plane, at the
// sector's angular midpoint. Requires a stable matrix (counts are constant
// on each open sector then).
struct QCell2D {
  Sector2D sector;
  int solution_count = 0;
  int index_sum = 0;
};
struct QRegion2D {
  std::vector<QCell2D> cells;
  bool covers_plane = false;  // every cell has a solution
  int holes = 0;              // number of zero-count cells
};
QRegion2D q_region_2d(const Mat& M, const Tolerances& tol = {});

}  // namespace lcpatlas
