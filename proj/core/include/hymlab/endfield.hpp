#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hymlab/geometry.hpp"

namespace hymlab {

// Block-support pattern for End(E)-valued fields on a direct sum of line
// bundles: component (j,k) may be nonzero only when the factors carry equal
// degree.  Equal-degree factors are contiguous (degrees are nonincreasing),
// so the pattern is a block-diagonal partition.
struct BlockMask {
  int rank = 0;
  std::vector<std::pair<int, int>> blocks;  // (offset, size), covering 0..rank

  static BlockMask full(int rank) {
    BlockMask m;
    m.rank = rank;
    m.blocks = {{0, rank}};
    return m;
  }

  static BlockMask from_degrees(const std::vector<int>& degrees) {
    BlockMask m;
    m.rank = static_cast<int>(degrees.size());
    int start = 0;
    for (int j = 1; j <= m.rank; ++j) {
      if (j == m.rank || degrees[j] != degrees[start]) {
        m.blocks.emplace_back(start, j - start);
        start = j;
      }
    }
    return m;
  }

  bool allows(int j, int k) const {
    for (const auto& [o, s] : blocks)
      if (j >= o && j < o + s) return k >= o && k < o + s;
    return false;
  }

  bool is_full() const { return blocks.size() == 1; }

  bool operator==(const BlockMask&) const = default;
};

// End(E)-valued 0-form: one Plane per matrix entry, entry-major storage
// (entry (j,k) is the contiguous plane at index j*rank + k).  Planes outside
// the mask are identically zero.
struct EndField {
  Grid grid;
  int rank = 0;
  BlockMask mask;
  std::vector<Plane> entry;

  static EndField zero(const Grid& g, const BlockMask& m) {
    EndField f;
    f.grid = g;
    f.rank = m.rank;
    f.mask = m;
    f.entry.assign(static_cast<std::size_t>(m.rank) * m.rank, make_plane(g));
    return f;
  }

  static EndField identity(const Grid& g, const BlockMask& m) {
    EndField f = zero(g, m);
    for (int j = 0; j < m.rank; ++j)
      for (auto& v : f.at(j, j)) v = 1.0;
    return f;
  }

  Plane& at(int j, int k) { return entry[static_cast<std::size_t>(j) * rank + k]; }
  const Plane& at(int j, int k) const {
    return entry[static_cast<std::size_t>(j) * rank + k];
  }

  // Dense matrix at one grid point.
  Eigen::MatrixXcd point(std::size_t p) const {
    Eigen::MatrixXcd m(rank, rank);
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) m(j, k) = at(j, k)[p];
    return m;
  }

  void set_point(std::size_t p, const Eigen::MatrixXcd& m) {
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) entry[static_cast<std::size_t>(j) * rank + k][p] = m(j, k);
  }
};

// End(E)-valued (0,1)- or (1,0)-form: one EndField per complex axis.
struct EndForm1 {
  std::vector<EndField> comp;  // size dim_c
};

// End(E)-valued (1,1)-form in islot convention: coefficient matrices against
// i dz^a wedge dzbar^b, slot index a*dim_c + b.
struct EndForm11 {
  Grid grid;
  int rank = 0;
  BlockMask mask;
  std::vector<EndField> slot;  // size dim_c*dim_c

  static EndForm11 zero(const Grid& g, const BlockMask& m) {
    EndForm11 f;
    f.grid = g;
    f.rank = m.rank;
    f.mask = m;
    f.slot.assign(static_cast<std::size_t>(g.dim_c) * g.dim_c, EndField::zero(g, m));
    return f;
  }

  EndField& at(int a, int b) { return slot[static_cast<std::size_t>(a) * grid.dim_c + b]; }
  const EndField& at(int a, int b) const {
    return slot[static_cast<std::size_t>(a) * grid.dim_c + b];
  }
};

// Pointwise algebra, mask-aware (products iterate only inside blocks).
EndField mul(const EndField& a, const EndField& b);
EndField add(const EndField& a, const EndField& b, cplx ca = 1.0, cplx cb = 1.0);
void add_in_place(EndField& a, const EndField& b, cplx cb = 1.0);
void scale_in_place(EndField& a, cplx c);
EndField adjoint(const EndField& a);     // conjugate transpose pointwise
void hermitize_in_place(EndField& a);    // a <- (a + a^dagger)/2
Plane trace(const EndField& a);
Plane det(const EndField& a);            // blockwise determinant product

// Blockwise pointwise inverse.  cond_estimate (Frobenius product per block)
// is tracked; values above 1e12 throw NumericalError naming the location.
EndField inverse(const EndField& a, double* max_cond = nullptr);

// Hermitian matrix functions, blockwise eigendecomposition pointwise.
EndField matfn_hermitian(const EndField& a, double (*fn)(double));
EndField exp_hermitian(const EndField& a);
EndField log_hermitian_pd(const EndField& a);   // requires positive definite
EndField sqrt_hermitian_pd(const EndField& a);

// Smallest eigenvalue over all points (Hermitian input); also reports where.
double min_eigenvalue(const EndField& a, std::size_t* where = nullptr);

// sup_x ||a(x) - a(x)^dagger||_F and sup_x ||a(x)||_F
double hermiticity_defect(const EndField& a);
double sup_frobenius(const EndField& a);

// Pointwise Frobenius-type inner product plane tr(a H^{-1} b^dagger H);
// for H = Id this is the plain Frobenius pairing tr(a b^dagger).
Plane hs_inner_plane(const EndField& a, const EndField& b, const EndField& hinv,
                     const EndField& h);
Plane hs_norm2_plane(const EndField& a, const EndField& hinv, const EndField& h);

}  // namespace hymlab
