#pragma once

#include <vector>

#include "hymlab/geometry.hpp"

namespace hymlab {

// Scalar (p,q)-form on the torus, components over strictly increasing
// multi-indices stored as bitmasks of complex axes.  The form is
//   alpha = sum_{I,J} comp[I,J] dz^I wedge dzbar^J
// with no implicit factors of i.  Masks are enumerated in ascending numeric
// order, which for dim_c <= 2 coincides with lexicographic subset order.
struct FormField {
  int p = 0, q = 0;
  Grid grid;
  std::vector<Plane> comps;  // indexed iI * nmasks(q) + iJ

  static FormField zero(const Grid& g, int p, int q);
  Plane& at(unsigned maskI, unsigned maskJ);
  const Plane& at(unsigned maskI, unsigned maskJ) const;
};

// Bitmask subset enumeration for the multi-index bookkeeping.
std::vector<unsigned> index_masks(int n, int p);
int mask_position(int n, int p, unsigned mask);
// Sign of inserting axis `a` in front of the sorted factors of `mask`.
int insert_sign(int a, unsigned mask);
// Sign of concatenating sorted factor lists A then B (disjoint) and sorting.
int merge_sign(unsigned a, unsigned b);

FormField dbar(const FormField& f, const SpectralEngine& fft);  // (p, q+1)
FormField del(const FormField& f, const SpectralEngine& fft);   // (p+1, q)
FormField wedge(const FormField& f, const FormField& g);

// omega as a FormField: comps i*g[j][k] against dz^j wedge dzbar^k.
FormField omega_form(const HermitianBase& base);

// Integral of an (n,n)-form over the torus (plain Lebesgue pairing, no
// metric weight): dz^{1..n} wedge dzbar^{1..n} = (-1)^{n(n-1)/2} (-2i)^n d^{2n}x.
cplx integrate_top(const FormField& f);

// Conversions between a scalar (1,1) FormField and islot planes (coefficients
// against i dz^j wedge dzbar^k): islot = -i * comp.
std::vector<Plane> form_to_islots(const FormField& f);
FormField islots_to_form(const Grid& g, const std::vector<Plane>& islots);

double sup_abs(const FormField& f);

// sup |del dbar omega| over components; identically zero is the Gauduchon
// property.  Returns 0 for dim_c = 1 (no (2,2)-forms).
double gauduchon_residual(const HermitianBase& base);

}  // namespace hymlab
