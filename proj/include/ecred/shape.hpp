#ifndef ECRED_SHAPE_HPP
#define ECRED_SHAPE_HPP

#include "ecred/cubic_ring.hpp"
#include "ecred/interval.hpp"

namespace ecred {

/// The rank-2 traceless sublattice of the maximal order of K_f, embedded in
/// K tensor R with the norm |alpha|^2 = sum over embeddings of |sigma(alpha)|^2
/// (complex embeddings weighted twice).
class TracelessLattice {
  public:
    /// Builds the lattice for any separable monic cubic (etale algebras
    /// included). Rejects disc = 0.
    explicit TracelessLattice(const MonicCubic& f);

    /// Gram matrix entries of the two basis vectors (certified intervals).
    const Interval& g11() const { return g11_; }
    const Interval& g12() const { return g12_; }
    const Interval& g22() const { return g22_; }

    /// |m b1 + n b2|^2 as an interval.
    Interval norm2(const Int& m, const Int& n) const;

    /// Successive minima (lengths, not squares). Certified enclosures.
    void minima(Interval& l1, Interval& l2) const;

    /// Number of primitive traceless elements with |alpha| < Y, counting
    /// antipodal pairs once. Comparisons whose enclosures straddle Y raise.
    Int count_primitive_below(const Interval& Y) const;

    /// Coordinates (over the maximal-order basis) of the two lattice
    /// basis vectors, for inspection in tests.
    std::array<std::array<Int, 3>, 2> basis_coords() const { return coords_; }

    const Int& field_disc() const { return disc_field_; }

  private:
    Interval g11_, g12_, g22_;
    std::array<std::array<Int, 3>, 2> coords_;
    Int disc_field_;
};

struct Shape {
    Interval l1, l2;
    Interval skewness; // l2 / l1 >= 1
};

/// Shape of the maximal order of the cubic field K_f. Requires f irreducible
/// with nonzero discriminant; enclosures have relative width below 2^-40.
Shape shape(const MonicCubic& f);

/// Lattice-point count of primitive traceless elements below Y (pairs
/// +-alpha counted once), as in the trichotomy bound: 0 below l1, 1 between
/// l1 and l2, area-regime beyond.
Int count_traceless_primitive(const MonicCubic& f, const Rat& Y);

bool is_irreducible_cubic(const MonicCubic& f);

} // namespace ecred

#endif
