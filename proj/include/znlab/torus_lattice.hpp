#pragma once

#include <map>
#include <utility>
#include <vector>

#include "znlab/errors.hpp"

namespace znlab {

/// Sparse Z_N exponent field on links: link index -> integer exponent.
/// Entries may be any integers; callers reduce mod N where needed.
using LinkPattern = std::map<int, int>;

/// A step of a path: a link index together with a sign.
/// On the original lattice the sign is the traversal orientation of the link;
/// on the dual lattice it is the crossing sign of the dual step over the link.
struct PathStep {
    int link;
    int sign;
};

struct LatticePath {
    enum class Kind { Original, Dual };
    Kind kind = Kind::Original;
    std::vector<PathStep> steps;
    int start = 0;  // site (original) or plaquette / dual site (dual)
    int end = 0;

    bool closed() const { return start == end; }
};

/// Decomposition of a divergence-free link pattern into plaquette boundaries
/// plus multiples of the two reference cycles:
///   pattern = sum_p plaquette_coeff[p] * boundary(p)
///             + winding_a * cycle_a + winding_b * cycle_b   (mod N)
struct ClosedPatternDecomposition {
    std::vector<int> plaquette_coeff;
    int winding_a = 0;
    int winding_b = 0;
};

/// L1 x L2 periodic square lattice with its dual.
///
/// Indexing is deterministic: sites row-major (site = x2*L1 + x1), link
/// index = 2*site + (dir-1) with dir 1 along +x1 and dir 2 along +x2.
/// Plaquettes are indexed by their lower-left corner site. Every link
/// belongs to exactly two plaquettes with opposite boundary orientation.
class TorusLattice {
  public:
    /// Empty lattice; use build() for a usable one.
    TorusLattice() = default;

    static TorusLattice build(int l1, int l2);

    int l1() const { return l1_; }
    int l2() const { return l2_; }
    int num_sites() const { return l1_ * l2_; }
    int num_links() const { return 2 * l1_ * l2_; }
    int num_plaquettes() const { return l1_ * l2_; }

    int site_index(int x1, int x2) const {
        return wrap(x2, l2_) * l1_ + wrap(x1, l1_);
    }
    std::pair<int, int> site_coords(int site) const { return {site % l1_, site / l1_}; }
    int site_shift(int site, int d1, int d2) const;

    int link_index(int site, int dir) const { return 2 * site + (dir - 1); }
    int link_site(int link) const { return link / 2; }
    int link_dir(int link) const { return link % 2 + 1; }
    int link_head(int link) const;  // site the link points to

    /// The four boundary links of a plaquette with orientations, listed
    /// counterclockwise from the bottom edge: bottom +, right +, top -, left -.
    const std::vector<PathStep>& plaquette_boundary(int plaq) const {
        return plaquette_boundary_[plaq];
    }

    /// The plaquette containing the link with orientation +1 / -1.
    int plaquette_pos(int link) const { return link_plaq_pos_[link]; }
    int plaquette_neg(int link) const { return link_plaq_neg_[link]; }

    /// Reference noncontractible loops on the original lattice (row 0 for the
    /// a-cycle, column 0 for the b-cycle), all steps with orientation +1.
    const std::vector<PathStep>& cycle_a_z() const { return cycle_a_z_; }
    const std::vector<PathStep>& cycle_b_z() const { return cycle_b_z_; }

    /// Links crossed by the reference dual noncontractible loops, with
    /// crossing signs calibrated so that pairing cycle_a_z against cycle_b_x
    /// (and cycle_b_z against cycle_a_x) gives +1.
    const std::vector<PathStep>& cycle_a_x() const { return cycle_a_x_; }
    const std::vector<PathStep>& cycle_b_x() const { return cycle_b_x_; }

    /// Membership of a link in the reference cycles: the orientation with
    /// which the link appears in cycle_a_z / cycle_b_z, or 0.
    int cycle_a_orientation(int link) const { return on_cycle_a_[link]; }
    int cycle_b_orientation(int link) const { return on_cycle_b_[link]; }

    /// Deterministic staircase path, direction 1 first, then direction 2.
    /// Coordinates advance in the + direction by (target - source) mod L.
    LatticePath path_between(int site_from, int site_to) const;
    LatticePath dual_path_between(int plaq_from, int plaq_to) const;

    /// Signed count of crossings between an original-lattice path carrying
    /// Z content and a dual-lattice path carrying X content.
    static int crossing_exponent(const LatticePath& z_path, const LatticePath& dual_path);

    // --- Z_N chain utilities -------------------------------------------------

    /// Flux of a link pattern: per plaquette, sum of oriented exponents.
    std::vector<int> flux_of(const LinkPattern& pattern) const;

    /// Divergence at each site: outgoing minus incoming exponents.
    std::vector<int> divergence(const LinkPattern& pattern) const;

    /// Winding numbers of a pattern paired against the reference dual loops.
    std::pair<int, int> winding(const LinkPattern& pattern) const;

    /// Decompose a pattern with zero divergence mod N. Throws GaugeViolationError
    /// when the divergence does not vanish mod N.
    ClosedPatternDecomposition decompose_closed(const LinkPattern& pattern, int n) const;

    /// A link pattern whose flux equals `target` mod N (one exponent per
    /// plaquette, sum must vanish mod N). Solved on a deterministic row-major
    /// BFS spanning tree of the dual lattice. Returns false and the
    /// obstruction exponent when the total flux does not vanish.
    bool link_pattern_with_flux(const std::vector<int>& target, int n, LinkPattern& out,
                                int& obstruction) const;

    /// Crossing sign of a dual step in direction (d1,d2) over a link of the
    /// given direction; (step x link)_z in right-handed 2D coordinates.
    static int crossing_sign(int step_d1, int step_d2, int link_dir);

  private:
    static int wrap(int x, int l) {
        int r = x % l;
        return r < 0 ? r + l : r;
    }

    int l1_ = 0, l2_ = 0;
    std::vector<std::vector<PathStep>> plaquette_boundary_;
    std::vector<int> link_plaq_pos_, link_plaq_neg_;
    std::vector<PathStep> cycle_a_z_, cycle_b_z_, cycle_a_x_, cycle_b_x_;
    std::vector<int> on_cycle_a_, on_cycle_b_;
    // BFS spanning tree of the dual lattice (row-major order from plaquette 0):
    // per plaquette, its parent and the shared link; dual_order_ lists
    // plaquettes in BFS order.
    std::vector<int> dual_parent_, dual_parent_link_, dual_order_;
};

}  // namespace znlab
