#pragma once

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcond/interval.hpp"
#include "qcond/symplectic.hpp"

namespace qcond::regions {

using symplectic::MatrixXd;
using symplectic::Subspace;
using symplectic::SymplecticSpace;
using symplectic::VectorXd;

inline constexpr double kInfMeasure = std::numeric_limits<double>::infinity();

/// Phase-space set {g : sigma(f_i, g) in box_i for all i}, described by
/// generators f_1..f_k and a box-union per generator coordinate.
///
/// The observable constructor enforces pairwise sigma-orthogonality of the
/// generators (simultaneous spectral resolution). `box_set` builds a plain
/// measure-theoretic set description without that requirement; it is used
/// for full-dimensional boxes (e.g. intersection polytopes).
class GeneratedRegion {
public:
    GeneratedRegion(const SymplecticSpace& space, MatrixXd generators,
                    std::vector<IntervalUnion> box,
                    std::vector<std::optional<std::string>> support_tags = {});

    static GeneratedRegion box_set(const SymplecticSpace& space, MatrixXd generators,
                                   std::vector<IntervalUnion> box);

    const SymplecticSpace& space() const { return *space_; }
    const MatrixXd& generators() const { return generators_; }
    int n_generators() const { return static_cast<int>(generators_.cols()); }
    const std::vector<IntervalUnion>& box() const { return box_; }
    const std::vector<std::optional<std::string>>& support_tags() const {
        return support_tags_;
    }
    bool observable_semantics() const { return observable_semantics_; }

    /// Image under g -> M g + t for a symplectic matrix M: generators map to
    /// M f_i and the boxes pick up the shift sigma(M f_i, t).
    GeneratedRegion transformed(const MatrixXd& m, const VectorXd& t) const;

private:
    GeneratedRegion() = default;
    const SymplecticSpace* space_ = nullptr;
    MatrixXd generators_;
    std::vector<IntervalUnion> box_;
    std::vector<std::optional<std::string>> support_tags_;
    bool observable_semantics_ = true;
};

/// Inv_V(B): translations leaving B invariant. Generators whose coordinate
/// set is all of R do not constrain and are dropped before complementing.
Subspace invariant_subspace(const GeneratedRegion& b);

bool is_observable(const GeneratedRegion& b);

/// Measure under Leb_V, normalized by the volume form (2pi)^-n sigma^n / n!.
/// Finite only for full-dimensional descriptions (2n generators) with
/// bounded boxes; cylinder regions yield the +infinity sentinel.
double lebesgue_measure(const GeneratedRegion& b);

/// Tr E(B1)E(B2) = Leb_V(B1 cap B2) for Lagrangian observable regions.
double lagrangian_overlap_trace(const GeneratedRegion& b1, const GeneratedRegion& b2);

std::set<std::string> domain_of(const GeneratedRegion& b);

}  // namespace qcond::regions
