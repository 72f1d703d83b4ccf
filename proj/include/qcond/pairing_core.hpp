#pragma once

#include <complex>

#include "qcond/interval.hpp"
#include "qcond/quadrature.hpp"

namespace qcond::core {

/// Trace of two rank-one-generated spectral projections with commutator
/// pairing e12: Leb(S1)Leb(S2) / (2 pi |e12|).
double q2_core(double e12, double leb1, double leb2);

/// Phase of the doubled three-event chain in pairing form:
/// [(e23 r1 + e31 r2 + e12 r3)^2 - (e23 r1 + e31 r2' + e12 r3)^2]
///   / (2 e12 e23 e31).
/// Equals the difference of the two signed triangle areas spanned by the
/// measurement lines through (r1, r2, r3) and (r1, r2', r3).
double action_core(double e12, double e23, double e31, double r1, double r2,
                   double r3, double r2p);

/// Q3 integral in pairing form:
/// (2 pi)^-2 / (|e12||e23|) * Int_{S1 x S2 x S2 x S3} e^{-i action} dr.
/// The value approximates a trace and is real up to quadrature residue.
quad::Result q3_core(double e12, double e23, double e31, const IntervalUnion& s1,
                     const IntervalUnion& s2, const IntervalUnion& s3,
                     const quad::Options& opt = {});

}  // namespace qcond::core
