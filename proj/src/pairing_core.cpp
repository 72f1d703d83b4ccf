#include "qcond/pairing_core.hpp"

#include <cmath>

#include "qcond/errors.hpp"

namespace qcond::core {

namespace {

void check_pairings(double e12, double e23, double e31) {
    if (e12 == 0.0 || e23 == 0.0 || e31 == 0.0)
        throw DegeneratePairing("all three commutator pairings must be nonzero");
}

}  // namespace

double q2_core(double e12, double leb1, double leb2) {
    if (e12 == 0.0)
        throw DegeneratePairing("commutator pairing e12 must be nonzero");
    return leb1 * leb2 / (2.0 * M_PI * std::abs(e12));
}

double action_core(double e12, double e23, double e31, double r1, double r2,
                   double r3, double r2p) {
    check_pairings(e12, e23, e31);
    double u = e23 * r1 + e31 * r2 + e12 * r3;
    double up = e23 * r1 + e31 * r2p + e12 * r3;
    return (u * u - up * up) / (2.0 * e12 * e23 * e31);
}

quad::Result q3_core(double e12, double e23, double e31, const IntervalUnion& s1,
                     const IntervalUnion& s2, const IntervalUnion& s3,
                     const quad::Options& opt) {
    check_pairings(e12, e23, e31);
    double denom = 2.0 * e12 * e23 * e31;
    auto f = [&](const double* r) {
        // r = (r1, r2, r2', r3)
        double u = e23 * r[0] + e31 * r[1] + e12 * r[3];
        double up = e23 * r[0] + e31 * r[2] + e12 * r[3];
        double action = (u * u - up * up) / denom;
        return std::complex<double>(std::cos(action), -std::sin(action));
    };
    quad::Result res = quad::integrate({s1, s2, s2, s3}, f, opt);
    double prefactor = 1.0 / (4.0 * M_PI * M_PI * std::abs(e12) * std::abs(e23));
    res.value *= prefactor;
    return res;
}

}  // namespace qcond::core
