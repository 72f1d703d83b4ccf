#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace qcond {

/// Finite union of disjoint half-open intervals [a,b), kept sorted and
/// merged on construction. Endpoints may be +-infinity; semantics are
/// Lebesgue-a.e. (adjacent intervals are merged).
class IntervalUnion {
public:
    struct Interval {
        double lo;
        double hi;  // lo < hi
    };

    IntervalUnion() = default;
    IntervalUnion(double lo, double hi) {
        if (lo < hi) parts_.push_back({lo, hi});
        normalize();
    }
    explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
        normalize();
    }

    static IntervalUnion full_line() {
        return IntervalUnion(-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity());
    }
    static IntervalUnion empty() { return IntervalUnion(); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    bool is_full_line() const {
        return parts_.size() == 1 && std::isinf(parts_[0].lo) && parts_[0].lo < 0 &&
               std::isinf(parts_[0].hi) && parts_[0].hi > 0;
    }
    bool bounded() const {
        for (const auto& p : parts_)
            if (std::isinf(p.lo) || std::isinf(p.hi)) return false;
        return true;
    }

    double measure() const {
        double m = 0.0;
        for (const auto& p : parts_) m += p.hi - p.lo;
        return m;
    }

    bool contains(double x) const {
        for (const auto& p : parts_)
            if (x >= p.lo && x < p.hi) return true;
        return false;
    }

    // Hull of the union; invalid to call on an empty union.
    double lower() const { return parts_.front().lo; }
    double upper() const { return parts_.back().hi; }

    IntervalUnion intersect(const IntervalUnion& other) const {
        std::vector<Interval> out;
        for (const auto& a : parts_)
            for (const auto& b : other.parts_) {
                double lo = std::max(a.lo, b.lo);
                double hi = std::min(a.hi, b.hi);
                if (lo < hi) out.push_back({lo, hi});
            }
        return IntervalUnion(std::move(out));
    }

    // Image under the affine map x -> scale*x + shift (scale != 0).
    IntervalUnion scaled(double scale, double shift = 0.0) const {
        std::vector<Interval> out;
        out.reserve(parts_.size());
        for (const auto& p : parts_) {
            double a = scale * p.lo + shift;
            double b = scale * p.hi + shift;
            if (scale < 0) std::swap(a, b);
            out.push_back({a, b});
        }
        return IntervalUnion(std::move(out));
    }

    bool operator==(const IntervalUnion& other) const {
        if (parts_.size() != other.parts_.size()) return false;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (parts_[i].lo != other.parts_[i].lo || parts_[i].hi != other.parts_[i].hi)
                return false;
        return true;
    }

private:
    void normalize() {
        std::vector<Interval> keep;
        for (const auto& p : parts_)
            if (p.lo < p.hi) keep.push_back(p);
        std::sort(keep.begin(), keep.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        parts_.clear();
        for (const auto& p : keep) {
            if (!parts_.empty() && p.lo <= parts_.back().hi)
                parts_.back().hi = std::max(parts_.back().hi, p.hi);
            else
                parts_.push_back(p);
        }
    }

    std::vector<Interval> parts_;
};

}  // namespace qcond
