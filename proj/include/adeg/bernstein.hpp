#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/interval.hpp"
#include "adeg/multipoly.hpp"

namespace adeg {

// Axis-aligned box with rational endpoints.
struct Box {
    std::vector<std::pair<Rational, Rational>> ranges;

    Box() = default;
    explicit Box(std::vector<std::pair<Rational, Rational>> r) : ranges(std::move(r)) {
        for (const auto& [lo, hi] : ranges)
            if (lo > hi) throw invariant_violation("box with lo > hi");
    }

    static Box cube(std::size_t dims, const Rational& lo, const Rational& hi) {
        return Box(std::vector<std::pair<Rational, Rational>>(dims, {lo, hi}));
    }

    std::size_t dims() const { return ranges.size(); }

    std::vector<Rational> center() const {
        std::vector<Rational> c(dims());
        for (std::size_t i = 0; i < dims(); ++i) c[i] = (ranges[i].first + ranges[i].second) / 2;
        return c;
    }

    std::size_t widest_axis() const {
        std::size_t best = 0;
        Rational w = ranges.empty() ? Rational(0) : ranges[0].second - ranges[0].first;
        for (std::size_t i = 1; i < dims(); ++i) {
            Rational wi = ranges[i].second - ranges[i].first;
            if (wi > w) {
                w = wi;
                best = i;
            }
        }
        return best;
    }

    std::pair<Box, Box> split(std::size_t axis) const {
        Box a = *this, b = *this;
        Rational mid = (ranges[axis].first + ranges[axis].second) / 2;
        a.ranges[axis].second = mid;
        b.ranges[axis].first = mid;
        return {a, b};
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < dims(); ++i) {
            if (i) s += " x ";
            s += "[" + adeg::to_string(ranges[i].first) + ", " +
                 adeg::to_string(ranges[i].second) + "]";
        }
        return s + "]";
    }
};

namespace detail {

// Dense tensor of coefficients, one axis per variable.
struct CoeffTensor {
    std::vector<std::size_t> dims; // per-axis length (degree + 1)
    std::vector<Rational> data;

    std::size_t index(const std::vector<std::size_t>& idx) const {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
        return flat;
    }
};

inline CoeffTensor power_tensor(const MultiPoly& p) {
    CoeffTensor t;
    const std::size_t m = p.num_vars();
    t.dims.resize(m);
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        t.dims[i] = p.degree_in(i) + 1;
        total *= t.dims[i];
        if (total > 4'000'000) throw guard_exceeded("coefficient tensor too large");
    }
    t.data.assign(total, Rational(0));
    std::vector<std::size_t> idx(m);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < m; ++i) idx[i] = e[i];
        t.data[t.index(idx)] = c;
    }
    return t;
}

// In-place power -> Bernstein conversion along one axis on [0,1]:
// b_k = sum_{j<=k} C(k,j)/C(d,j) a_j.
inline void axis_to_bernstein(CoeffTensor& t, std::size_t axis) {
    const std::size_t d = t.dims[axis] - 1;
    if (d == 0) return;
    std::size_t stride = 1;
    for (std::size_t i = axis + 1; i < t.dims.size(); ++i) stride *= t.dims[i];
    const std::size_t len = t.dims[axis];
    const std::size_t outer = t.data.size() / (stride * len);

    std::vector<Rational> ratio(len); // C(k,j)/C(d,j) built row by row
    std::vector<Rational> line(len), out(len);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < stride; ++s) {
            const std::size_t base = o * stride * len + s;
            for (std::size_t k = 0; k < len; ++k) line[k] = t.data[base + k * stride];
            for (std::size_t k = 0; k < len; ++k) {
                Rational acc = 0;
                for (std::size_t j = 0; j <= k; ++j) {
                    Rational w = Rational(binomial(k, j)) / Rational(binomial(d, j));
                    acc += w * line[j];
                }
                out[k] = acc;
            }
            for (std::size_t k = 0; k < len; ++k) t.data[base + k * stride] = out[k];
        }
    }
}

inline RatInterval tensor_hull(const CoeffTensor& t) {
    RatInterval r(t.data.empty() ? Rational(0) : t.data[0]);
    for (const auto& v : t.data) {
        if (v < r.lo) r.lo = v;
        if (v > r.hi) r.hi = v;
    }
    return r;
}

} // namespace detail

// Bernstein coefficient hull of p over a box: a sound enclosure of the range,
// with exact rational endpoints.
inline RatInterval bernstein_base_enclosure(const MultiPoly& p, const Box& box) {
    if (box.dims() != p.num_vars())
        throw invariant_violation("box dimension does not match the polynomial");
    if (p.is_zero()) return RatInterval(Rational(0));
    MultiPoly unit = p;
    for (std::size_t i = 0; i < p.num_vars(); ++i) {
        const auto& [lo, hi] = box.ranges[i];
        unit = unit.substitute_affine(i, hi - lo, lo);
    }
    detail::CoeffTensor t = detail::power_tensor(unit);
    for (std::size_t i = 0; i < t.dims.size(); ++i) detail::axis_to_bernstein(t, i);
    return detail::tensor_hull(t);
}

// Enclosure refined by uniform subdivision: split the widest axis, recurse,
// hull the children. Shrinks monotonically with depth.
inline RatInterval bernstein_enclosure(const MultiPoly& p, const Box& box, unsigned max_depth) {
    if (max_depth == 0 || box.dims() == 0) return bernstein_base_enclosure(p, box);
    auto [a, b] = box.split(box.widest_axis());
    RatInterval ia = bernstein_enclosure(p, a, max_depth - 1);
    RatInterval ib = bernstein_enclosure(p, b, max_depth - 1);
    return {std::min(ia.lo, ib.lo), std::max(ia.hi, ib.hi)};
}

// Branch-and-bound proof that p stays inside [lo, hi] on the box.
struct CertifyResult {
    enum class Status { Certified, Counterexample, Inconclusive };
    Status status = Status::Inconclusive;
    std::vector<Rational> counterexample; // point with a definitive violation
    Rational counterexample_value;
    Box undecided_box; // when inconclusive at max depth
    std::size_t nodes = 0;

    bool certified() const { return status == Status::Certified; }
};

inline CertifyResult certify_range(const MultiPoly& p, const Box& box, const Rational& lo,
                                   const Rational& hi, unsigned max_depth) {
    CertifyResult result;
    struct Node {
        Box box;
        unsigned depth;
    };
    std::vector<Node> stack{{box, 0}};
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        ++result.nodes;

        RatInterval enc = bernstein_base_enclosure(p, node.box);
        if (enc.lo >= lo && enc.hi <= hi) continue; // proven on this sub-box

        std::vector<Rational> center = node.box.center();
        Rational value = p.eval(center);
        if (value < lo || value > hi) {
            result.status = CertifyResult::Status::Counterexample;
            result.counterexample = std::move(center);
            result.counterexample_value = std::move(value);
            return result;
        }
        if (node.depth >= max_depth) {
            result.status = CertifyResult::Status::Inconclusive;
            result.undecided_box = node.box;
            return result;
        }
        auto [a, b] = node.box.split(node.box.widest_axis());
        stack.push_back({std::move(b), node.depth + 1});
        stack.push_back({std::move(a), node.depth + 1});
    }
    result.status = CertifyResult::Status::Certified;
    return result;
}

} // namespace adeg
