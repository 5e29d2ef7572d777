#include "frog/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace frog {

std::string Site::str() const {
    std::string s;
    for (int i = 0; i < dim; ++i) {
        if (i) s += ':';
        s += std::to_string(c[i]);
    }
    return s;
}

Site unit_vector(int d, int axis) {
    Site::check_dim(d);
    if (axis < 0 || axis >= d) throw std::invalid_argument("unit_vector: axis out of range");
    Site s = Site::zero(d);
    s.c[axis] = 1;
    return s;
}

std::uint64_t l1_norm(const Site& x) {
    std::uint64_t s = 0;
    for (int i = 0; i < x.dim; ++i) s += (std::uint64_t)std::llabs(x.c[i]);
    return s;
}

std::uint64_t linf_norm(const Site& x) {
    std::uint64_t m = 0;
    for (int i = 0; i < x.dim; ++i) m = std::max<std::uint64_t>(m, (std::uint64_t)std::llabs(x.c[i]));
    return m;
}

std::uint64_t l2_norm_sq(const Site& x) {
    std::uint64_t s = 0;
    for (int i = 0; i < x.dim; ++i) s += (std::uint64_t)(x.c[i] * x.c[i]);
    return s;
}

double l2_norm(const Site& x) { return std::sqrt((double)l2_norm_sq(x)); }

std::uint64_t l1_dist(const Site& x, const Site& y) { return l1_norm(x - y); }
std::uint64_t linf_dist(const Site& x, const Site& y) { return linf_norm(x - y); }
std::uint64_t l2_dist_sq(const Site& x, const Site& y) { return l2_norm_sq(x - y); }

std::vector<Site> lattice_neighbors(const Site& x) {
    std::vector<Site> out;
    out.reserve(2 * x.dim);
    for (int i = 0; i < x.dim; ++i) {
        Site a = x;
        a.c[i] += 1;
        out.push_back(a);
        Site b = x;
        b.c[i] -= 1;
        out.push_back(b);
    }
    return out;
}

std::vector<Site> star_neighbors(const Site& x) {
    std::vector<Site> out;
    Site v = x;
    // iterate offsets in {-1,0,1}^d lexicographically, skip the origin
    std::array<int, kMaxDim> off{};
    off.fill(-1);
    for (;;) {
        bool all_zero = true;
        for (int i = 0; i < x.dim; ++i)
            if (off[i] != 0) { all_zero = false; break; }
        if (!all_zero) {
            for (int i = 0; i < x.dim; ++i) v.c[i] = x.c[i] + off[i];
            out.push_back(v);
        }
        int i = x.dim - 1;
        while (i >= 0 && off[i] == 1) off[i--] = -1;
        if (i < 0) break;
        ++off[i];
    }
    return out;
}

bool Box::contains(const Site& x) const {
    if (x.dim != center.dim) return false;
    switch (norm) {
        case Norm::L1: return (std::int64_t)l1_dist(x, center) <= radius;
        case Norm::LInf: return (std::int64_t)linf_dist(x, center) <= radius;
        case Norm::L2: return (std::int64_t)l2_dist_sq(x, center) <= radius * radius;
    }
    return false;
}

namespace {

void enumerate_rec(const Box& b, Site& cur, int axis, std::vector<Site>& out) {
    int d = b.center.dim;
    if (axis == d) {
        out.push_back(cur);
        return;
    }
    // per-axis range given the coordinates already fixed
    std::int64_t lo = b.center.c[axis] - b.radius, hi = b.center.c[axis] + b.radius;
    if (b.norm == Norm::L1) {
        std::int64_t used = 0;
        for (int i = 0; i < axis; ++i) used += std::llabs(cur.c[i] - b.center.c[i]);
        std::int64_t left = b.radius - used;
        lo = b.center.c[axis] - left;
        hi = b.center.c[axis] + left;
    } else if (b.norm == Norm::L2) {
        std::int64_t used = 0;
        for (int i = 0; i < axis; ++i) {
            std::int64_t t = cur.c[i] - b.center.c[i];
            used += t * t;
        }
        std::int64_t left = b.radius * b.radius - used;
        if (left < 0) return;
        std::int64_t w = (std::int64_t)std::floor(std::sqrt((double)left));
        while ((w + 1) * (w + 1) <= left) ++w;
        while (w > 0 && w * w > left) --w;
        lo = b.center.c[axis] - w;
        hi = b.center.c[axis] + w;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
        cur.c[axis] = v;
        enumerate_rec(b, cur, axis + 1, out);
    }
}

}  // namespace

std::vector<Site> Box::enumerate() const {
    std::vector<Site> out;
    if (radius < 0) return out;
    Site cur = Site::zero(center.dim);
    enumerate_rec(*this, cur, 0, out);
    return out;
}

std::uint64_t Box::count() const {
    if (radius < 0) return 0;
    switch (norm) {
        case Norm::LInf: return linf_ball_count(center.dim, radius);
        case Norm::L1: return l1_ball_count(center.dim, radius);
        case Norm::L2: return (std::uint64_t)enumerate().size();
    }
    return 0;
}

Box Box::linf_hull() const { return Box{center, radius, Norm::LInf}; }

std::uint64_t linf_ball_count(int d, std::int64_t radius) {
    if (radius < 0) return 0;
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= (std::uint64_t)(2 * radius + 1);
    return n;
}

std::uint64_t l1_ball_count(int d, std::int64_t radius) {
    if (radius < 0) return 0;
    // sum_i 2^i C(d,i) C(radius,i)
    std::uint64_t total = 0;
    for (int i = 0; i <= d && i <= radius; ++i) {
        std::uint64_t term = 1;
        for (int j = 0; j < i; ++j) term = term * 2 * (std::uint64_t)(d - j) / (j + 1);
        // C(radius, i)
        std::uint64_t binom = 1;
        for (int j = 0; j < i; ++j) binom = binom * (std::uint64_t)(radius - j) / (j + 1);
        total += term * binom;
    }
    return total;
}

}  // namespace frog
