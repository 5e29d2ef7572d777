#pragma once
// Integer lattice points, norms, neighborhoods and boxes on Z^d.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frog {

inline constexpr int kMaxDim = 8;

// A point of Z^d, 2 <= d <= kMaxDim.  Coordinates use 64-bit signed
// integers; callers keep them well below 2^31 so squared norms fit.
struct Site {
    int dim = 0;
    std::array<std::int64_t, kMaxDim> c{};

    Site() = default;
    Site(std::initializer_list<std::int64_t> xs) {
        if (xs.size() < 2 || xs.size() > kMaxDim)
            throw std::invalid_argument("Site: dimension out of range");
        dim = static_cast<int>(xs.size());
        int i = 0;
        for (auto v : xs) c[i++] = v;
    }
    static Site zero(int d) {
        check_dim(d);
        Site s;
        s.dim = d;
        return s;
    }
    static void check_dim(int d) {
        if (d < 2 || d > kMaxDim)
            throw std::invalid_argument("dimension must be in [2, 8]");
    }

    std::int64_t operator[](int i) const { return c[i]; }
    std::int64_t& operator[](int i) { return c[i]; }

    bool operator==(const Site& o) const {
        if (dim != o.dim) return false;
        for (int i = 0; i < dim; ++i)
            if (c[i] != o.c[i]) return false;
        return true;
    }
    bool operator!=(const Site& o) const { return !(*this == o); }

    // lexicographic order; used for deterministic tie-breaking
    bool operator<(const Site& o) const {
        for (int i = 0; i < dim; ++i)
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        return false;
    }

    Site operator+(const Site& o) const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] += o.c[i];
        return r;
    }
    Site operator-(const Site& o) const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] -= o.c[i];
        return r;
    }
    Site scaled(std::int64_t k) const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] *= k;
        return r;
    }

    std::string str() const;
};

// e_i (0-based axis index), length-1 lattice vector
Site unit_vector(int d, int axis);

std::uint64_t l1_norm(const Site& x);
std::uint64_t linf_norm(const Site& x);
std::uint64_t l2_norm_sq(const Site& x);
double l2_norm(const Site& x);

std::uint64_t l1_dist(const Site& x, const Site& y);
std::uint64_t linf_dist(const Site& x, const Site& y);
std::uint64_t l2_dist_sq(const Site& x, const Site& y);

// the 2d nearest neighbors of x (|u - x|_1 = 1), deterministic order:
// +e_0, -e_0, +e_1, -e_1, ...
std::vector<Site> lattice_neighbors(const Site& x);

// the 3^d - 1 *-neighbors of x (|u - x|_inf = 1), lexicographic order
std::vector<Site> star_neighbors(const Site& x);

enum class Norm { L1, L2, LInf };

// Ball/box B_norm(center, radius) intersected with Z^d.  Radius is an
// integer; real radii are floored by callers before constructing one
// (membership in B(c, rho) for lattice points only depends on floor(rho)
// for L1/LInf, and on floor(rho^2) for L2, which square_radius covers).
struct Box {
    Site center;
    std::int64_t radius = 0;
    Norm norm = Norm::LInf;

    bool contains(const Site& x) const;
    // number of lattice points (exact)
    std::uint64_t count() const;
    // all members in lexicographic order
    std::vector<Site> enumerate() const;
    // smallest LInf box covering this region
    Box linf_hull() const;
};

// exact closed-form point counts, used as enumeration oracles
std::uint64_t linf_ball_count(int d, std::int64_t radius);
std::uint64_t l1_ball_count(int d, std::int64_t radius);

// hash functor so Site works in unordered containers
struct SiteHash {
    std::size_t operator()(const Site& s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (std::uint64_t)s.dim;
        for (int i = 0; i < s.dim; ++i) {
            h ^= (std::uint64_t)s.c[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
        }
        return (std::size_t)(h ^ (h >> 31));
    }
};

}  // namespace frog
