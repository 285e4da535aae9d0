#ifndef QSHEAF_BIDEGREE_HPP
#define QSHEAF_BIDEGREE_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <string>

namespace qsheaf {

/* (a,b) indexing the line bundle O_Q(a,b) on Q = P^1 x P^1.
   The canonical bundle is O_Q(-2,-2). */
struct Bidegree {
    int a = 0;
    int b = 0;

    friend constexpr bool operator==(Bidegree, Bidegree) = default;

    friend constexpr Bidegree operator+(Bidegree x, Bidegree y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend constexpr Bidegree operator-(Bidegree x, Bidegree y) {
        return {x.a - y.a, x.b - y.b};
    }
    constexpr Bidegree operator-() const { return {-a, -b}; }

    // componentwise partial order used for index search
    constexpr bool leq(Bidegree o) const { return a <= o.a && b <= o.b; }

    constexpr Bidegree swapped() const { return {b, a}; }

    std::string str() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
};

inline constexpr Bidegree kCanonical{-2, -2};

struct BidegreeHash {
    std::size_t operator()(Bidegree d) const {
        return std::hash<long long>()((static_cast<long long>(d.a) << 32) ^
                                      static_cast<unsigned>(d.b));
    }
};

// total order for deterministic containers (not the geometric partial order)
struct BidegreeLess {
    bool operator()(Bidegree x, Bidegree y) const {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

}  // namespace qsheaf

#endif
